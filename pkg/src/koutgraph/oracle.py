"""Exhaustive small-instance ground truth.

Everything here trades speed for transparency: brute-force deletion for
k-connectivity, bitmask sweeps over all subsets for cuts, and exact
Fraction sums over all type/selection outcomes for the cut-event
probability. Hard size guards keep the exponential enumerations from
ever running at experiment scale.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .core import Graph
from .errors import ConfigurationError

MAX_BRUTE_N = 14
MAX_CUTS_N = 20
MAX_EXACT_N = 6
MAX_EXACT_K = 3


def _bfs_connected(adj: list[list[int]], alive: list[bool]) -> bool:
    """Connectivity of the subgraph induced on alive nodes (true if empty)."""
    start = next((i for i, a in enumerate(alive) if a), None)
    if start is None:
        return True
    seen = [False] * len(adj)
    seen[start] = True
    stack = [start]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if alive[v] and not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == sum(alive)


def brute_force_k_connected(graph: Graph, k: int) -> bool:
    """True iff deleting every (k-1)-subset leaves a connected graph."""
    n = graph.n
    if n > MAX_BRUTE_N:
        raise ConfigurationError(f"brute force limited to n <= {MAX_BRUTE_N}, got n={n}")
    if not (1 <= k < n):
        raise ConfigurationError(f"k must lie in [1, n), got k={k} with n={n}")
    adj = [list(graph.neighbors(i)) for i in range(n)]
    for removed in combinations(range(n), k - 1):
        alive = [True] * n
        for r in removed:
            alive[r] = False
        if not _bfs_connected(adj, alive):
            return False
    return True


@dataclass(frozen=True, slots=True)
class CutRecord:
    subset: tuple[int, ...]
    size: int
    is_cut: bool


def enumerate_cuts(graph: Graph, lo: int, hi: int) -> list[CutRecord]:
    """Classify every node subset with lo <= |S| <= hi; S is a cut iff no
    edge joins S to its complement."""
    n = graph.n
    if n > MAX_CUTS_N:
        raise ConfigurationError(f"cut enumeration limited to n <= {MAX_CUTS_N}, got n={n}")
    if not (1 <= lo <= hi <= n - 1):
        raise ConfigurationError(f"size range must satisfy 1 <= lo <= hi <= n-1, got [{lo}, {hi}]")
    masks = [0] * n
    for i in range(n):
        for j in graph.neighbors(i):
            masks[i] |= 1 << int(j)
    full = (1 << n) - 1
    records = []
    for size in range(lo, hi + 1):
        for subset in combinations(range(n), size):
            smask = 0
            boundary = 0
            for i in subset:
                smask |= 1 << i
                boundary |= masks[i]
            records.append(CutRecord(subset, size, (boundary & (full ^ smask)) == 0))
    return records


def exact_cut_event_probability(n: int, mu: float, K: int, r: int) -> Fraction:
    """P[the fixed set {0..r-1} is a cut] in the two-type model, as an exact
    Fraction, by enumerating type assignments and selection outcomes.

    A node's selections never affect other nodes, so outcomes in which some
    node already crosses the boundary are skipped as a block during the
    depth-first sweep; their total contribution is exactly zero.
    """
    if n > MAX_EXACT_N or K > MAX_EXACT_K:
        raise ConfigurationError(
            f"exact enumeration limited to n <= {MAX_EXACT_N} and K <= {MAX_EXACT_K}, "
            f"got n={n}, K={K}"
        )
    if not (1 <= r <= n - 1):
        raise ConfigurationError(f"subset size r must lie in [1, n-1], got r={r} with n={n}")
    if not (1 <= K <= n - 1):
        raise ConfigurationError(f"K must lie in [1, n-1], got K={K} with n={n}")
    if not (0.0 <= mu <= 1.0):
        raise ConfigurationError(f"mu must lie in [0, 1], got {mu}")

    mu = Fraction(mu)
    type_probs = (mu, 1 - mu)
    s_mask = (1 << r) - 1
    options: list[list[list[int]]] = []  # node -> type -> selection bitmasks
    for i in range(n):
        others = [j for j in range(n) if j != i]
        per_type = []
        for size in (1, K):
            per_type.append([sum(1 << j for j in combo) for combo in combinations(others, size)])
        options.append(per_type)

    def descend(i: int, acc: Fraction) -> Fraction:
        if i == n:
            return acc
        own_side = s_mask if i < r else ((1 << n) - 1) ^ s_mask
        total = Fraction(0)
        for t in (0, 1):
            p_t = type_probs[t]
            if p_t == 0:
                continue
            sets = options[i][t]
            p_each = p_t / len(sets)
            for mask in sets:
                if mask & ~own_side:
                    continue  # this node crosses; every extension is a non-cut
                total += descend(i + 1, acc * p_each)
        return total

    return descend(0, Fraction(1))


def export_csv(path, rows) -> None:
    """Pin oracle outputs as (setting, value, method) regression fixtures."""
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["setting", "value", "method"])
        for row in rows:
            writer.writerow(list(row))
