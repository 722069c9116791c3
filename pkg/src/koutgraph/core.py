"""Inhomogeneous random K-out graph construction.

Model: each of n nodes independently gets a type t with probability mu_t,
then selects K_t distinct other nodes uniformly at random. An undirected
edge joins i and j iff at least one selected the other. The classic
two-type model has a fraction mu of nodes making 1 selection and the rest
making K >= 2 selections.

Reproducibility contract (pinned):
  * PRNG is numpy's Philox 4x64-10 counter-based generator, keyed by
    (master_seed, stream_index). Distinct stream indices give independent
    streams.
  * Draw order: one batch of n uniform doubles for the type vector
    (inverse-CDF against the cumulative type probabilities), then one
    batched ``integers`` call per node in ascending node order for its
    selection set.
  * Without-replacement sampling: Floyd's subset sampling when
    K_t <= n // 8, partial Fisher-Yates otherwise.

Node indices and type indices are 0-based everywhere, including files.
Two nodes may select each other; that still yields a single undirected
edge.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigurationError

PROB_TOL = 1e-12


@dataclass(frozen=True)
class Seed:
    """Identifies one Philox stream as (master_seed, stream_index)."""

    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            v = getattr(self, name)
            if not (0 <= int(v) < 2**64):
                raise ConfigurationError(f"{name} must be a 64-bit unsigned integer, got {v}")

    def generator(self) -> np.random.Generator:
        key = np.array([self.master_seed, self.stream_index], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class GraphParams:
    """Node count, type distribution, and per-type selection counts.

    type_probs must be positive and sum to 1 (within 1e-12); type_choices
    must be strictly increasing with the last entry in [2, n).
    """

    n: int
    type_probs: tuple[float, ...]
    type_choices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "type_probs", tuple(float(p) for p in self.type_probs))
        object.__setattr__(self, "type_choices", tuple(int(k) for k in self.type_choices))
        if self.n < 2:
            raise ConfigurationError(f"node count n must be >= 2, got {self.n}")
        if not self.type_probs or not self.type_choices:
            raise ConfigurationError("type_probs and type_choices must be nonempty")
        if len(self.type_probs) != len(self.type_choices):
            raise ConfigurationError(
                f"type_probs has {len(self.type_probs)} entries but type_choices has "
                f"{len(self.type_choices)}"
            )
        if any(p <= 0 for p in self.type_probs):
            raise ConfigurationError(f"type probabilities must be > 0, got {self.type_probs}")
        total = sum(self.type_probs)
        if abs(total - 1.0) > PROB_TOL:
            raise ConfigurationError(f"type probabilities must sum to 1, got sum {total!r}")
        ks = self.type_choices
        if any(k <= 0 for k in ks):
            raise ConfigurationError(f"selection counts must be positive, got {ks}")
        if any(a >= b for a, b in zip(ks, ks[1:])):
            raise ConfigurationError(f"selection counts must be strictly increasing, got {ks}")
        if ks[-1] < 2:
            raise ConfigurationError(f"largest selection count must be >= 2, got {ks[-1]}")
        if ks[-1] >= self.n:
            raise ConfigurationError(
                f"largest selection count must be < n, got K={ks[-1]} with n={self.n}"
            )

    @classmethod
    def two_type(cls, n: int, mu: float, K: int) -> "GraphParams":
        """Two-type model: fraction mu selects 1 node, the rest select K.

        mu = 0 degenerates to the single-type (homogeneous) K-out model;
        mu = 1 is rejected because every node would make one selection,
        violating the K >= 2 requirement.
        """
        if not (0.0 <= mu < 1.0):
            raise ConfigurationError(f"mu must lie in [0, 1), got {mu}")
        if mu == 0.0:
            return cls(n=n, type_probs=(1.0,), type_choices=(int(K),))
        return cls(n=n, type_probs=(mu, 1.0 - mu), type_choices=(1, int(K)))

    @property
    def num_types(self) -> int:
        return len(self.type_probs)


def mean_selections(params: GraphParams) -> float:
    """Average number of selections per node, sum_t mu_t * K_t."""
    return float(sum(p * k for p, k in zip(params.type_probs, params.type_choices)))


class Graph:
    """Immutable undirected graph with sorted CSR neighbor lists."""

    __slots__ = ("n", "indptr", "indices")

    def __init__(self, n: int, indptr: np.ndarray, indices: np.ndarray):
        self.n = int(n)
        self.indptr = indptr
        self.indices = indices
        indptr.setflags(write=False)
        indices.setflags(write=False)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        edges = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if edges.size and (edges.min() < 0 or edges.max() >= n):
            raise ConfigurationError(
                f"edge endpoint out of range [0, {n}): {edges.min()}..{edges.max()}"
            )
        if edges.size and (edges[:, 0] == edges[:, 1]).any():
            raise ConfigurationError("self-loops are not allowed")
        return cls(n, *_csr_from_arcs(n, edges[:, 0], edges[:, 1]))

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def num_edges(self) -> int:
        return int(self.indices.size) // 2

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, i: int, j: int) -> bool:
        nb = self.neighbors(i)
        pos = np.searchsorted(nb, j)
        return bool(pos < nb.size and nb[pos] == j)

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with i < j, lexicographically sorted."""
        src = np.repeat(np.arange(self.n), self.degrees)
        dst = np.asarray(self.indices)
        keep = src < dst
        return np.column_stack([src[keep], dst[keep]])


class KOutGraph(Graph):
    """A realized K-out graph: node types, selection sets, and adjacency."""

    __slots__ = ("params", "seed", "node_types", "selections")

    def __init__(self, params, seed, node_types, selections, indptr, indices):
        super().__init__(params.n, indptr, indices)
        self.params = params
        self.seed = seed
        self.node_types = node_types
        self.selections = selections
        node_types.setflags(write=False)


def _sample_without_replacement(rng: np.random.Generator, m: int, k: int, n: int) -> np.ndarray:
    """k distinct values from {0..m-1}; Floyd below the k <= n/8 crossover,
    partial Fisher-Yates above it. One batched ``integers`` call either way.
    """
    if k > n // 8:
        draws = rng.integers(np.arange(k), m)
        arr = np.arange(m)
        for i in range(k):
            j = draws[i]
            arr[i], arr[j] = arr[j], arr[i]
        return arr[:k]
    draws = rng.integers(0, np.arange(m - k + 1, m + 1))
    chosen = set()
    for idx, j in enumerate(range(m - k, m)):
        t = int(draws[idx])
        chosen.add(j if t in chosen else t)
    return np.fromiter(chosen, dtype=np.int64, count=k)


def generate(params: GraphParams, seed: Seed) -> KOutGraph:
    """Realize one graph. Identical (params, seed) give bit-identical output."""
    if not isinstance(params, GraphParams):
        params = GraphParams(*params)
    n = params.n
    rng = seed.generator()

    cum = np.cumsum(params.type_probs)
    cum[-1] = 1.0
    node_types = np.searchsorted(cum, rng.random(n), side="right").astype(np.int32)

    choices = np.asarray(params.type_choices, dtype=np.int64)
    selections = []
    for i in range(n):
        k = int(choices[node_types[i]])
        raw = _sample_without_replacement(rng, n - 1, k, n)
        sel = raw + (raw >= i)  # skip over self
        sel.sort()
        sel.setflags(write=False)
        selections.append(sel)

    src = np.repeat(np.arange(n), choices[node_types])
    dst = np.concatenate(selections)
    indptr, indices = _csr_from_arcs(n, src, dst)
    return KOutGraph(params, seed, node_types, tuple(selections), indptr, indices)


def _csr_from_arcs(n: int, src: np.ndarray, dst: np.ndarray):
    """Symmetric CSR from directed arcs: dedup mutual/parallel arcs, sort."""
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    keys = np.unique(lo * n + hi)
    lo, hi = keys // n, keys % n
    heads = np.concatenate([lo, hi])
    tails = np.concatenate([hi, lo])
    order = np.argsort(heads * n + tails, kind="stable")
    indices = tails[order].astype(np.int32)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(heads, minlength=n), out=indptr[1:])
    return indptr, indices


def edge_list(graph: Graph) -> np.ndarray:
    """Canonical (i, j) edge array, i < j, ascending lexicographic order."""
    return graph.edge_array()


# --- text formats ---------------------------------------------------------
# Edge list: "# kout v1 n=<n> seed=<master>/<stream>" header, then "i j"
# per line with i < j in ascending lexicographic order. Type sidecar: one
# "i t" per line with t the 0-based type index.

_HEADER_RE = re.compile(r"#\s*kout v1 n=(\d+) seed=(\d+)/(\d+)\s*$")


def write_edge_list(graph: KOutGraph, path) -> None:
    seed = graph.seed
    lines = [f"# kout v1 n={graph.n} seed={seed.master_seed}/{seed.stream_index}"]
    lines += [f"{i} {j}" for i, j in graph.edge_array()]
    Path(path).write_text("\n".join(lines) + "\n")


def write_node_types(graph: KOutGraph, path) -> None:
    lines = [f"{i} {t}" for i, t in enumerate(graph.node_types)]
    Path(path).write_text("\n".join(lines) + "\n")


def read_edge_list(path) -> tuple[Graph, Seed]:
    text = Path(path).read_text().strip().splitlines()
    if not text:
        raise ConfigurationError(f"edge-list file {path} is empty")
    m = _HEADER_RE.match(text[0])
    if not m:
        raise ConfigurationError(
            f"edge-list file {path} has a malformed header line: {text[0]!r}"
        )
    n = int(m.group(1))
    seed = Seed(int(m.group(2)), int(m.group(3)))
    edges = []
    for line in text[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise ConfigurationError(f"malformed edge line in {path}: {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    return Graph.from_edges(n, edges), seed


def read_node_types(path) -> np.ndarray:
    pairs = [line.split() for line in Path(path).read_text().strip().splitlines()]
    types = np.zeros(len(pairs), dtype=np.int32)
    for i, t in pairs:
        types[int(i)] = int(t)
    return types
