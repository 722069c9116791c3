"""Closed-form quantities for the inhomogeneous K-out model.

All logarithms are natural logs; the connectivity thresholds only line up
with the simulated curves under that convention. Binomial coefficients are
evaluated through log-gamma, with the C(a, b) = 0 cases (a < b) handled
exactly rather than through the log domain.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.optimize import brentq
from scipy.special import logsumexp

from .errors import ConfigurationError

NEG_INF = float("-inf")


def log_comb(a: int, b: int) -> float:
    """log C(a, b); -inf when the coefficient is zero."""
    if b < 0 or a < b:
        return NEG_INF
    if b == 0 or b == a:
        return 0.0
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


@dataclass(frozen=True)
class ThresholdQuery:
    """Parameters for the k-connectivity critical scaling.

    n >= 3 so that log log n is positive; mu in [0, 1) (mu = 0 is the
    homogeneous boundary); k >= 2 is the connectivity order; K is the
    type-2 selection count, needed only by the gamma evaluators.
    """

    n: int
    mu: float
    k: int
    K: int | None = None

    def __post_init__(self):
        if self.n < 3:
            raise ConfigurationError(f"threshold queries need n >= 3 (log log n), got n={self.n}")
        if not (0.0 <= self.mu < 1.0):
            raise ConfigurationError(f"mu must lie in [0, 1), got {self.mu}")
        if self.k < 2:
            raise ConfigurationError(f"connectivity order k must be >= 2, got {self.k}")
        if self.K is not None and self.K < 1:
            raise ConfigurationError(f"K must be a positive integer, got {self.K}")

    def _require_K(self) -> int:
        if self.K is None:
            raise ConfigurationError("this query requires the selection count K to be set")
        return self.K


def _critical_scaling(n: int, k: int) -> float:
    return math.log(n) + (k - 2) * math.log(math.log(n))


def threshold_K(query: ThresholdQuery) -> int:
    """Critical K: ceil((log n + (k-2) log log n) / (1 - mu))."""
    return math.ceil(_critical_scaling(query.n, query.k) / (1.0 - query.mu))


def min_degree_threshold(query: ThresholdQuery) -> int:
    """Critical K for minimum degree >= k; identical scaling to threshold_K."""
    return threshold_K(query)


def gamma_n(query: ThresholdQuery) -> float:
    """Deviation of the mean selection count from the critical scaling:
    gamma = <K> - log n - (k-2) log log n. Positive means the one-law side.
    """
    K = query._require_K()
    mean_K = query.mu + (1.0 - query.mu) * K
    return mean_K - _critical_scaling(query.n, query.k)


def gamma_n_choices(query: ThresholdQuery) -> float:
    """Same deviation expressed in selection counts:
    gamma = K - (log n + (k-2) log log n) / (1 - mu); this is gamma_n
    scaled by 1 / (1 - mu).
    """
    K = query._require_K()
    return K - _critical_scaling(query.n, query.k) / (1.0 - query.mu)


def edge_probability(n: int, mean_K: float) -> float:
    """P[edge between a fixed pair] = 2<K>/(n-1) - (<K>/(n-1))^2."""
    if n < 2:
        raise ConfigurationError(f"edge probability needs n >= 2, got {n}")
    if not (0.0 < mean_K <= n - 1):
        raise ConfigurationError(f"mean selection count must lie in (0, n-1], got {mean_K}")
    x = mean_K / (n - 1)
    return 2.0 * x - x * x


def mean_degree(n: int, mean_K: float) -> float:
    """Expected degree of a fixed node: (n-1) * edge_probability."""
    return (n - 1) * edge_probability(n, mean_K)


def cut_event_probability(n: int, mu: float, K: int, r: int) -> float:
    """Exact probability that a fixed r-subset is isolated from the rest.

    Product of per-node avoidance mixtures:
      (mu (n-r-1)/(n-1) + (1-mu) C(n-r-1,K)/C(n-1,K))^(n-r)
    * (mu (r-1)/(n-1)   + (1-mu) C(r-1,K)/C(n-1,K))^r
    Not symmetric under r <-> n-r (only cut existence is).
    """
    if not (1 <= r <= n - 1):
        raise ConfigurationError(f"subset size r must lie in [1, n-1], got r={r} with n={n}")
    if not (1 <= K < n):
        raise ConfigurationError(f"K must lie in [1, n), got K={K} with n={n}")
    if not (0.0 <= mu <= 1.0):
        raise ConfigurationError(f"mu must lie in [0, 1], got {mu}")
    log_cnk = log_comb(n - 1, K)
    f_out = mu * (n - r - 1) / (n - 1)
    lc = log_comb(n - r - 1, K)
    if lc != NEG_INF and mu < 1.0:
        f_out += (1.0 - mu) * math.exp(lc - log_cnk)
    f_in = mu * (r - 1) / (n - 1)
    lc = log_comb(r - 1, K)
    if lc != NEG_INF and mu < 1.0:
        f_in += (1.0 - mu) * math.exp(lc - log_cnk)
    if f_out == 0.0 or f_in == 0.0:
        return 0.0
    return math.exp((n - r) * math.log(f_out) + r * math.log(f_in))


def _log_cut_term(n: int, mu: float, K: int, r: int) -> float:
    """log of C(n,r) * P[fixed r-subset is a cut]; -inf for zero terms."""
    p = cut_event_probability(n, mu, K, r)
    if p == 0.0:
        return NEG_INF
    return log_comb(n, r) + math.log(p)


def giant_bound_sum(n: int, mu: float, K: int, M: int) -> float:
    """Union bound on P[some cut has size in [M, n-M]]:
    sum_{r=M}^{floor(n/2)} C(n,r) P[fixed r-subset is a cut], clamped to [0,1].
    """
    return giant_bound_report(n, mu, K, M).sum_value


@dataclass(frozen=True)
class BoundReport:
    """Evaluated union bound at one M, with optional per-size log terms and
    the asymptotic leading-term shape exp(-M(<K>-1))."""

    M: int
    sum_value: float
    leading_term: float
    per_r_terms: tuple[float, ...] = field(default=())


def giant_bound_report(n: int, mu: float, K: int, M: int) -> BoundReport:
    if M < 1:
        raise ConfigurationError(f"M must be >= 1, got {M}")
    if not (2 <= K < n):
        raise ConfigurationError(f"K must lie in [2, n), got K={K} with n={n}")
    if not (0.0 <= mu <= 1.0):
        raise ConfigurationError(f"mu must lie in [0, 1], got {mu}")
    mean_K = mu + (1.0 - mu) * K
    leading = math.exp(-M * (mean_K - 1.0))
    terms = tuple(_log_cut_term(n, mu, K, r) for r in range(M, n // 2 + 1))
    finite = [t for t in terms if t != NEG_INF]
    if not finite:
        return BoundReport(M=M, sum_value=0.0, leading_term=leading, per_r_terms=terms)
    value = float(math.exp(logsumexp(finite)))
    return BoundReport(M=M, sum_value=min(1.0, max(0.0, value)),
                       leading_term=leading, per_r_terms=terms)


def theorem2_leading_bound(mean_K: float, M: int) -> float:
    """Asymptotic envelope exp(-M(<K>-1)) / (1 - exp(-(<K>-1))) with the
    vanishing correction factors set to one. This is an asymptotic shape,
    not a finite-n guarantee; the finite-n bound is giant_bound_sum.
    """
    if mean_K <= 1.0:
        raise ConfigurationError(
            f"mean selection count must exceed 1 (geometric series diverges), got {mean_K}"
        )
    if M < 1:
        raise ConfigurationError(f"M must be >= 1, got {M}")
    rate = mean_K - 1.0
    return math.exp(-M * rate) / (1.0 - math.exp(-rate))


def er_giant_fraction(c: float) -> float:
    """Unique root beta in (0, 1] of beta + exp(-beta c) = 1, the asymptotic
    giant-component fraction of an Erdos-Renyi graph with mean degree c > 1.
    """
    if c <= 1.0:
        raise ConfigurationError(
            f"mean degree c must exceed 1 for a giant component, got {c}"
        )

    def f(b: float) -> float:
        return b + math.exp(-b * c) - 1.0

    # f(0) = 0 with f'(0) = 1 - c < 0, so bracket away from the trivial root.
    lo = (c - 1.0) / (c * c)
    while f(lo) >= 0.0:
        lo /= 2.0
    beta = brentq(f, lo, 1.0, xtol=1e-15, rtol=8.9e-16)
    for _ in range(3):
        if abs(f(beta)) < 1e-12:
            break
        beta -= f(beta) / (1.0 - c * math.exp(-beta * c))
    return float(beta)


@dataclass(frozen=True)
class TheoryReport:
    """Closed-form summary for one (n, mu, K, k) point."""

    n: int
    mu: float
    k: int
    K: int | None
    mean_K: float | None
    edge_probability: float | None
    mean_degree: float | None
    threshold_K: int
    gamma_mean_form: float | None
    gamma_choices_form: float | None
    bounds: tuple[tuple[int, float], ...]
    theorem2_envelope: tuple[tuple[int, float], ...]

    def as_lines(self) -> list[str]:
        pairs: list[tuple[str, object]] = [
            ("n", self.n), ("mu", self.mu), ("k", self.k), ("K", self.K),
            ("mean_K", self.mean_K),
            ("edge_probability", self.edge_probability),
            ("mean_degree", self.mean_degree),
            ("threshold_K", self.threshold_K),
            ("gamma_mean_form", self.gamma_mean_form),
            ("gamma_choices_form", self.gamma_choices_form),
        ]
        pairs += [(f"giant_bound_M{m}", v) for m, v in self.bounds]
        pairs += [(f"theorem2_envelope_M{m}", v) for m, v in self.theorem2_envelope]
        width = max(len(k) for k, _ in pairs)
        return [f"{k.ljust(width)} = {'' if v is None else v!r}" for k, v in pairs]


def build_theory_report(n: int, mu: float, k: int = 2, K: int | None = None,
                        M_values: tuple[int, ...] = (1, 2, 5)) -> TheoryReport:
    query = ThresholdQuery(n=n, mu=mu, k=k, K=K)
    mean_K = edge_p = mdeg = g_mean = g_choices = None
    bounds: tuple[tuple[int, float], ...] = ()
    envelope: tuple[tuple[int, float], ...] = ()
    if K is not None:
        mean_K = mu + (1.0 - mu) * K
        edge_p = edge_probability(n, mean_K)
        mdeg = mean_degree(n, mean_K)
        g_mean = gamma_n(query)
        g_choices = gamma_n_choices(query)
        bounds = tuple((m, giant_bound_sum(n, mu, K, m)) for m in M_values)
        if mean_K > 1.0:
            envelope = tuple((m, theorem2_leading_bound(mean_K, m)) for m in M_values)
    return TheoryReport(
        n=n, mu=mu, k=k, K=K, mean_K=mean_K,
        edge_probability=edge_p, mean_degree=mdeg,
        threshold_K=threshold_K(query),
        gamma_mean_form=g_mean, gamma_choices_form=g_choices,
        bounds=bounds, theorem2_envelope=envelope,
    )
