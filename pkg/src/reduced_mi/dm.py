"""Dirichlet-multinomial encoding of group sizes and contingency tables.

Group sizes ``n^(g)`` and each column of the contingency table are sent
with a symmetric Dirichlet-multinomial code whose concentration ``alpha``
is fitted by maximum likelihood. All columns share one ``alpha``. The
limits ``alpha -> 0`` and ``alpha -> infinity`` are evaluated analytically
and compete with the interior optimum.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .core import ContingencyTable, Labeling, build_contingency, _check_pair
from .flat import _i0_from_table, entropy_h0
from .logmath import LN2, clamp_cost, ln_dm_binomial, log_factorial

ALPHA_BRACKET = (1e-3, 1e3)
LOG_ALPHA_TOL = 1e-6
# Bits assigned to sending a 4-bit quantized alpha; cancels from every MI and is
# never added to a reported cost.
ALPHA_TRANSMISSION_BITS = 4.0

ZERO_LIMIT = 0.0
INFINITE_LIMIT = math.inf

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_TIE_BITS = 1e-10


@dataclass(frozen=True)
class AlphaFit:
    """Fitted concentration and the cost it achieves.

    ``alpha`` is 0.0 for the analytic zero limit and ``inf`` for the
    multinomial limit.
    """

    alpha: float
    cost_bits: float
    evaluations: int
    at_boundary: bool

    @property
    def is_zero_limit(self) -> bool:
        return self.alpha == ZERO_LIMIT

    @property
    def is_infinite_limit(self) -> bool:
        return math.isinf(self.alpha)


@dataclass(frozen=True)
class DmCostBreakdown:
    vector_cost: float
    table_cost: float
    alpha_g: AlphaFit
    alpha_gc: AlphaFit


def dm_log_prob(x: Sequence[int], n_total: int, q: int, alpha: float) -> float:
    """log2 P(x | N, q, alpha) under the symmetric Dirichlet-multinomial."""
    x = [int(v) for v in x]
    if sum(x) != n_total:
        raise ValueError(f"vector sums to {sum(x)}, expected {n_total}")
    if len(x) != q:
        raise ValueError(f"vector has length {len(x)}, expected {q}")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    ln_p = -ln_dm_binomial(n_total, q * alpha) + sum(ln_dm_binomial(v, alpha) for v in x)
    return ln_p / LN2


def dm_vector_cost(x: Sequence[int], q: int, alpha: float) -> float:
    """Bits to send ``x`` with concentration ``alpha`` (0 means the zero limit)."""
    if alpha == ZERO_LIMIT:
        return dm_vector_cost_zero_limit(x, q)
    if math.isinf(alpha):
        return DmObjective.for_vector(x, q).infinite_limit()
    return clamp_cost(-dm_log_prob(x, sum(int(v) for v in x), q, alpha))


def dm_vector_cost_zero_limit(x: Sequence[int], q: int) -> float:
    nonzero = sum(1 for v in x if v)
    if nonzero == 0:
        return 0.0
    if nonzero == 1:
        return math.log2(q)
    return math.inf


def dm_table_cost(t: ContingencyTable, alpha: float) -> float:
    """Column-by-column cost of the table, one shared ``alpha``."""
    if alpha == ZERO_LIMIT:
        return sum(dm_vector_cost_zero_limit(col, t.q_g) for col in t.columns())
    return sum(dm_vector_cost(col, t.q_g, alpha) for col in t.columns())


@dataclass(frozen=True)
class DmObjective:
    """Cost of a collection of q-vectors as a function of a shared alpha.

    Only the multiset of vector totals and of nonzero entries matters, so
    both are stored as sorted ``(value, multiplicity)`` pairs.
    """

    q: int
    totals: tuple[tuple[int, int], ...]
    entries: tuple[tuple[int, int], ...]
    single_support: bool
    nonempty: int

    @classmethod
    def for_vectors(cls, vectors, q: int) -> "DmObjective":
        totals: Counter = Counter()
        entries: Counter = Counter()
        single = True
        nonempty = 0
        for vec in vectors:
            vec = [int(v) for v in vec]
            if len(vec) != q:
                raise ValueError("vector length does not match q")
            nz = [v for v in vec if v]
            if not nz:
                continue
            nonempty += 1
            single = single and len(nz) == 1
            totals[sum(nz)] += 1
            entries.update(nz)
        return cls(q, tuple(sorted(totals.items())), tuple(sorted(entries.items())),
                   single, nonempty)

    @classmethod
    def for_vector(cls, x, q: int) -> "DmObjective":
        return cls.for_vectors([x], q)

    @classmethod
    def for_table(cls, t: ContingencyTable) -> "DmObjective":
        return cls.for_vectors(t.columns(), t.q_g)

    def __call__(self, alpha: float) -> float:
        qa = self.q * alpha
        ln_cost = 0.0
        for total, m in self.totals:
            ln_cost += m * ln_dm_binomial(total, qa)
        for v, m in self.entries:
            ln_cost -= m * ln_dm_binomial(v, alpha)
        return ln_cost / LN2

    def zero_limit(self) -> float:
        if self.nonempty == 0:
            return 0.0
        if not self.single_support:
            return math.inf
        return self.nonempty * math.log2(self.q)

    def infinite_limit(self) -> float:
        # multinomial with p_r = 1/q for every vector
        log_q = math.log2(self.q)
        bits = 0.0
        for total, m in self.totals:
            bits += m * (total * log_q - log_factorial(total))
        for v, m in self.entries:
            bits += m * log_factorial(v)
        return bits


def golden_section_log(f: Callable[[float], float], lo: float, hi: float,
                       tol: float = LOG_ALPHA_TOL):
    """Minimize ``f(10**x)`` for x in [log10 lo, log10 hi].

    Returns ``(x_best, f_best, evaluations)`` once the bracket is narrower
    than ``tol`` in log10 units.
    """
    a, b = math.log10(lo), math.log10(hi)
    evals = 0

    def g(x):
        nonlocal evals
        evals += 1
        y = f(10.0 ** x)
        if math.isnan(y):
            raise ValueError("objective not finite")
        return y

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = g(d)
    if fc <= fd:
        return c, fc, evals
    return d, fd, evals


def optimize_alpha(objective: Callable[[float], float], bracket=ALPHA_BRACKET,
                   zero_limit: float | None = None,
                   infinite_limit: float | None = None) -> AlphaFit:
    """Fit alpha by golden-section search in log space.

    The interior optimum competes with the bracket endpoints, alpha = 1
    (the flat code) and, when given, the analytic limit costs. Near-ties
    go to the analytic limits, then to alpha = 1.
    """
    lo, hi = bracket
    if isinstance(objective, DmObjective):
        if zero_limit is None:
            zero_limit = objective.zero_limit()
        if infinite_limit is None:
            infinite_limit = objective.infinite_limit()

    x_best, f_best, evals = golden_section_log(objective, lo, hi)
    endpoint_costs = []
    for alpha in (1.0, lo, hi):
        y = objective(alpha)
        evals += 1
        if math.isnan(y):
            raise ValueError("objective not finite")
        endpoint_costs.append((alpha, y))

    log_lo, log_hi = math.log10(lo), math.log10(hi)
    interior_at_edge = min(x_best - log_lo, log_hi - x_best) <= LOG_ALPHA_TOL
    # (alpha, cost, at_boundary) in tie-break preference order
    candidates = []
    if zero_limit is not None:
        candidates.append((ZERO_LIMIT, zero_limit, False))
    if infinite_limit is not None:
        candidates.append((INFINITE_LIMIT, infinite_limit, False))
    candidates.append((1.0, endpoint_costs[0][1], False))
    candidates.append((10.0 ** x_best, f_best, interior_at_edge))
    candidates.append((lo, endpoint_costs[1][1], True))
    candidates.append((hi, endpoint_costs[2][1], True))

    best = min(cost for _, cost, _ in candidates)
    for alpha, cost, edge in candidates:
        if cost <= best + _TIE_BITS:
            return AlphaFit(alpha, clamp_cost(cost), evals, edge)
    raise AssertionError("unreachable")


@lru_cache(maxsize=8192)
def _fit(objective: DmObjective) -> AlphaFit:
    return optimize_alpha(objective)


def fit_vector_alpha(x: Sequence[int], q: int | None = None) -> AlphaFit:
    """Maximum-likelihood alpha for sending the vector ``x``."""
    q = len(x) if q is None else q
    return _fit(DmObjective.for_vector(x, q))


def fit_table_alpha(t: ContingencyTable) -> AlphaFit:
    """Maximum-likelihood shared alpha for sending the columns of ``t``."""
    return _fit(DmObjective.for_table(t))


def dm_breakdown(g: Labeling, c: Labeling) -> DmCostBreakdown:
    _check_pair(g, c)
    table = build_contingency(g, c)
    fit_g = fit_vector_alpha(g.group_sizes(), g.q)
    fit_gc = fit_table_alpha(table)
    return DmCostBreakdown(fit_g.cost_bits, fit_gc.cost_bits, fit_g, fit_gc)


def mi_dm(g: Labeling, c: Labeling) -> tuple[float, DmCostBreakdown]:
    """Reduced mutual information with Dirichlet-multinomial encodings.

    Not symmetric: ``g`` is the ground truth whose rows are encoded
    column by column given the sizes of ``c``.
    """
    _check_pair(g, c)
    table = build_contingency(g, c)
    fit_g = fit_vector_alpha(g.group_sizes(), g.q)
    fit_gc = fit_table_alpha(table)
    i0 = _i0_from_table(table)
    value = i0 + (fit_g.cost_bits - fit_gc.cost_bits)
    return clamp_cost(value), DmCostBreakdown(fit_g.cost_bits, fit_gc.cost_bits, fit_g, fit_gc)


def entropy_dm(g: Labeling) -> float:
    """Cost of ``g`` with the group sizes sent by a fitted Dirichlet-multinomial."""
    return math.log2(g.n) + fit_vector_alpha(g.group_sizes(), g.q).cost_bits + entropy_h0(g)


def conditional_entropy_dm(g: Labeling, c: Labeling) -> float:
    """Cost of ``g`` given ``c``: group count, table, then the labeling."""
    table = build_contingency(g, c)
    rest = sum(log_factorial(s) for s in table.col_sums) - sum(
        log_factorial(int(x)) for x in table.counts.ravel()
    )
    return math.log2(g.n) + fit_table_alpha(table).cost_bits + rest
