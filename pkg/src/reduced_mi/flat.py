"""Classical entropies, traditional mutual information and the flat reduced MI.

The flat reduced mutual information subtracts the cost of sending the
contingency table uniformly among all tables with the observed margins,
``log2 Omega(rows, cols)``. Omega is counted exactly for small instances or
estimated with the effective-columns closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import Labeling, LabelingError, build_contingency, check_size_vector, _check_pair
from .logmath import clamp_cost, log_binomial, log_factorial, log_multinomial
import math

EXACT = "exact"
EFFECTIVE_COLUMNS = "effective_columns"
CLOSED_FORM = "closed_form_degenerate"

DEFAULT_BUDGET = 10**7

_METHOD_ALIASES = {"exact": EXACT, "ec": EFFECTIVE_COLUMNS, "effective_columns": EFFECTIVE_COLUMNS}


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OmegaEstimate:
    """log2 of the number of tables with given margins."""

    log_count: float
    method: str
    count: int | None = None  # set only by exact enumeration


def normalize_method(method: str) -> str:
    try:
        return _METHOD_ALIASES[method]
    except KeyError:
        raise ValueError(f"unknown omega method {method!r}") from None


def entropy_h0(g: Labeling) -> float:
    """log2 n! / prod_r n_r!"""
    return clamp_cost(log_multinomial(g.n, g.group_sizes()))


def size_vector_cost_flat(n: int, q: int) -> float:
    """Flat cost of a q-vector of nonnegative integers summing to n."""
    return log_binomial(n + q - 1, q - 1)


def entropy_flat(g: Labeling) -> float:
    """Three-part cost: number of groups, group sizes, then the labeling."""
    return math.log2(g.n) + size_vector_cost_flat(g.n, g.q) + entropy_h0(g)


def mi_traditional(g: Labeling, c: Labeling) -> float:
    """Conventional mutual information, without the contingency-table cost."""
    _check_pair(g, c)
    table = build_contingency(g, c)
    return _i0_from_table(table)


def _i0_from_table(table) -> float:
    # Grouped so that a single-column (or single-row) table cancels exactly.
    n = table.n
    a = log_factorial(n) - sum(log_factorial(s) for s in table.col_sums)
    b = sum(log_factorial(int(x)) for x in table.counts.ravel()) - sum(
        log_factorial(r) for r in table.row_sums
    )
    return clamp_cost(a + b)


def _check_margins(rows, cols):
    rows = check_size_vector(rows)
    cols = check_size_vector(cols)
    if sum(rows) != sum(cols):
        raise LabelingError(
            f"margin mismatch: rows sum to {sum(rows)}, columns to {sum(cols)}"
        )
    return rows, cols


def omega_exact(rows: Sequence[int], cols: Sequence[int], budget: int = DEFAULT_BUDGET) -> OmegaEstimate:
    """Count nonnegative integer matrices with the given margins.

    Rows are filled one at a time; each row is a bounded composition of its
    sum into the remaining column capacities. Counts for a given row index
    depend only on the multiset of remaining capacities, which is memoized.
    ``budget`` caps the number of partial rows visited.
    """
    rows, cols = _check_margins(rows, cols)
    rows = sorted(rows, reverse=True)
    memo: dict[tuple, int] = {}
    visited = 0

    def compositions(total, caps):
        suffix = [0] * (len(caps) + 1)
        for j in range(len(caps) - 1, -1, -1):
            suffix[j] = suffix[j + 1] + caps[j]
        out = []
        cur = list(caps)

        def rec(j, left):
            nonlocal visited
            visited += 1
            if visited > budget:
                raise BudgetExceeded("instance too large for exact count")
            if j == len(caps) - 1:
                cur[j] = caps[j] - left
                out.append(tuple(sorted(x for x in cur if x)))
                return
            lo = max(0, left - suffix[j + 1])
            hi = min(caps[j], left)
            for v in range(lo, hi + 1):
                cur[j] = caps[j] - v
                rec(j + 1, left - v)

        rec(0, total)
        return out

    def count_from(i, caps):
        if i == len(rows) - 1:
            return 1
        key = (i, caps)
        if key in memo:
            return memo[key]
        total = 0
        for nxt in compositions(rows[i], caps):
            total += count_from(i + 1, nxt)
        memo[key] = total
        return total

    count = count_from(0, tuple(sorted(cols)))
    return OmegaEstimate(math.log2(count), EXACT, count)


def omega_effective_columns(rows: Sequence[int], cols: Sequence[int]) -> OmegaEstimate:
    """Effective-columns estimate, with ``rows`` the ground-truth sizes.

    Margins where the count is known in closed form (a single row or
    column, all-singleton rows or all-singleton columns) are returned
    exactly.
    """
    rows, cols = _check_margins(rows, cols)
    n = sum(rows)
    q_c = len(cols)
    if len(rows) == 1 or q_c == 1:
        return OmegaEstimate(0.0, CLOSED_FORM)
    if all(r == 1 for r in rows):
        return OmegaEstimate(log_multinomial(n, cols), CLOSED_FORM)
    if all(s == 1 for s in cols):
        return OmegaEstimate(log_multinomial(n, rows), CLOSED_FORM)
    R = sum(r * r for r in rows)
    a = (n * n - n + (n * n - R) / q_c) / (R - n)
    log_count = -log_binomial(n + q_c * a - 1, q_c * a - 1)
    log_count += sum(log_binomial(s + a - 1, a - 1) for s in cols)
    log_count += sum(log_binomial(r + q_c - 1, q_c - 1) for r in rows)
    return OmegaEstimate(max(log_count, 0.0), EFFECTIVE_COLUMNS)


def omega(rows, cols, method: str = EFFECTIVE_COLUMNS, budget: int = DEFAULT_BUDGET) -> OmegaEstimate:
    method = normalize_method(method)
    if method == EXACT:
        return omega_exact(rows, cols, budget)
    return omega_effective_columns(rows, cols)


def mi_flat(g: Labeling, c: Labeling, omega_method: str = EFFECTIVE_COLUMNS,
            budget: int = DEFAULT_BUDGET) -> float:
    """Reduced mutual information with a flat contingency-table encoding."""
    _check_pair(g, c)
    est = omega(g.group_sizes(), c.group_sizes(), omega_method, budget)
    return clamp_cost(mi_traditional(g, c) - est.log_count)


def flat_table_cost(g: Labeling, c: Labeling, omega_method: str = EFFECTIVE_COLUMNS,
                    budget: int = DEFAULT_BUDGET) -> float:
    """Flat-scheme cost of conveying the table given ``c``: sizes of ``g`` plus log Omega."""
    est = omega(g.group_sizes(), c.group_sizes(), omega_method, budget)
    return size_vector_cost_flat(g.n, g.q) + est.log_count
