"""Normalized measures, canonical clustering labels and the full report."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import Labeling, _check_pair
from .dm import DmCostBreakdown, entropy_dm, mi_dm
from .flat import (
    DEFAULT_BUDGET,
    EFFECTIVE_COLUMNS,
    OmegaEstimate,
    entropy_flat,
    entropy_h0,
    mi_flat,
    mi_traditional,
    normalize_method,
    omega,
    size_vector_cost_flat,
)
from .logmath import clamp_cost, log_binomial, log_factorial, log_multinomial

TRADITIONAL = "traditional"
FLAT = "flat"
DM = "dm"
MEASURES = (TRADITIONAL, FLAT, DM)

ZERO_INFO_EPS = 1e-9


class ZeroInformationError(ValueError):
    """The normalizing mutual information is zero."""


def mutual_information(measure: str, g: Labeling, c: Labeling,
                       omega_method: str = EFFECTIVE_COLUMNS,
                       budget: int = DEFAULT_BUDGET) -> float:
    if measure == TRADITIONAL:
        return mi_traditional(g, c)
    if measure == FLAT:
        return mi_flat(g, c, omega_method, budget)
    if measure == DM:
        return mi_dm(g, c)[0]
    raise ValueError(f"unknown measure {measure!r}")


def _ratio(num: float, den: float) -> float:
    if den <= ZERO_INFO_EPS:
        raise ZeroInformationError("ground truth carries no information")
    return num / den


def nmi(measure: str, g: Labeling, c: Labeling,
        omega_method: str = EFFECTIVE_COLUMNS, budget: int = DEFAULT_BUDGET) -> float:
    """I(g;c) / I(g;g) for the chosen measure.

    Reduced measures can come out slightly negative for very dissimilar
    labelings.
    """
    _check_pair(g, c)
    num = mutual_information(measure, g, c, omega_method, budget)
    den = mutual_information(measure, g, g, omega_method, budget)
    return _ratio(num, den)


def nmi_dm_symmetric(g: Labeling, c: Labeling) -> float:
    _check_pair(g, c)
    num = mi_dm(g, c)[0] + mi_dm(c, g)[0]
    den = mi_dm(g, g)[0] + mi_dm(c, c)[0]
    return _ratio(num, den)


@dataclass(frozen=True)
class CanonicalLabeling:
    """Labeling obeying the canonical rules plus size multiplicities ``M_t``."""

    labeling: Labeling
    multiplicities: dict[int, int] = field(hash=False)


def canonicalize(g: Labeling) -> CanonicalLabeling:
    """Relabel groups by increasing size, ties broken by first appearance."""
    sizes = g.group_sizes()
    first: dict[int, int] = {}
    for i, lab in enumerate(g.assignments):
        first.setdefault(lab, i)
    order = sorted(range(1, g.q + 1), key=lambda r: (sizes[r - 1], first[r]))
    new_label = {old: k + 1 for k, old in enumerate(order)}
    mult: dict[int, int] = {}
    for s in sizes:
        mult[s] = mult.get(s, 0) + 1
    lab = Labeling(tuple(new_label[x] for x in g.assignments))
    return CanonicalLabeling(lab, dict(sorted(mult.items())))


def is_canonical(g: Labeling) -> bool:
    return canonicalize(g).labeling == g


def _size_count(n: int, q: int, positive_sizes: bool) -> float:
    # log2 of the number of admissible size vectors
    if positive_sizes:
        return log_binomial(n - 1, q - 1)
    return size_vector_cost_flat(n, q)


def clustering_entropy_terms(g: Labeling, positive_sizes: bool = False) -> tuple[float, float, float]:
    """(group count, canonical sizes, canonical labeling) costs of the clustering."""
    canon = canonicalize(g)
    log_mult = sum(log_factorial(m) for m in canon.multiplicities.values())
    h_q = math.log2(g.n)
    h_sizes = _size_count(g.n, g.q, positive_sizes) + log_mult - log_factorial(g.q)
    h_labels = log_multinomial(g.n, g.group_sizes()) - log_mult
    return h_q, h_sizes, h_labels


def clustering_entropy(g: Labeling, positive_sizes: bool = False,
                       include_group_count: bool = True) -> float:
    """Cost of the partition of ``g``, its labeling cost minus log2 q!.

    ``positive_sizes`` counts size vectors as compositions with positive
    parts instead of the nonnegative count used by ``entropy_flat``. The
    value is cross-checked against the sum of the three canonical terms.
    """
    if positive_sizes:
        labeling_cost = math.log2(g.n) + _size_count(g.n, g.q, True) + entropy_h0(g)
    else:
        labeling_cost = entropy_flat(g)
    direct = labeling_cost - log_factorial(g.q)
    terms = clustering_entropy_terms(g, positive_sizes)
    if abs(direct - sum(terms)) > 1e-9:
        raise ArithmeticError(
            f"clustering entropy paths disagree: {direct} vs {sum(terms)}"
        )
    if not include_group_count:
        direct -= terms[0]
    return max(direct, 0.0)


def clustering_mi_identity_check(g: Labeling, c: Labeling, tol: float = 1e-9,
                                 omega_method: str = EFFECTIVE_COLUMNS) -> bool:
    """True iff every measure is unchanged by canonicalizing both labelings."""
    gt = canonicalize(g).labeling
    ct = canonicalize(c).labeling
    for measure in MEASURES:
        a = mutual_information(measure, g, c, omega_method)
        b = mutual_information(measure, gt, ct, omega_method)
        if abs(a - b) > tol:
            return False
    return True


@dataclass(frozen=True)
class MeasureReport:
    n: int
    q_g: int
    q_c: int
    i0: float
    i_flat: float
    omega: OmegaEstimate
    i_dm: float
    nmi0: float
    nmi_flat: float
    nmi_dm: float
    nmi_dm_symmetric: float
    dm_breakdown: DmCostBreakdown
    h0_g: float
    h_flat_g: float
    h_dm_g: float
    h0_c: float
    h_flat_c: float
    h_dm_c: float

    JSON_KEYS = (
        "n", "q_g", "q_c", "i0_bits", "i_flat_bits", "i_dm_bits", "nmi0",
        "nmi_flat", "nmi_dm", "nmi_dm_sym", "alpha_g", "alpha_gc",
        "h0_g_bits", "h_flat_g_bits", "h_dm_g_bits", "omega_method", "omega_log2",
    )

    def to_json_dict(self) -> dict:
        r9 = lambda x: round(float(x), 9)  # noqa: E731
        return {
            "n": self.n,
            "q_g": self.q_g,
            "q_c": self.q_c,
            "i0_bits": r9(self.i0),
            "i_flat_bits": r9(self.i_flat),
            "i_dm_bits": r9(self.i_dm),
            "nmi0": r9(self.nmi0),
            "nmi_flat": r9(self.nmi_flat),
            "nmi_dm": r9(self.nmi_dm),
            "nmi_dm_sym": r9(self.nmi_dm_symmetric),
            "alpha_g": _alpha_json(self.dm_breakdown.alpha_g.alpha),
            "alpha_gc": _alpha_json(self.dm_breakdown.alpha_gc.alpha),
            "h0_g_bits": r9(self.h0_g),
            "h_flat_g_bits": r9(self.h_flat_g),
            "h_dm_g_bits": r9(self.h_dm_g),
            "omega_method": self.omega.method,
            "omega_log2": r9(self.omega.log_count),
        }


def _alpha_json(alpha: float):
    # the multinomial limit has no finite JSON number
    if math.isinf(alpha):
        return "inf"
    return round(alpha, 9)


def compare(g: Labeling, c: Labeling, omega_method: str = EFFECTIVE_COLUMNS,
            budget: int = DEFAULT_BUDGET) -> MeasureReport:
    """Compute every measure for ground truth ``g`` and candidate ``c``.

    Raises ZeroInformationError when any normalizer I(g;g) vanishes.
    """
    _check_pair(g, c)
    omega_method = normalize_method(omega_method)
    est = omega(g.group_sizes(), c.group_sizes(), omega_method, budget)
    est_gg = omega(g.group_sizes(), g.group_sizes(), omega_method, budget)

    i0 = mi_traditional(g, c)
    i0_gg = mi_traditional(g, g)
    i_flat = clamp_cost(i0 - est.log_count)
    i_flat_gg = clamp_cost(i0_gg - est_gg.log_count)
    i_dm, breakdown = mi_dm(g, c)
    i_dm_gg = mi_dm(g, g)[0]

    nmi_sym = nmi_dm_symmetric(g, c)
    return MeasureReport(
        n=g.n, q_g=g.q, q_c=c.q,
        i0=i0, i_flat=i_flat, omega=est, i_dm=i_dm,
        nmi0=_ratio(i0, i0_gg),
        nmi_flat=_ratio(i_flat, i_flat_gg),
        nmi_dm=_ratio(i_dm, i_dm_gg),
        nmi_dm_symmetric=nmi_sym,
        dm_breakdown=breakdown,
        h0_g=entropy_h0(g), h_flat_g=entropy_flat(g), h_dm_g=entropy_dm(g),
        h0_c=entropy_h0(c), h_flat_c=entropy_flat(c), h_dm_c=entropy_dm(c),
    )
