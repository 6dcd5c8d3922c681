"""Acceptance suite: one pass/fail line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they are also written to the terminal summary without ``-s``.
"""

import itertools
import math
import time

import numpy as np
import pytest

from reduced_mi.core import Labeling, are_permutation_equivalent, build_contingency, relabel_dense
from reduced_mi.dm import (
    dm_log_prob,
    dm_vector_cost,
    fit_table_alpha,
    fit_vector_alpha,
    mi_dm,
)
from reduced_mi.flat import (
    entropy_h0,
    flat_table_cost,
    mi_flat,
    mi_traditional,
    omega_effective_columns,
    omega_exact,
)
from reduced_mi.perturb import PerturbSpec, make_pair
from reduced_mi.similarity import (
    DM,
    FLAT,
    TRADITIONAL,
    canonicalize,
    clustering_entropy,
    clustering_entropy_terms,
    compare,
    mutual_information,
    nmi,
)

from conftest import compositions, set_partitions

RESULTS = []


def report(number, title, ok, detail, elapsed, limit):
    within = elapsed < limit
    passed = ok and within
    line = (f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title} "
            f"({detail}; {elapsed:.2f}s / {limit:g}s)")
    RESULTS.append(line)
    print(line)
    assert ok, line
    assert within, line


def random_labeling(rng, n, q):
    return relabel_dense(rng.integers(1, q + 1, size=n).tolist())


def test_01_singleton_candidate_zero():
    t0 = time.perf_counter()
    rng = np.random.default_rng(101)
    worst_flat = worst_h0 = 0.0
    for _ in range(60):
        n = int(rng.integers(1, 13))
        g = random_labeling(rng, n, int(rng.integers(1, 5)))
        c = Labeling(tuple(range(1, n + 1)))
        worst_flat = max(worst_flat, abs(mi_flat(g, c, "exact")))
        worst_h0 = max(worst_h0, abs(mi_traditional(g, c) - entropy_h0(g)))
    ok = worst_flat <= 1e-9 and worst_h0 <= 1e-9
    report(1, "singleton candidate gives zero flat MI", ok,
           f"max|I_flat|={worst_flat:.1e}, max|I0-H0|={worst_h0:.1e}",
           time.perf_counter() - t0, 1)


def test_02_single_group_candidate_zero():
    t0 = time.perf_counter()
    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(60):
        n = int(rng.integers(1, 60))
        g = random_labeling(rng, n, int(rng.integers(1, 6)))
        c = Labeling((1,) * n)
        for value in (mi_traditional(g, c), mi_flat(g, c), mi_dm(g, c)[0]):
            worst = max(worst, abs(value))
    report(2, "single-group candidate gives zero for every measure", worst <= 1e-9,
           f"max|I|={worst:.1e}", time.perf_counter() - t0, 1)


def refinement_pair(sub, parts=3, groups=3):
    g = Labeling(tuple(np.repeat(np.arange(1, groups + 1), parts * sub).tolist()))
    c = Labeling(tuple(np.repeat(np.arange(1, groups * parts + 1), sub).tolist()))
    return g, c


def test_03_refinement_middle_column():
    t0 = time.perf_counter()
    r = compare(*refinement_pair(3))
    ok = 0.70 <= r.nmi_dm <= 0.80 and r.nmi_flat < 0.5 and abs(r.nmi0 - 1.0) <= 1e-9
    report(3, "nine subgroups of three against three groups of nine", ok,
           f"nmi_dm={r.nmi_dm:.4f}, nmi_flat={r.nmi_flat:.4f}, nmi0={r.nmi0:.9f}",
           time.perf_counter() - t0, 1)


def test_04_refinement_size_grid():
    t0 = time.perf_counter()
    g, c = refinement_pair(1)
    left_dm = nmi(DM, g, c)
    left_flat = nmi(FLAT, g, c, "exact")
    flat, dm = [left_flat], [left_dm]
    for sub in (3, 10, 100, 1000):
        r = compare(*refinement_pair(sub))
        flat.append(r.nmi_flat)
        dm.append(r.nmi_dm)
    ordered = all(f <= d + 1e-12 for f, d in zip(flat[1:], dm[1:]))
    monotone = all(b > a for seq in (flat, dm) for a, b in zip(seq, seq[1:]))
    toward_one = dm[-1] > 0.95 and flat[-1] > 0.9 and max(dm + flat) <= 1.0 + 1e-9
    ok = abs(left_dm) <= 1e-9 and abs(left_flat) <= 1e-9 and ordered and monotone and toward_one
    detail = "dm=" + ",".join(f"{x:.3f}" for x in dm) + " flat=" + ",".join(f"{x:.3f}" for x in flat)
    report(4, "subgroup-size grid limits and ordering", ok, detail, time.perf_counter() - t0, 10)


def test_05_exhaustive_upper_bound():
    # The iff is only meaningful when the ground truth carries information:
    # with I(g;g) = 0 (q_g = 1, or all singletons for n <= 3 under the
    # multinomial limit) every c with I(g;c) = 0 attains the bound.
    t0 = time.perf_counter()
    pairs = violations = iff_failures = 0
    zero_info = set()
    for n in range(1, 8):
        parts = list(set_partitions(n, 3))
        self_info = {g: mi_dm(g, g)[0] for g in parts}
        for g in parts:
            i_gg = self_info[g]
            informative = i_gg > 1e-9
            if not informative:
                zero_info.add(g.assignments)
            for c in parts:
                pairs += 1
                i_gc = mi_dm(g, c)[0]
                if i_gc > i_gg + 1e-9:
                    violations += 1
                if informative:
                    equal = abs(i_gc - i_gg) <= 1e-9
                    iff_failures += equal != are_permutation_equivalent(g, c)
    expected_zero = {(1,) * n for n in range(1, 8)} | {(1, 2), (1, 2, 3)}
    ok = violations == 0 and iff_failures == 0 and zero_info == expected_zero
    report(5, "DM mutual information never exceeds self-information", ok,
           f"{pairs} pairs, {violations} bound violations, {iff_failures} equality mismatches, "
           f"{len(zero_info)} zero-information ground truths exempt from the iff",
           time.perf_counter() - t0, 300)


def test_06_self_information_closed_form():
    t0 = time.perf_counter()
    rng = np.random.default_rng(606)
    worst = 0.0
    zero_limit_ok = True
    for _ in range(80):
        n = int(rng.integers(1, 150))
        g = random_labeling(rng, n, int(rng.integers(1, 8)))
        fit_g = fit_vector_alpha(g.group_sizes(), g.q)
        expected = (entropy_h0(g) + dm_vector_cost(g.group_sizes(), g.q, fit_g.alpha)
                    - g.q * math.log2(g.q))
        worst = max(worst, abs(mi_dm(g, g)[0] - expected))
        fit_gg = fit_table_alpha(build_contingency(g, g))
        zero_limit_ok &= fit_gg.is_zero_limit and fit_gg.cost_bits == g.q * math.log2(g.q)
    ok = worst <= 1e-6 and zero_limit_ok
    report(6, "self-information closed form and zero-limit table fit", ok,
           f"max error={worst:.1e}, zero limit selected={zero_limit_ok}",
           time.perf_counter() - t0, 1)


def test_07_dm_normalization():
    t0 = time.perf_counter()
    worst = 0.0
    for big_n, q, alpha in itertools.product(range(0, 7), range(1, 4), (0.25, 1.0, 4.0)):
        total = sum(2.0 ** dm_log_prob(x, big_n, q, alpha) for x in compositions(big_n, q))
        worst = max(worst, abs(total - 1.0))
    report(7, "Dirichlet-multinomial probabilities sum to one", worst <= 1e-9,
           f"max|sum-1|={worst:.1e}", time.perf_counter() - t0, 1)


def degenerate_margins(max_n):
    for n in range(1, max_n + 1):
        for q in range(1, n + 1):
            for sizes in compositions(n - q, q):
                other = tuple(s + 1 for s in sizes)
                yield other, (n,)
                yield (n,), other
                yield (1,) * n, other
                yield other, (1,) * n


def test_08_effective_columns_agreement():
    t0 = time.perf_counter()
    worst_exact = 0.0
    cases = 0
    for rows, cols in degenerate_margins(10):
        cases += 1
        exact = omega_exact(rows, cols).log_count
        worst_exact = max(worst_exact, abs(omega_effective_columns(rows, cols).log_count - exact))
    rng = np.random.default_rng(808)
    worst_rel = 0.0
    sampled = 0
    while sampled < 100:
        n = int(rng.integers(3, 21))
        rows = np.bincount(rng.integers(0, 3, size=n), minlength=3)
        cols = np.bincount(rng.integers(0, 3, size=n), minlength=3)
        if (rows == 0).any() or (cols == 0).any():
            continue
        exact = omega_exact(rows.tolist(), cols.tolist()).log_count
        if exact == 0.0:
            continue
        sampled += 1
        approx = omega_effective_columns(rows.tolist(), cols.tolist()).log_count
        worst_rel = max(worst_rel, abs(approx - exact) / exact)
    ok = worst_exact <= 1e-9 and worst_rel <= 0.25
    report(8, "effective-columns table count against exact enumeration", ok,
           f"{cases} degenerate margins max err={worst_exact:.1e}, "
           f"100 random 3x3 max rel err={worst_rel:.3f}",
           time.perf_counter() - t0, 30)


def test_09_canonicalization():
    t0 = time.perf_counter()
    tokens = Labeling((3, 3, 1, 3, 2, 1, 1, 2))
    example_ok = canonicalize(tokens).labeling.assignments == (2, 2, 3, 2, 1, 3, 3, 1)
    rng = np.random.default_rng(909)
    worst_paths = worst_mi = 0.0
    for _ in range(1000):
        n = int(rng.integers(1, 101))
        g = random_labeling(rng, n, int(rng.integers(1, 9)))
        c = random_labeling(rng, n, int(rng.integers(1, 9)))
        for positive in (False, True):
            direct = clustering_entropy(g, positive_sizes=positive)
            worst_paths = max(worst_paths, abs(direct - sum(clustering_entropy_terms(g, positive))))
        gt, ct = canonicalize(g).labeling, canonicalize(c).labeling
        for measure in (TRADITIONAL, FLAT, DM):
            diff = mutual_information(measure, g, c) - mutual_information(measure, gt, ct)
            worst_mi = max(worst_mi, abs(diff))
    ok = example_ok and worst_paths <= 1e-9 and worst_mi <= 1e-9
    report(9, "canonical labels, two entropy paths and invariant MI", ok,
           f"example={example_ok}, path gap={worst_paths:.1e}, MI change={worst_mi:.1e}",
           time.perf_counter() - t0, 30)


def random_perturbation(rng):
    q = int(rng.integers(2, 9))
    sizes = rng.integers(4, 500 // q + 1, size=q)
    if rng.random() < 0.5:
        spec = PerturbSpec(tuple(sizes.tolist()), "split", int(rng.integers(1, min(4, sizes.min()) + 1)),
                           int(rng.integers(1 << 30)))
    else:
        spec = PerturbSpec(tuple(sizes.tolist()), "relabel", float(rng.uniform(0.0, 0.5)),
                           int(rng.integers(1 << 30)))
    return make_pair(spec)


def test_10_dm_table_cost_below_flat_when_similar():
    t0 = time.perf_counter()
    rng = np.random.default_rng(1010)
    qualifying = violations = 0
    for _ in range(1000):
        g, c = random_perturbation(rng)
        assert g.n <= 500
        _, breakdown = mi_dm(g, c)
        if nmi(DM, g, c) <= 0.8:
            continue
        qualifying += 1
        if not breakdown.table_cost < flat_table_cost(g, c):
            violations += 1
    ok = violations == 0 and qualifying >= 100
    report(10, "DM table cost below flat table cost for similar pairs", ok,
           f"{qualifying} pairs with nmi_dm > 0.8, {violations} violations",
           time.perf_counter() - t0, 120)


@pytest.fixture(scope="module", autouse=True)
def _summary(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is not None and RESULTS:
        reporter.write_line("")
        for line in RESULTS:
            reporter.write_line(line)
