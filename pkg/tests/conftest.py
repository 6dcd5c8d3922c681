import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from reduced_mi.core import Labeling, relabel_dense


@st.composite
def labelings(draw, min_n=1, max_n=12, max_q=4):
    n = draw(st.integers(min_n, max_n))
    raw = draw(st.lists(st.integers(1, max_q), min_size=n, max_size=n))
    return relabel_dense(raw)


@st.composite
def labeling_pairs(draw, min_n=1, max_n=12, max_q=4):
    n = draw(st.integers(min_n, max_n))
    a = draw(st.lists(st.integers(1, max_q), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(1, max_q), min_size=n, max_size=n))
    return relabel_dense(a), relabel_dense(b)


def permute_labels(g: Labeling, seed: int) -> Labeling:
    perm = np.random.default_rng(seed).permutation(g.q) + 1
    return Labeling(tuple(int(perm[x - 1]) for x in g.assignments))


def set_partitions(n, max_q):
    """Restricted growth strings: every partition of n objects once, as a labeling."""
    def rec(prefix, q):
        if len(prefix) == n:
            yield Labeling(tuple(prefix))
            return
        for lab in range(1, min(q + 1, max_q) + 1):
            yield from rec(prefix + [lab], max(q, lab))
    yield from rec([1], 1)


def compositions(total, parts):
    """All vectors of ``parts`` nonnegative integers summing to ``total``."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        bounds = (-1,) + cuts + (total + parts - 1,)
        yield tuple(bounds[i + 1] - bounds[i] - 1 for i in range(parts))


def brute_force_table_count(rows, cols):
    """Count tables by scanning every matrix with entries bounded by its margins."""
    ranges = [range(min(r, s) + 1) for r in rows for s in cols]
    q_c = len(cols)
    count = 0
    for flat in itertools.product(*ranges):
        m = np.array(flat).reshape(len(rows), q_c)
        if (m.sum(axis=1) == rows).all() and (m.sum(axis=0) == cols).all():
            count += 1
    return count


@pytest.fixture
def four_two_two():
    return Labeling((1, 1, 2, 2))
