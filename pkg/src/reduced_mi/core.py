"""Labelings and contingency tables.

Labels are dense integers ``1..q`` with no empty groups. Objects are
identified by position only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np


class LabelingError(ValueError):
    """Raised for malformed labelings or mismatched pairs."""


@dataclass(frozen=True)
class Labeling:
    """Assignment of ``n`` objects to groups ``1..q``."""

    assignments: tuple[int, ...]
    q: int = field(init=False)

    def __post_init__(self):
        a = tuple(int(x) for x in self.assignments)
        if not a:
            raise LabelingError("empty labeling")
        q = max(a)
        if min(a) < 1 or len(set(a)) != q:
            raise LabelingError(
                "labels must be dense in 1..q with no empty groups"
            )
        object.__setattr__(self, "assignments", a)
        object.__setattr__(self, "q", q)

    @property
    def n(self) -> int:
        return len(self.assignments)

    def __len__(self):
        return len(self.assignments)

    def __iter__(self):
        return iter(self.assignments)

    def group_sizes(self) -> tuple[int, ...]:
        return group_sizes(self)

    def tokens(self) -> list[str]:
        return [str(x) for x in self.assignments]


def group_sizes(g: Labeling) -> tuple[int, ...]:
    """Sizes ``n_r`` for ``r = 1..q``; every entry is at least 1."""
    counts = np.bincount(np.asarray(g.assignments), minlength=g.q + 1)[1:]
    return tuple(int(c) for c in counts)


def check_size_vector(sizes: Sequence[int], total: int | None = None) -> tuple[int, ...]:
    """Validate a vector of positive group sizes, optionally against a total."""
    sizes = tuple(int(s) for s in sizes)
    if not sizes:
        raise LabelingError("empty size vector")
    if any(s < 1 for s in sizes):
        raise LabelingError("group sizes must be positive")
    if total is not None and sum(sizes) != total:
        raise LabelingError(f"sizes sum to {sum(sizes)}, expected {total}")
    return sizes


def labeling_from_tokens(tokens: Iterable[str]) -> Labeling:
    """Map opaque tokens to labels ``1..q`` in order of first appearance."""
    mapping: dict[str, int] = {}
    out = []
    for tok in tokens:
        if tok not in mapping:
            mapping[tok] = len(mapping) + 1
        out.append(mapping[tok])
    if not out:
        raise LabelingError("empty labeling")
    return Labeling(tuple(out))


def relabel_dense(labels: Iterable[int]) -> Labeling:
    """Compact arbitrary integer labels to ``1..q`` by first appearance."""
    return labeling_from_tokens(str(int(x)) for x in labels)


def _check_pair(g: Labeling, c: Labeling):
    if g.n != c.n:
        raise LabelingError(
            f"labelings of different sizes ({g.n} vs {c.n})"
        )


@dataclass(frozen=True)
class ContingencyTable:
    """Joint counts ``counts[r, s]`` for ground-truth group ``r+1``, candidate ``s+1``."""

    counts: np.ndarray
    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]

    @classmethod
    def from_counts(cls, counts) -> "ContingencyTable":
        m = np.array(counts, dtype=np.int64)
        if m.ndim != 2 or m.size == 0:
            raise LabelingError("contingency table must be a nonempty matrix")
        if (m < 0).any():
            raise LabelingError("negative table entry")
        m.setflags(write=False)
        rows = tuple(int(x) for x in m.sum(axis=1))
        cols = tuple(int(x) for x in m.sum(axis=0))
        return cls(m, rows, cols)

    @property
    def n(self) -> int:
        return sum(self.row_sums)

    @property
    def shape(self) -> tuple[int, int]:
        return self.counts.shape

    @property
    def q_g(self) -> int:
        return self.counts.shape[0]

    @property
    def q_c(self) -> int:
        return self.counts.shape[1]

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in col) for col in self.counts.T]

    def transpose(self) -> "ContingencyTable":
        return ContingencyTable.from_counts(self.counts.T)

    def tolist(self) -> list[list[int]]:
        return self.counts.tolist()


def build_contingency(g: Labeling, c: Labeling) -> ContingencyTable:
    """Count objects with each combination of labels (rows ``g``, columns ``c``)."""
    _check_pair(g, c)
    gi = np.asarray(g.assignments) - 1
    ci = np.asarray(c.assignments) - 1
    flat = np.bincount(gi * c.q + ci, minlength=g.q * c.q)
    return ContingencyTable.from_counts(flat.reshape(g.q, c.q))


def are_permutation_equivalent(g: Labeling, c: Labeling) -> bool:
    """True iff a bijection of labels maps ``g`` onto ``c``."""
    _check_pair(g, c)
    if g.q != c.q:
        return False
    t = build_contingency(g, c).counts
    nz = t > 0
    return bool((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all())
