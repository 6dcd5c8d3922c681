"""Synthetic ground-truth/candidate pairs by controlled perturbation."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Labeling, LabelingError, relabel_dense

SPLIT = "split"
RELABEL = "relabel"
MERGE = "merge"


@dataclass(frozen=True)
class PerturbSpec:
    """Ground truth of contiguous groups with ``sizes`` and one perturbation.

    ``parameter`` is the number of parts for ``split``, the fraction of
    objects for ``relabel`` and a tuple of labels for ``merge``.
    """

    sizes: tuple[int, ...]
    operation: str
    parameter: object
    seed: int = 0


def ground_truth(sizes) -> Labeling:
    if not sizes or any(int(s) < 1 for s in sizes):
        raise LabelingError("group sizes must be positive")
    return Labeling(tuple(np.repeat(np.arange(1, len(sizes) + 1), sizes).tolist()))


def split_each_group(g: Labeling, parts: int, rng: np.random.Generator) -> Labeling:
    """Split every group into ``parts`` subgroups of near-equal size."""
    parts = int(parts)
    sizes = g.group_sizes()
    if parts < 1 or parts > min(sizes):
        raise LabelingError(f"cannot split groups of sizes {sizes} into {parts} parts")
    labels = np.asarray(g.assignments)
    out = np.empty_like(labels)
    for r in range(1, g.q + 1):
        members = np.flatnonzero(labels == r)
        rng.shuffle(members)
        for k, chunk in enumerate(np.array_split(members, parts)):
            out[chunk] = (r - 1) * parts + k + 1
    return relabel_dense(out.tolist())


def relabel_fraction(g: Labeling, fraction: float, rng: np.random.Generator) -> Labeling:
    """Move a fraction of objects to a uniformly chosen different group."""
    fraction = float(fraction)
    if not 0.0 <= fraction <= 1.0:
        raise LabelingError("relabel fraction must lie in [0, 1]")
    labels = np.array(g.assignments)
    m = int(round(fraction * g.n))
    if m == 0 or g.q == 1:
        return g
    chosen = rng.choice(g.n, size=m, replace=False)
    # shift by 1..q-1 so the new label always differs
    shift = rng.integers(1, g.q, size=m)
    labels[chosen] = (labels[chosen] - 1 + shift) % g.q + 1
    return relabel_dense(labels.tolist())


def merge_groups(g: Labeling, groups) -> Labeling:
    groups = sorted({int(x) for x in groups})
    if not groups or groups[0] < 1 or groups[-1] > g.q:
        raise LabelingError(f"merge labels must lie in 1..{g.q}")
    target = groups[0]
    merged = [target if x in groups else x for x in g.assignments]
    return relabel_dense(merged)


def make_pair(spec: PerturbSpec) -> tuple[Labeling, Labeling]:
    g = ground_truth(spec.sizes)
    rng = np.random.default_rng(spec.seed)
    if spec.operation == SPLIT:
        c = split_each_group(g, spec.parameter, rng)
    elif spec.operation == RELABEL:
        c = relabel_fraction(g, spec.parameter, rng)
    elif spec.operation == MERGE:
        c = merge_groups(g, spec.parameter)
    else:
        raise LabelingError(f"unknown perturbation {spec.operation!r}")
    return g, c
