"""Axis-aligned rectangle range spaces over finite point sets.

Counting queries, uniform sampling with replacement, canonical (shrunken)
rectangles, exhaustive enumeration of the realizable subsets, and the exact
maximum discrepancy between a point set and a sample of it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bounds import plan_range_sample
from .errors import BudgetExceededError, DomainError
from .points import PointSet, as_pointset

__all__ = [
    "DEFAULT_BUDGET",
    "Rectangle",
    "CanonicalSubset",
    "DiscrepancyReport",
    "count_query",
    "sample_indices",
    "sample_subset",
    "canonicalize",
    "enumerate_canonical_subsets",
    "max_discrepancy",
    "epsilon_sample_check",
]

DEFAULT_BUDGET = 10_000_000


@dataclass(frozen=True)
class Rectangle:
    """Closed box ``[lo_1, hi_1] x ... x [lo_d, hi_d]``."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self):
        ivs = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        if not ivs:
            raise DomainError("a rectangle needs at least one dimension")
        for lo, hi in ivs:
            if not (math.isfinite(lo) and math.isfinite(hi)):
                raise DomainError("rectangle bounds must be finite")
            if lo > hi:
                raise DomainError(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def from_bounds(cls, lo, hi) -> "Rectangle":
        return cls(tuple(zip(np.ravel(lo), np.ravel(hi))))

    @property
    def d(self) -> int:
        return len(self.intervals)

    @property
    def lo(self) -> np.ndarray:
        return np.array([iv[0] for iv in self.intervals])

    @property
    def hi(self) -> np.ndarray:
        return np.array([iv[1] for iv in self.intervals])

    def contains(self, points) -> np.ndarray:
        """Boolean mask of the rows of ``points`` lying in the box (faces included)."""
        X = np.asarray(points, dtype=float)
        return np.all((X >= self.lo) & (X <= self.hi), axis=1)


@dataclass(frozen=True)
class CanonicalSubset:
    """A subset of ``P`` cut out by a box, with its minimal enclosing box.

    ``defining_indices`` are the at most ``2d`` member points touching the
    faces of ``rectangle`` (lowest index wins ties). The empty subset has no
    rectangle.
    """

    members: frozenset
    defining_indices: tuple[int, ...]
    rectangle: Optional[Rectangle]

    @property
    def bitmask(self) -> int:
        return sum(1 << i for i in self.members)

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class DiscrepancyReport:
    """Largest gap ``|q(P)/|P| - q(S)/|S||`` over all box queries ``q``.

    ``witness_rectangle`` attains the maximum and ``witness_subset`` is the
    part of ``P`` it contains. ``subsets_examined`` counts the non-empty
    candidate boxes covered by the sweep (faces on sample coordinates).
    """

    max_discrepancy: float
    witness_subset: CanonicalSubset
    witness_rectangle: Optional[Rectangle]
    subsets_examined: int


def _check_dims(P: PointSet, R: Rectangle):
    if R.d != P.d:
        raise DomainError(f"rectangle has d={R.d} but points have d={P.d}")


def count_query(P, R: Rectangle) -> int:
    """Number of points of ``P`` inside the closed box ``R``."""
    P = as_pointset(P)
    _check_dims(P, R)
    return int(np.count_nonzero(R.contains(P.points)))


def sample_indices(n: int, k: int, rng: np.random.Generator) -> np.ndarray:
    """``k`` indices drawn independently and uniformly from ``range(n)``."""
    if n < 1:
        raise DomainError("cannot sample from an empty point set")
    if k < 1:
        raise DomainError(f"sample size must be >= 1, got {k}")
    return rng.integers(0, n, size=k)


def sample_subset(P, k: int, rng: np.random.Generator) -> PointSet:
    """Uniform sample of ``k`` points from ``P`` with replacement (``k > n`` is fine)."""
    P = as_pointset(P)
    return PointSet(P.points[sample_indices(P.n, k, rng)])


def _subset_from_members(P: PointSet, members: np.ndarray) -> CanonicalSubset:
    members = np.asarray(members, dtype=np.intp)
    if members.size == 0:
        return CanonicalSubset(frozenset(), (), None)
    Y = P.points[members]
    lo = Y.min(axis=0)
    hi = Y.max(axis=0)
    touching = set()
    for j in range(P.d):
        touching.add(int(members[np.argmin(Y[:, j])]))
        touching.add(int(members[np.argmax(Y[:, j])]))
    return CanonicalSubset(
        frozenset(int(i) for i in members),
        tuple(sorted(touching)),
        Rectangle.from_bounds(lo, hi),
    )


def canonicalize(P, R: Rectangle) -> CanonicalSubset:
    """Shrink ``R`` to the smallest box holding the same points of ``P``."""
    P = as_pointset(P)
    _check_dims(P, R)
    return _subset_from_members(P, np.flatnonzero(R.contains(P.points)))


def _candidate_count(P: PointSet) -> int:
    total = 1
    for j in range(P.d):
        m = len(np.unique(P.points[:, j]))
        total *= m * (m + 1) // 2
    return total


def _interval_masks(column: np.ndarray) -> set[int]:
    """Bitmasks of the point runs ``[vals[a], vals[b]]`` for all ``a <= b``."""
    vals, ranks = np.unique(column, return_inverse=True)
    by_rank = [0] * len(vals)
    for i, r in enumerate(ranks):
        by_rank[r] |= 1 << i
    masks = set()
    for a in range(len(vals)):
        acc = 0
        for b in range(a, len(vals)):
            acc |= by_rank[b]
            masks.add(acc)
    return masks


def enumerate_canonical_subsets(P, budget: int = DEFAULT_BUDGET) -> list[CanonicalSubset]:
    """Every distinct subset of ``P`` that some closed box cuts out, the empty one included.

    Sweeps all boxes whose faces sit on point coordinates, which costs
    ``prod_j m_j (m_j + 1) / 2`` candidates for ``m_j`` distinct coordinates in
    dimension ``j``; :class:`BudgetExceededError` is raised when that exceeds
    ``budget``. Results are ordered by size, then by member indices.
    """
    P = as_pointset(P)
    required = _candidate_count(P)
    if required > budget:
        raise BudgetExceededError(required, budget)

    found = _interval_masks(P.points[:, 0])
    for j in range(1, P.d):
        dim_masks = _interval_masks(P.points[:, j])
        found = {a & b for a in found for b in dim_masks}
    found.add(0)

    subsets = []
    for mask in found:
        members = [i for i in range(P.n) if mask >> i & 1]
        subsets.append(_subset_from_members(P, np.array(members, dtype=np.intp)))
    subsets.sort(key=lambda s: (len(s.members), sorted(s.members)))
    return subsets


def _all_interval_sums(A: np.ndarray, axis: int):
    """Replace ``axis`` (length m) by the sums over every run ``a..b``, ``a <= b``."""
    m = A.shape[axis]
    pad = [(0, 0)] * A.ndim
    pad[axis] = (1, 0)
    C = np.pad(np.cumsum(A, axis=axis), pad)
    a, b = np.triu_indices(m)
    return np.take(C, b + 1, axis=axis) - np.take(C, a, axis=axis), a, b


def max_discrepancy(P, S, budget: int = DEFAULT_BUDGET) -> DiscrepancyReport:
    """Exact ``max_q |q(P)/|P| - q(S)/|S||`` over all axis-aligned boxes ``q``.

    A box's effect on both sets depends only on which coordinates of
    ``P u S`` it spans, so the search runs over the rank grid of those
    coordinates. Each point carries an integer weight (``+|S|`` for points of
    ``P``, ``-|P|`` for points of ``S``), intervals are enumerated explicitly
    in all but the last dimension, and the last dimension is resolved by the
    spread of its prefix sums. ``budget`` caps the number of prefix-sum cells
    evaluated.
    """
    P = as_pointset(P)
    S = as_pointset(S)
    if S.d != P.d:
        raise DomainError(f"sample has d={S.d} but points have d={P.d}")
    n, k, d = P.n, S.n, P.d

    U = np.vstack([P.points, S.points])
    vals, ranks = [], []
    for j in range(d):
        v, r = np.unique(U[:, j], return_inverse=True)
        vals.append(v)
        ranks.append(r)
    sizes = [len(v) for v in vals]

    required = sizes[-1] + 1
    for m in sizes[:-1]:
        required *= m * (m + 1) // 2
    if required > budget:
        raise BudgetExceededError(required, budget)

    weights = np.concatenate([np.full(n, k, dtype=np.int64), np.full(k, -n, dtype=np.int64)])
    grid = np.zeros(sizes, dtype=np.int64)
    np.add.at(grid, tuple(ranks), weights)

    runs = []
    for j in range(d - 1):
        grid, a, b = _all_interval_sums(grid, j)
        runs.append((a, b))
    prefix = np.pad(np.cumsum(grid, axis=-1), [(0, 0)] * (d - 1) + [(1, 0)])
    top = prefix.max(axis=-1)
    bottom = prefix.min(axis=-1)
    spread = top - bottom
    best = np.unravel_index(int(np.argmax(spread)), spread.shape)
    best_spread = int(spread[best])

    examined = 1
    for m in sizes:
        examined *= m * (m + 1) // 2

    if best_spread == 0:
        witness_rect = None
        witness = CanonicalSubset(frozenset(), (), None)
    else:
        row = prefix[best]
        i1, i2 = int(np.argmax(row)), int(np.argmin(row))
        lo_last, hi_last = min(i1, i2), max(i1, i2) - 1
        bounds = [(vals[j][runs[j][0][best[j]]], vals[j][runs[j][1][best[j]]]) for j in range(d - 1)]
        bounds.append((vals[-1][lo_last], vals[-1][hi_last]))
        witness_rect = Rectangle(tuple(bounds))
        witness = canonicalize(P, witness_rect)

    return DiscrepancyReport(
        max_discrepancy=best_spread / (n * k),
        witness_subset=witness,
        witness_rectangle=witness_rect,
        subsets_examined=examined,
    )


def epsilon_sample_check(
    P, epsilon: float, delta: float, rng: np.random.Generator, budget: int = DEFAULT_BUDGET
) -> tuple[int, bool, DiscrepancyReport]:
    """Draw a sample of the planned size and test whether it is an ``epsilon``-sample of ``P``."""
    P = as_pointset(P)
    k = plan_range_sample(P.n, P.d, epsilon, delta)
    S = sample_subset(P, k, rng)
    report = max_discrepancy(P, S, budget=budget)
    return k, report.max_discrepancy <= epsilon, report
