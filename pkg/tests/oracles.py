"""Brute-force reference computations, independent of the code under test."""

from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np


def binomial_two_sided_tail(r, p, alpha):
    """Exact Pr[|M - r p| > alpha] for M ~ Binomial(r, p), as a Fraction.

    ``p`` and ``alpha`` are converted to Fractions, so the sum is exact.
    """
    p = Fraction(p)
    alpha = Fraction(alpha)
    mean = r * p
    total = Fraction(0)
    for m in range(r + 1):
        if abs(m - mean) > alpha:
            total += comb(r, m) * p**m * (1 - p) ** (r - m)
    return total


def bernoulli_tail_by_enumeration(r, p, alpha):
    """Same tail by walking all 2**r outcome vectors (small r only)."""
    p = Fraction(p)
    alpha = Fraction(alpha)
    total = Fraction(0)
    for ones in range(r + 1):
        for _ in combinations(range(r), ones):
            if abs(ones - r * p) > alpha:
                total += p**ones * (1 - p) ** (r - ones)
    return total


def realizable_subsets(points):
    """All index subsets of ``points`` cut out by some closed box, by testing all 2**n.

    A non-empty subset is realizable iff its bounding box holds no other point.
    """
    X = np.asarray(points, dtype=float)
    n = len(X)
    found = {frozenset()}
    for mask in range(1, 1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        lo = X[members].min(axis=0)
        hi = X[members].max(axis=0)
        inside = np.all((X >= lo) & (X <= hi), axis=1)
        if set(np.flatnonzero(inside)) == set(members):
            found.add(frozenset(members))
    return found


def brute_max_discrepancy(P, S):
    """max over realizable subsets of P u S of |#P/|P| - #S/|S||, exact Fractions."""
    P = np.asarray(P, dtype=float).reshape(len(P), -1)
    S = np.asarray(S, dtype=float).reshape(len(S), -1)
    n, k = len(P), len(S)
    best = Fraction(0)
    for subset in realizable_subsets(np.vstack([P, S])):
        in_p = sum(1 for i in subset if i < n)
        in_s = len(subset) - in_p
        best = max(best, abs(Fraction(in_p, n) - Fraction(in_s, k)))
    return best


def random_rectangle_family(points, rng, count):
    """Subsets hit by ``count`` random boxes with faces at random gap positions.

    Face positions are drawn from the midpoints between consecutive distinct
    coordinates (plus one beyond each end), jittered within the gap, so every
    realizable subset has a positive chance of being drawn.
    """
    X = np.asarray(points, dtype=float)
    n, d = X.shape
    lo = np.empty((count, d))
    hi = np.empty((count, d))
    for j in range(d):
        v = np.unique(X[:, j])
        cuts = np.concatenate([[v[0] - 1.0], v, [v[-1] + 1.0]])
        gap = rng.integers(0, len(cuts) - 1, size=(count, 2))
        pos = cuts[gap] + rng.random((count, 2)) * np.diff(cuts)[gap]
        lo[:, j] = pos.min(axis=1)
        hi[:, j] = pos.max(axis=1)
    inside = np.all((X[None] >= lo[:, None]) & (X[None] <= hi[:, None]), axis=2)
    weights = 1 << np.arange(n, dtype=np.int64)
    masks = np.unique(inside.astype(np.int64) @ weights)
    return {frozenset(i for i in range(n) if int(m) >> i & 1) for m in masks}
