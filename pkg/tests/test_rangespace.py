import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hoeffkit.bounds import BoundedVariableSpec, hoeffding_bound
from hoeffkit.errors import BudgetExceededError, DomainError
from hoeffkit.points import PointSet
from hoeffkit.rangespace import (
    Rectangle,
    canonicalize,
    count_query,
    enumerate_canonical_subsets,
    epsilon_sample_check,
    max_discrepancy,
    sample_subset,
)

from oracles import brute_max_discrepancy, random_rectangle_family, realizable_subsets


def test_rectangle_validation():
    with pytest.raises(DomainError):
        Rectangle(((1.0, 0.0),))
    with pytest.raises(DomainError):
        Rectangle(())
    with pytest.raises(DomainError):
        Rectangle(((0.0, float("inf")),))


# --- count_query -----------------------------------------------------------


def test_count_examples(rng):
    P = PointSet(rng.random((30, 3)))
    box = Rectangle.from_bounds(P.points.min(axis=0), P.points.max(axis=0))
    assert count_query(P, box) == 30
    below = Rectangle.from_bounds([-2, 0, 0], [-1, 1, 1])
    assert count_query(P, below) == 0
    assert count_query(PointSet([1, 2, 3, 4]), Rectangle(((1.5, 3.5),))) == 2


def test_count_is_closed():
    P = PointSet([[0, 0], [1, 1], [2, 2]])
    assert count_query(P, Rectangle(((1, 2), (1, 2)))) == 2
    assert count_query(P, Rectangle(((1, 1), (1, 1)))) == 1


def test_count_dimension_mismatch():
    with pytest.raises(DomainError):
        count_query(PointSet([[0, 0]]), Rectangle(((0, 1),)))


# --- sampling --------------------------------------------------------------


def test_sample_singleton():
    S = sample_subset(PointSet([[3.0, 4.0]]), 7, np.random.default_rng(0))
    assert S.n == 7 and np.all(S.points == [3.0, 4.0])


def test_sample_deterministic_and_allows_k_above_n():
    P = PointSet(np.arange(10.0))
    a = sample_subset(P, 25, np.random.default_rng(4))
    b = sample_subset(P, 25, np.random.default_rng(4))
    assert a.n == 25 and np.array_equal(a.points, b.points)


def test_sample_uniform_over_points():
    n, trials = 5, 20000
    P = PointSet(np.arange(float(n)))
    hits = np.zeros(n)
    for s in range(trials):
        hits[int(sample_subset(P, 1, np.random.default_rng(s)).points[0, 0])] += 1
    se = math.sqrt((1 / n) * (1 - 1 / n) / trials)
    assert np.all(np.abs(hits / trials - 1 / n) < 4 * se)


def test_sample_rejects_bad_k():
    with pytest.raises(DomainError):
        sample_subset(PointSet([1.0]), 0, np.random.default_rng(0))


# --- canonicalize ----------------------------------------------------------


def test_canonicalize_examples():
    P = PointSet([[0, 0], [2, 3]])
    empty = canonicalize(P, Rectangle(((5, 6), (5, 6))))
    assert empty.members == frozenset() and empty.defining_indices == () and empty.rectangle is None
    c = canonicalize(P, Rectangle(((-5, 5), (-5, 5))))
    assert c.members == {0, 1}
    assert c.rectangle == Rectangle(((0, 2), (0, 3)))
    assert set(c.defining_indices) == {0, 1}


def test_canonical_rectangle_preserves_membership():
    for s in range(50):
        rng = np.random.default_rng(s)
        P = PointSet(rng.random((8, 2)))
        lo = rng.random(2) * 0.6
        R = Rectangle.from_bounds(lo, lo + rng.random(2) * 0.6)
        c = canonicalize(P, R)
        if c.rectangle is None:
            assert count_query(P, R) == 0
            continue
        assert count_query(P, c.rectangle) == len(c) == count_query(P, R)
        assert canonicalize(P, c.rectangle).members == c.members
        assert len(c.defining_indices) <= 2 * P.d
        assert set(c.defining_indices) <= c.members
        again = canonicalize(P, c.rectangle)
        assert again.rectangle == c.rectangle


# --- enumeration -----------------------------------------------------------


def test_enumerate_line_of_four():
    subsets = enumerate_canonical_subsets(PointSet([1.0, 2.0, 3.0, 4.0]))
    assert len(subsets) == 11
    runs = {frozenset(range(a, b + 1)) for a in range(4) for b in range(a, 4)} | {frozenset()}
    assert {s.members for s in subsets} == runs


@pytest.mark.parametrize("d", [1, 2, 3])
def test_enumerate_singleton(d):
    subsets = enumerate_canonical_subsets(PointSet(np.ones((1, d))))
    assert [s.members for s in subsets] == [frozenset(), frozenset({0})]


def test_enumerate_five_points_bounded():
    P = PointSet(np.random.default_rng(8).random((5, 2)))
    count = len(enumerate_canonical_subsets(P))
    assert count <= 5**4
    assert count == len(realizable_subsets(P.points))


@settings(max_examples=60, deadline=None)
@given(
    n=st.integers(1, 7),
    d=st.integers(1, 3),
    seed=st.integers(0, 2**32),
    grid=st.booleans(),
)
def test_enumerate_matches_brute_force(n, d, seed, grid):
    rng = np.random.default_rng(seed)
    pts = rng.integers(0, 3, size=(n, d)).astype(float) if grid else rng.random((n, d))
    subsets = enumerate_canonical_subsets(PointSet(pts))
    members = [s.members for s in subsets]
    assert len(set(members)) == len(members)
    assert set(members) == realizable_subsets(pts)
    assert len(members) <= n ** (2 * d) + 1


def test_enumerate_budget():
    P = PointSet(np.random.default_rng(0).random((30, 2)))
    with pytest.raises(BudgetExceededError) as info:
        enumerate_canonical_subsets(P, budget=1000)
    assert info.value.required == (30 * 31 // 2) ** 2


def test_enumerate_agrees_with_random_boxes():
    for s in range(10):
        rng = np.random.default_rng(s)
        P = PointSet(rng.random((6, 2)))
        enumerated = {c.members for c in enumerate_canonical_subsets(P)}
        assert random_rectangle_family(P.points, rng, 20000) == enumerated


# --- discrepancy -----------------------------------------------------------


def test_discrepancy_examples():
    P = PointSet([1.0, 2.0, 3.0, 4.0])
    assert max_discrepancy(P, P).max_discrepancy == 0.0
    rep = max_discrepancy(P, PointSet([1.0, 2.0]))
    assert rep.max_discrepancy == 0.5
    assert rep.witness_subset.members == {0, 1}
    assert max_discrepancy(P, PointSet([1.0, 3.0])).max_discrepancy == 0.25


def test_discrepancy_examples_match_oracle():
    P = [1.0, 2.0, 3.0, 4.0]
    assert brute_max_discrepancy(P, [1.0, 2.0]) == Fraction(1, 2)
    assert brute_max_discrepancy(P, [1.0, 3.0]) == Fraction(1, 4)


@settings(max_examples=80, deadline=None)
@given(
    n=st.integers(1, 6),
    k=st.integers(1, 5),
    d=st.integers(1, 3),
    seed=st.integers(0, 2**32),
    subset=st.booleans(),
)
def test_discrepancy_matches_brute_force(n, k, d, seed, subset):
    rng = np.random.default_rng(seed)
    P = rng.integers(0, 4, size=(n, d)).astype(float)
    if subset:
        S = P[rng.integers(0, n, size=k)]
    else:
        S = rng.integers(0, 4, size=(k, d)).astype(float)
    rep = max_discrepancy(PointSet(P), PointSet(S))
    expected = brute_max_discrepancy(P, S)
    assert rep.max_discrepancy == pytest.approx(float(expected), abs=1e-15)
    if rep.witness_rectangle is not None:
        gap = abs(count_query(P, rep.witness_rectangle) / n - count_query(S, rep.witness_rectangle) / k)
        assert gap == pytest.approx(rep.max_discrepancy, abs=1e-15)
    assert rep.subsets_examined <= (n + k) ** (2 * d)


def test_discrepancy_sample_of_p_counts_candidates():
    rng = np.random.default_rng(2)
    P = PointSet(rng.random((10, 2)))
    S = sample_subset(P, 30, rng)
    rep = max_discrepancy(P, S)
    assert rep.subsets_examined == (10 * 11 // 2) ** 2 <= 10**4
    # witness is canonical over P and keeps the sample's count too
    w = rep.witness_subset
    assert count_query(S, w.rectangle) == count_query(S, rep.witness_rectangle)


def test_discrepancy_random_search_never_exceeds_exact():
    for s in range(5):
        rng = np.random.default_rng(100 + s)
        P = PointSet(rng.random((40, 2)))
        S = sample_subset(P, 60, rng)
        exact = max_discrepancy(P, S).max_discrepancy
        lo = rng.random((100_000, 2))
        hi = lo + rng.random((100_000, 2)) * (1 - lo)
        inP = np.all((P.points[None] >= lo[:, None]) & (P.points[None] <= hi[:, None]), axis=2)
        inS = np.all((S.points[None] >= lo[:, None]) & (S.points[None] <= hi[:, None]), axis=2)
        searched = np.max(np.abs(inP.mean(axis=1) - inS.mean(axis=1)))
        assert searched <= exact + 1e-12


def test_discrepancy_invariant_under_monotone_rescaling():
    for s in range(20):
        rng = np.random.default_rng(s)
        P = rng.random((12, 2))
        S = P[rng.integers(0, 12, size=9)]
        a = rng.uniform(0.1, 10, size=2)
        b = rng.uniform(-5, 5, size=2)
        base = max_discrepancy(PointSet(P), PointSet(S)).max_discrepancy
        moved = max_discrepancy(PointSet(P * a + b), PointSet(S * a + b)).max_discrepancy
        cubed = max_discrepancy(PointSet(P**3), PointSet(S**3)).max_discrepancy
        assert base == moved == cubed


def test_discrepancy_errors_and_budget():
    P = PointSet(np.random.default_rng(0).random((50, 2)))
    with pytest.raises(DomainError):
        max_discrepancy(P, PointSet([[0.0, 0.0, 0.0]]))
    with pytest.raises(BudgetExceededError):
        max_discrepancy(P, P, budget=100)


def test_fixed_query_hoeffding_chain():
    # one fixed box, k samples: failure rate of |q(S)/k - q(P)/n| >= eps stays under 2 exp(-2 eps^2 k)
    rng = np.random.default_rng(1)
    P = PointSet(rng.random((100, 2)))
    R = Rectangle(((0.0, 0.5), (0.0, 1.0)))
    target = count_query(P, R) / P.n
    eps, k, trials = 0.1, 100, 10_000
    fails = 0
    for s in range(trials):
        S = sample_subset(P, k, np.random.default_rng([1, s]))
        fails += abs(count_query(S, R) / k - target) >= eps
    rate = fails / trials
    bound = hoeffding_bound(BoundedVariableSpec.uniform(k), eps * k).as_probability
    assert rate <= bound + 3 * math.sqrt(rate * (1 - rate) / trials)


# --- epsilon_sample_check --------------------------------------------------


def test_epsilon_sample_check_runs():
    P = PointSet(np.random.default_rng(3).random((100, 2)))
    k, passed, rep = epsilon_sample_check(P, 0.2, 0.1, np.random.default_rng(0))
    assert k == 381
    assert passed == (rep.max_discrepancy <= 0.2)


def test_epsilon_sample_singleton_and_loose():
    k, passed, rep = epsilon_sample_check(PointSet([[1.0, 2.0]]), 0.2, 0.1, np.random.default_rng(0))
    assert passed and rep.max_discrepancy == 0.0
    # k = ceil(ln(4.04) / 0.2401) = 6; two points can differ by at most 1/2
    k, passed, rep = epsilon_sample_check(PointSet([[0.0], [1.0]]), 0.49, 0.99, np.random.default_rng(0))
    assert k == 6
    assert rep.max_discrepancy <= 0.5
    assert passed == (rep.max_discrepancy <= 0.49)
