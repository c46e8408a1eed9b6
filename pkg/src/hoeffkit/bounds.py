"""Chernoff-Hoeffding tail bounds, sample-size planners and the elementary
inequalities behind them.

Every function here is pure and deterministic. Tail bounds return a
:class:`TailBound` carrying both the raw formula value (which may exceed 1)
and its clamp to a probability. All logarithms are natural.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, PreconditionError, RangeError

__all__ = [
    "BoundedVariableSpec",
    "IidSpec",
    "VarianceSpec",
    "TailBound",
    "hoeffding_bound",
    "hoeffding_bound_iid",
    "variance_bound",
    "markov_bound",
    "union_bound",
    "union_vs_independence",
    "cosh_exp_gap",
    "COSH_GAP_MAX_ABS_X",
    "plan_hoeffding_samples",
    "plan_jl_dimension",
    "plan_range_sample",
]

# exp(x**2 / 2) overflows a double once x**2 / 2 > log(DBL_MAX) ~= 709.78
COSH_GAP_MAX_ABS_X = math.sqrt(2.0 * math.log(1.7976931348623157e308))


def _positive_real(name, value):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be positive and finite, got {value}")
    return value


def _open_interval(name, value, lo, hi):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise DomainError(f"{name} must be a real number, got {value!r}")
    value = float(value)
    if not lo < value < hi:
        raise DomainError(f"{name} must lie in ({lo}, {hi}), got {value}")
    return value


def _integer(name, value, minimum):
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    value = int(value)
    if value < minimum:
        raise DomainError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class BoundedVariableSpec:
    """Widths ``b_i - a_i`` of independent bounded random variables."""

    widths: tuple[float, ...]

    def __post_init__(self):
        widths = tuple(_positive_real("width", w) for w in self.widths)
        if not widths:
            raise DomainError("at least one width is required")
        object.__setattr__(self, "widths", widths)

    @classmethod
    def uniform(cls, count: int, width: float = 1.0) -> "BoundedVariableSpec":
        count = _integer("count", count, 1)
        return cls((width,) * count)

    @property
    def count(self) -> int:
        return len(self.widths)

    @property
    def sum_of_squares(self) -> float:
        return math.fsum(w * w for w in self.widths)


@dataclass(frozen=True)
class IidSpec:
    """``count`` iid mean-zero variables supported on ``[-half_width, half_width]``."""

    count: int
    half_width: float

    def __post_init__(self):
        object.__setattr__(self, "count", _integer("count", self.count, 1))
        object.__setattr__(self, "half_width", _positive_real("half_width", self.half_width))


@dataclass(frozen=True)
class VarianceSpec:
    """Per-variable variances plus the largest absolute deviation from the mean."""

    variances: tuple[float, ...]
    max_abs_deviation: float

    def __post_init__(self):
        dev = _positive_real("max_abs_deviation", self.max_abs_deviation)
        variances = []
        for v in self.variances:
            if isinstance(v, bool) or not isinstance(v, numbers.Real) or not math.isfinite(v):
                raise DomainError(f"variance must be a finite real, got {v!r}")
            if v < 0:
                raise DomainError(f"variance must be non-negative, got {v}")
            if v > dev * dev:
                raise DomainError(
                    f"variance {v} exceeds max_abs_deviation**2 = {dev * dev}"
                )
            variances.append(float(v))
        if not variances:
            raise DomainError("at least one variance is required")
        object.__setattr__(self, "variances", tuple(variances))
        object.__setattr__(self, "max_abs_deviation", dev)

    @property
    def total_variance(self) -> float:
        return math.fsum(self.variances)

    @property
    def alpha_window(self) -> tuple[float, float]:
        """Open interval of admissible deviations ``alpha``."""
        return 0.0, 2.0 * self.total_variance / self.max_abs_deviation


@dataclass(frozen=True)
class TailBound:
    """A tail-bound formula value. ``raw`` may exceed 1; ``as_probability`` never does."""

    raw: float

    def __post_init__(self):
        if not self.raw >= 0.0:
            raise DomainError(f"tail bound must be non-negative, got {self.raw}")

    @property
    def as_probability(self) -> float:
        return min(self.raw, 1.0)


def hoeffding_bound(spec: BoundedVariableSpec, alpha: float) -> TailBound:
    """Bound on ``Pr[|M - E[M]| > alpha]`` for a sum of independent bounded variables.

    >>> hoeffding_bound(BoundedVariableSpec.uniform(100), 10.0).raw  # 2 e^-2
    0.2706705664732254
    """
    alpha = _positive_real("alpha", alpha)
    return TailBound(2.0 * math.exp(-2.0 * alpha * alpha / spec.sum_of_squares))


def hoeffding_bound_iid(spec: IidSpec, alpha: float) -> TailBound:
    """Bound on ``Pr[|M| > alpha]`` for iid mean-zero variables in ``[-D, D]``.

    Identical to :func:`hoeffding_bound` with every width set to ``2 * D``.
    """
    alpha = _positive_real("alpha", alpha)
    denom = 2.0 * spec.count * spec.half_width * spec.half_width
    return TailBound(2.0 * math.exp(-alpha * alpha / denom))


def variance_bound(spec: VarianceSpec, alpha: float) -> TailBound:
    """Variance-only tail bound, valid for ``alpha`` strictly inside ``spec.alpha_window``."""
    total = spec.total_variance
    if total == 0.0:
        raise DomainError("total variance is zero; the admissible window is empty")
    alpha = _positive_real("alpha", alpha)
    lo, hi = spec.alpha_window
    if not lo < alpha < hi:
        raise PreconditionError(
            f"alpha={alpha} outside the admissible window ({lo}, {hi})", lo, hi
        )
    return TailBound(2.0 * math.exp(-alpha * alpha / (4.0 * total)))


def markov_bound(expectation: float, alpha: float) -> TailBound:
    """``Pr[X > alpha] <= E[X] / alpha`` for non-negative ``X``."""
    if isinstance(expectation, bool) or not isinstance(expectation, numbers.Real):
        raise DomainError(f"expectation must be a real number, got {expectation!r}")
    if not (math.isfinite(expectation) and expectation >= 0):
        raise DomainError(f"expectation must be non-negative and finite, got {expectation}")
    alpha = _positive_real("alpha", alpha)
    return TailBound(float(expectation) / alpha)


def union_bound(success_probabilities: Sequence[float]) -> float:
    """Lower bound ``1 - sum(1 - p_i)`` on the probability that every event holds.

    Not clamped: a negative value means the bound is vacuous.
    """
    misses = []
    for p in success_probabilities:
        if isinstance(p, bool) or not isinstance(p, numbers.Real) or not 0.0 <= p <= 1.0:
            raise DomainError(f"probability must lie in [0, 1], got {p!r}")
        misses.append(1.0 - float(p))
    return 1.0 - math.fsum(misses)


def union_vs_independence(delta: float, t: int) -> tuple[float, float]:
    """Per-event failure budgets for ``t`` events under a total failure ``delta``.

    Returns ``(delta / t, ln(1 / (1 - delta)) / t)``: the budget the union
    bound allows and the one exact independence would allow. The first never
    exceeds the second, and for small ``delta`` they nearly coincide.
    """
    delta = _open_interval("delta", delta, 0.0, 1.0)
    t = _integer("t", t, 1)
    return delta / t, -math.log1p(-delta) / t


def cosh_exp_gap(x: float) -> float:
    """``exp(x**2/2) - cosh(x)``, which is never negative.

    Defined for ``|x| <= COSH_GAP_MAX_ABS_X`` (about 37.68); beyond that
    ``exp(x**2/2)`` overflows and :class:`RangeError` is raised.
    """
    x = float(x)
    if not math.isfinite(x) or abs(x) > COSH_GAP_MAX_ABS_X:
        raise RangeError(f"|x| must be <= {COSH_GAP_MAX_ABS_X:.4f}, got {x}")
    if abs(x) < 1.0:
        # Taylor series with coefficients 1/(2^n n!) - 1/(2n)! >= 0 avoids the
        # cancellation of the direct difference near zero.
        x2 = x * x
        total = 0.0
        power = 1.0
        for n in range(2, 30):
            power *= x2
            coef = 1.0 / (2.0**n * math.factorial(n)) - 1.0 / math.factorial(2 * n)
            term = coef * x2 * power
            total += term
            if term < 1e-18 * total:
                break
        return total
    try:
        return math.exp(0.5 * x * x) - math.cosh(x)
    except OverflowError as exc:
        raise RangeError(str(exc)) from exc


def _ceil_at_least_one(value):
    return max(1, math.ceil(value))


def plan_hoeffding_samples(epsilon: float, gamma: float) -> int:
    """Smallest ``k`` with ``2 exp(-2 eps^2 k) <= gamma``, i.e. ``ceil(ln(2/gamma) / (2 eps^2))``.

    This is the sample count making one fixed counting query
    ``gamma``-likely to be off by at least ``epsilon``.
    """
    epsilon = _open_interval("epsilon", epsilon, 0.0, 0.5)
    gamma = _open_interval("gamma", gamma, 0.0, 1.0)

    def ok(k):
        return 2.0 * math.exp(-2.0 * epsilon * epsilon * k) <= gamma

    k = _ceil_at_least_one(math.log(2.0 / gamma) / (2.0 * epsilon * epsilon))
    # guard the closed form against one-ulp disagreement with the predicate
    while not ok(k):
        k += 1
    while k > 1 and ok(k - 1):
        k -= 1
    return k


def plan_jl_dimension(n: int, epsilon: float, delta: float, *, reading: str = "proof") -> int:
    """Target dimension for a random projection preserving all pairwise
    distances of ``n`` points to within ``1 +/- epsilon`` with probability
    ``1 - delta``.

    ``reading="proof"`` (default) gives ``ceil(8/eps^2 * ln(n/delta))``, the
    form obtained by union-bounding over the pairs. ``reading="statement"``
    gives the more conservative ``ceil((8/eps)^2 * ln(n/delta))``.
    """
    n = _integer("n", n, 2)
    epsilon = _positive_real("epsilon", epsilon)
    if epsilon > 0.5:
        raise DomainError(f"epsilon must lie in (0, 0.5], got {epsilon}")
    delta = _open_interval("delta", delta, 0.0, 1.0)
    if reading == "proof":
        lead = 8.0 / (epsilon * epsilon)
    elif reading == "statement":
        lead = (8.0 / epsilon) ** 2
    else:
        raise DomainError(f"reading must be 'proof' or 'statement', got {reading!r}")
    return _ceil_at_least_one(lead * math.log(n / delta))


def plan_range_sample(n: int, d: int, epsilon: float, delta: float) -> int:
    """Sample size ``ceil(d/eps^2 * ln(2n/delta))`` making a uniform sample an
    ``epsilon``-sample of ``n`` points for every axis-aligned box query in
    ``d`` dimensions, with probability ``1 - delta``."""
    n = _integer("n", n, 1)
    d = _integer("d", d, 1)
    epsilon = _open_interval("epsilon", epsilon, 0.0, 0.5)
    delta = _open_interval("delta", delta, 0.0, 1.0)
    return _ceil_at_least_one(d / (epsilon * epsilon) * math.log(2.0 * n / delta))
