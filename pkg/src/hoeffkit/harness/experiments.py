"""Seeded Monte Carlo experiments comparing empirical failure rates with the
theoretical bounds.

Trial ``t`` of an experiment with master seed ``s`` draws all of its
randomness from ``SeedSequence(s, spawn_key=(0, t))``; data shared by every
trial (a fixed point set) comes from ``SeedSequence(s, spawn_key=(1,))``.
Results therefore do not depend on how trials are split across workers.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from types import SimpleNamespace

import numpy as np

from ..bounds import (
    BoundedVariableSpec,
    hoeffding_bound,
    plan_hoeffding_samples,
    plan_jl_dimension,
    plan_range_sample,
)
from ..errors import ConfigError, DomainError
from ..points import PointSet, generate_points, read_point_file
from ..projection import axis_projection, distortion_report, make_projection
from ..rangespace import DEFAULT_BUDGET, Rectangle, max_discrepancy, sample_indices
from .config import ExperimentConfig

__all__ = [
    "AggregateResult",
    "trial_rng",
    "data_rng",
    "run_experiment",
    "run_tail_experiment",
    "run_jl_experiment",
    "run_epsample_experiment",
    "run_fixed_query_experiment",
    "parse_rect",
    "format_rect",
]

SLACK_STANDARD_ERRORS = 3.0


@dataclass(frozen=True)
class AggregateResult:
    """Failure count of an experiment next to the bound it is checked against.

    The verdict is ``empirical_failure_rate <= theoretical_bound + 3 * standard_error``.
    """

    kind: str
    trials: int
    failures: int
    theoretical_bound: float
    seed: int = 0
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not 0 <= self.failures <= self.trials:
            raise ValueError(f"failures={self.failures} outside [0, {self.trials}]")
        if not 0.0 <= self.theoretical_bound <= 1.0:
            raise ValueError(f"bound {self.theoretical_bound} is not a probability")

    @property
    def empirical_failure_rate(self) -> float:
        return self.failures / self.trials

    @property
    def standard_error(self) -> float:
        p = self.empirical_failure_rate
        return math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def verdict(self) -> bool:
        return verdict(self.empirical_failure_rate, self.theoretical_bound, self.standard_error)


def verdict(empirical: float, bound: float, std_err: float) -> bool:
    return empirical <= bound + SLACK_STANDARD_ERRORS * std_err


def trial_rng(master_seed: int, t: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(0, t)))


def data_rng(master_seed: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(1,)))


def parse_rect(text: str, d: int) -> Rectangle:
    """Parse ``"lo:hi,lo:hi,..."`` into a :class:`Rectangle` with ``d`` dimensions."""
    try:
        parts = [p.split(":") for p in text.split(",")]
        intervals = tuple((float(lo), float(hi)) for lo, hi in parts)
        rect = Rectangle(intervals)
    except (ValueError, DomainError) as exc:
        raise ConfigError("rect", f"cannot parse {text!r}: {exc}") from None
    if rect.d != d:
        raise ConfigError("rect", f"has {rect.d} dimensions, points have {d}")
    return rect


def format_rect(rect: Rectangle) -> str:
    return ",".join(f"{lo:.10g}:{hi:.10g}" for lo, hi in rect.intervals)


def _int_param(config, key, minimum=1):
    value = config.get(key)
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise ConfigError(key, f"must be an integer >= {minimum}, got {value!r}")
    return int(value)


def _float_param(config, key, lo=None, hi=None, lo_open=True, hi_open=True):
    value = config.get(key)
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigError(key, f"must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise ConfigError(key, "must be finite")
    if lo is not None and (value <= lo if lo_open else value < lo):
        raise ConfigError(key, f"must be {'>' if lo_open else '>='} {lo}, got {value}")
    if hi is not None and (value >= hi if hi_open else value > hi):
        raise ConfigError(key, f"must be {'<' if hi_open else '<='} {hi}, got {value}")
    return value


def _planned(config, key, planner, *args):
    if config.get("k") is not None:
        return _int_param(config, "k")
    try:
        return planner(*args)
    except DomainError as exc:
        raise ConfigError(key, str(exc)) from None


def _point_data(config: ExperimentConfig, n_key="n", d_key="d"):
    """Fixed point set for experiments that sample from one ``P``."""
    if config.data_model == "from-file":
        path = config.get("points_file")
        if not path:
            raise ConfigError("points_file", "required when data_model is from-file")
        return read_point_file(path)
    n = _int_param(config, n_key)
    d = _int_param(config, d_key)
    return generate_points(config.data_model, n, d, data_rng(config.master_seed))


# --- tail ------------------------------------------------------------------


def _prepare_tail(config):
    r = _int_param(config, "r")
    family = config.get("family")
    alpha = _float_param(config, "alpha", lo=0.0)
    if family == "bernoulli":
        p = _float_param(config, "p", 0.0, 1.0, lo_open=False, hi_open=False)
        spec = BoundedVariableSpec.uniform(r, 1.0)
        ctx = SimpleNamespace(family=family, r=r, p=p, mean=r * p, alpha=alpha)
        params = {"r": r, "family": family, "p": p, "alpha": alpha}
    elif family == "uniform":
        a = _float_param(config, "a")
        b = _float_param(config, "b")
        if not b > a:
            raise ConfigError("b", f"must exceed a={a}, got {b}")
        spec = BoundedVariableSpec.uniform(r, b - a)
        ctx = SimpleNamespace(family=family, r=r, a=a, b=b, mean=r * (a + b) / 2, alpha=alpha)
        params = {"r": r, "family": family, "a": a, "b": b, "alpha": alpha}
    else:
        raise ConfigError("family", f"must be bernoulli or uniform, got {family!r}")
    bound = hoeffding_bound(spec, alpha).as_probability
    return ctx, bound, params


def _tail_trial(ctx, rng):
    u = rng.random(ctx.r)
    if ctx.family == "bernoulli":
        total = float(np.count_nonzero(u < ctx.p))
    else:
        total = float(np.sum(ctx.a + (ctx.b - ctx.a) * u))
    return abs(total - ctx.mean) > ctx.alpha


# --- jl --------------------------------------------------------------------


def _prepare_jl(config):
    eps = _float_param(config, "eps", 0.0, 0.5, hi_open=False)
    delta = _float_param(config, "delta", 0.0, 1.0)
    fixed = None
    if config.data_model == "from-file":
        fixed = _point_data(config)
        n, d = fixed.n, fixed.d
    else:
        n = _int_param(config, "n", 2)
        d = _int_param(config, "d")
    k = _planned(config, "n", plan_jl_dimension, n, eps, delta)
    basis = config.get("basis")
    if basis not in ("random", "axes"):
        raise ConfigError("basis", f"must be random or axes, got {basis!r}")
    if basis == "axes" and k != d:
        raise ConfigError("basis", f"axes basis needs k == d, got k={k}, d={d}")
    ctx = SimpleNamespace(points=fixed, model=config.data_model, n=n, d=d, k=k, eps=eps,
                          axes=basis == "axes")
    params = {"n": n, "d": d, "k": k, "eps": eps, "delta": delta, "basis": basis,
              "data_model": config.data_model}
    return ctx, delta, params


def _jl_trial(ctx, rng):
    P = ctx.points if ctx.points is not None else generate_points(ctx.model, ctx.n, ctx.d, rng)
    basis = axis_projection(ctx.d) if ctx.axes else make_projection(ctx.d, ctx.k, rng)
    return not distortion_report(P, basis, ctx.eps).satisfied


# --- epsample --------------------------------------------------------------


def _prepare_epsample(config):
    eps = _float_param(config, "eps", 0.0, 0.5)
    delta = _float_param(config, "delta", 0.0, 1.0)
    P = _point_data(config)
    k = _planned(config, "eps", plan_range_sample, P.n, P.d, eps, delta)
    sample = config.get("sample")
    if sample not in ("random", "full"):
        raise ConfigError("sample", f"must be random or full, got {sample!r}")
    budget = _int_param(config, "budget") if config.get("budget") is not None else DEFAULT_BUDGET
    # fail fast: a sample of P spans no coordinates outside P
    max_discrepancy(P, P, budget=budget)
    ctx = SimpleNamespace(points=P, k=k, eps=eps, full=sample == "full", budget=budget)
    params = {"n": P.n, "d": P.d, "k": k, "eps": eps, "delta": delta, "sample": sample,
              "data_model": config.data_model}
    return ctx, delta, params


def _epsample_trial(ctx, rng):
    P = ctx.points
    S = P if ctx.full else PointSet(P.points[sample_indices(P.n, ctx.k, rng)])
    return max_discrepancy(P, S, budget=ctx.budget).max_discrepancy > ctx.eps


# --- fixed-query -----------------------------------------------------------


def _prepare_fixed_query(config):
    eps = _float_param(config, "eps", 0.0, 1.0)
    P = _point_data(config)
    if config.get("k") is not None:
        k = _int_param(config, "k")
        gamma = None
    else:
        gamma = _float_param(config, "gamma", 0.0, 1.0)
        k = _planned(config, "gamma", plan_hoeffding_samples, eps, gamma)
    rect_text = config.get("rect")
    if rect_text:
        rect = parse_rect(rect_text, P.d)
    else:
        # lower half of the bounding box along the first axis
        lo, hi = P.points.min(axis=0), P.points.max(axis=0)
        hi = hi.copy()
        hi[0] = (lo[0] + hi[0]) / 2
        rect = Rectangle.from_bounds(lo, hi)
    inside = rect.contains(P.points)
    ctx = SimpleNamespace(inside=inside, n=P.n, k=k, eps=eps, target=inside.mean())
    bound = hoeffding_bound(BoundedVariableSpec.uniform(k), eps * k).as_probability
    params = {"n": P.n, "d": P.d, "k": k, "eps": eps, "rect": format_rect(rect),
              "data_model": config.data_model}
    if gamma is not None:
        params["gamma"] = gamma
    return ctx, bound, params


def _fixed_query_trial(ctx, rng):
    frac = np.count_nonzero(ctx.inside[sample_indices(ctx.n, ctx.k, rng)]) / ctx.k
    return abs(frac - ctx.target) >= ctx.eps


# --- runner ----------------------------------------------------------------

_KINDS = {
    "tail": (_prepare_tail, _tail_trial),
    "jl": (_prepare_jl, _jl_trial),
    "epsample": (_prepare_epsample, _epsample_trial),
    "fixed-query": (_prepare_fixed_query, _fixed_query_trial),
}


def _count_failures(kind, ctx, master_seed, start, stop):
    trial = _KINDS[kind][1]
    return sum(bool(trial(ctx, trial_rng(master_seed, t))) for t in range(start, stop))


def run_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    """Run every trial of ``config`` and aggregate the failures.

    With ``workers > 1`` contiguous blocks of trials run in separate
    processes; the result is identical to the serial run.
    """
    prepare, _ = _KINDS[config.kind]
    ctx, bound, params = prepare(config)
    trials = config.trials
    if workers <= 1 or trials < 2:
        failures = _count_failures(config.kind, ctx, config.master_seed, 0, trials)
    else:
        blocks = min(trials, 4 * workers)
        edges = [trials * b // blocks for b in range(blocks + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_count_failures, config.kind, ctx, config.master_seed, lo, hi)
                for lo, hi in zip(edges[:-1], edges[1:])
            ]
            failures = sum(f.result() for f in futures)
    return AggregateResult(config.kind, trials, failures, bound, config.master_seed, params)


def _run_kind(kind, config, workers):
    if config.kind != kind:
        raise ConfigError("kind", f"expected {kind!r}, got {config.kind!r}")
    return run_experiment(config, workers)


def run_tail_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    """Sums of ``r`` independent Bernoulli or uniform variables against the Hoeffding bound."""
    return _run_kind("tail", config, workers)


def run_jl_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    """All-pairs distortion of fresh random projections; fails when any pair leaves ``1 +/- eps``."""
    return _run_kind("jl", config, workers)


def run_epsample_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    """Fresh samples of one fixed point set; fails when the exact discrepancy exceeds ``eps``."""
    return _run_kind("epsample", config, workers)


def run_fixed_query_experiment(config: ExperimentConfig, workers: int = 1) -> AggregateResult:
    """One fixed box query; fails when the sample fraction is off by ``eps`` or more."""
    return _run_kind("fixed-query", config, workers)
