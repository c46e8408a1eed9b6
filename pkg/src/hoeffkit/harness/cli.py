"""Command-line entry point: ``hoeffkit <command> [options]``.

Exit status is 0 when every verdict passes, 1 when an experiment fails its
bound and 2 on invalid input.
"""

from __future__ import annotations

import argparse
import csv
import sys

from .. import bounds
from ..errors import BudgetExceededError, ConfigError, DomainError, RangeError
from ..points import DATA_MODELS, read_point_file
from ..rangespace import DEFAULT_BUDGET, enumerate_canonical_subsets
from .config import DEFAULTS, build_config, read_config_file
from .experiments import run_experiment
from .output import emit_results

DEFAULT_NOTE = "(tool default; the theory prescribes no experimental protocol)"


def _floats(text, flag):
    if text is None:
        raise DomainError(f"{flag} is required")
    return [float(x) for x in text.split(",") if x.strip()]


def _spread(values, count):
    if count is not None and len(values) == 1:
        return values * count
    return values


def _cmd_bound(args):
    form = args.form
    if form == "hoeffding":
        widths = _spread(_floats(args.widths or "1", "--widths"), args.r)
        tb = bounds.hoeffding_bound(bounds.BoundedVariableSpec(tuple(widths)), args.alpha)
    elif form == "iid":
        tb = bounds.hoeffding_bound_iid(bounds.IidSpec(args.r, args.half_width), args.alpha)
    elif form == "variance":
        variances = _spread(_floats(args.variances, "--variances"), args.r)
        spec = bounds.VarianceSpec(tuple(variances), args.max_dev)
        tb = bounds.variance_bound(spec, args.alpha)
    elif form == "markov":
        tb = bounds.markov_bound(args.expectation, args.alpha)
    elif form == "union":
        value = bounds.union_bound(_floats(args.probs, "--probs"))
        print(f"{value:.10g}")
        return 0
    elif form == "union-vs-independence":
        union, indep = bounds.union_vs_independence(args.delta, args.t)
        print(f"per_event_union={union:.10g}")
        print(f"per_event_independent={indep:.10g}")
        return 0
    else:  # cosh-gap
        print(f"{bounds.cosh_exp_gap(args.x):.10g}")
        return 0
    print(f"raw={tb.raw:.10g}")
    print(f"probability={tb.as_probability:.10g}")
    return 0


def _cmd_plan(args):
    if args.which == "hoeffding":
        k = bounds.plan_hoeffding_samples(args.eps, args.gamma)
    elif args.which == "jl":
        k = bounds.plan_jl_dimension(args.n, args.eps, args.delta, reading=args.reading)
    else:
        k = bounds.plan_range_sample(args.n, args.d, args.eps, args.delta)
    print(k)
    return 0


_EXPERIMENT_KEYS = ("seed", "trials", "eps", "delta", "n", "d", "k", "out", "workers",
                    "data_model", "points_file", "r", "p", "family", "alpha", "a", "b",
                    "gamma", "rect", "basis", "sample", "budget")


def _cmd_experiment(args):
    settings = read_config_file(args.config) if args.config else {}
    for key in _EXPERIMENT_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    out = settings.get("out")
    workers = settings.get("workers") or 1
    config = build_config(args.command, settings)
    result = run_experiment(config, workers=workers)
    emit_results([result], out if out else sys.stdout)
    return 0 if result.verdict else 1


def _cmd_enumerate(args):
    P = read_point_file(args.points)
    subsets = enumerate_canonical_subsets(P, budget=args.budget)
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["size", "members", "defining"])
        for s in subsets:
            writer.writerow([len(s), " ".join(map(str, sorted(s.members))),
                             " ".join(map(str, s.defining_indices))])
    finally:
        if fh is not sys.stdout:
            fh.close()
    return 0


def _add_common(p, kind):
    d = DEFAULTS[kind]
    p.add_argument("--config", help="flat key=value file; command-line flags override it")
    p.add_argument("--seed", type=lambda s: int(s, 0), help="master seed, unsigned 64-bit (default 0)")
    p.add_argument("--trials", type=int, help=f"number of trials, default {d['trials']} {DEFAULT_NOTE}")
    p.add_argument("--workers", type=int, help="worker processes (results do not depend on it)")
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.add_argument("--k", type=int, help="override the planned sample size / target dimension")
    if kind != "tail":
        p.add_argument("--n", type=int, help=f"number of points, default {d['n']} {DEFAULT_NOTE}")
        p.add_argument("--d", type=int, help=f"dimension, default {d['d']} {DEFAULT_NOTE}")
        p.add_argument("--eps", type=float, help=f"accuracy epsilon, default {d['eps']}")
        p.add_argument("--data-model", dest="data_model", choices=DATA_MODELS,
                       help=f"point generator, default {d['data_model']} {DEFAULT_NOTE}")
        p.add_argument("--points-file", dest="points_file",
                       help="point file for --data-model from-file")
    if kind in ("jl", "epsample"):
        p.add_argument("--delta", type=float, help=f"failure probability, default {d['delta']}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoeffkit",
        description="Chernoff-Hoeffding bounds, sample-size planners and Monte Carlo checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="evaluate a tail bound or related inequality")
    p.add_argument("form", choices=["hoeffding", "iid", "variance", "markov", "union",
                                    "union-vs-independence", "cosh-gap"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--widths", help="comma-separated widths b_i - a_i (one value repeats --r times)")
    p.add_argument("--r", type=int, help="number of variables")
    p.add_argument("--half-width", dest="half_width", type=float)
    p.add_argument("--variances", help="comma-separated variances (one value repeats --r times)")
    p.add_argument("--max-dev", dest="max_dev", type=float, help="max |X_i - E[X_i]|")
    p.add_argument("--expectation", type=float)
    p.add_argument("--probs", help="comma-separated success probabilities")
    p.add_argument("--delta", type=float)
    p.add_argument("--t", type=int, help="number of events")
    p.add_argument("--x", type=float)
    p.set_defaults(func=_cmd_bound)

    p = sub.add_parser("plan", help="sample-size and target-dimension planners")
    p.add_argument("which", choices=["hoeffding", "jl", "range"])
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--gamma", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--reading", choices=["proof", "statement"], default="proof",
                   help="jl only: 8/eps^2 (proof, default) or (8/eps)^2 (statement)")
    p.set_defaults(func=_cmd_plan)

    p = sub.add_parser("tail", help="sums of bounded variables against the Hoeffding bound")
    _add_common(p, "tail")
    p.add_argument("--r", type=int, help="number of variables, default 10")
    p.add_argument("--family", choices=["bernoulli", "uniform"], help="default bernoulli")
    p.add_argument("--p", type=float, help="Bernoulli success probability, default 0.5")
    p.add_argument("--a", type=float, help="uniform lower end, default 0")
    p.add_argument("--b", type=float, help="uniform upper end, default 1")
    p.add_argument("--alpha", type=float, help="deviation threshold, default 2.5")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("jl", help="all-pairs distortion of random projections")
    _add_common(p, "jl")
    p.add_argument("--basis", choices=["random", "axes"],
                   help="axes = identity basis (needs k = d), for debugging")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("epsample", help="exact discrepancy of random samples over all boxes")
    _add_common(p, "epsample")
    p.add_argument("--sample", choices=["random", "full"],
                   help="full = use the whole point set as the sample, for debugging")
    p.add_argument("--budget", type=int, help=f"enumeration budget, default {DEFAULT_BUDGET}")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("fixed-query", help="one fixed box query against 2 exp(-2 eps^2 k)")
    _add_common(p, "fixed-query")
    p.add_argument("--gamma", type=float, help="target failure probability used to plan k, default 0.02")
    p.add_argument("--rect", help="query box as lo:hi,lo:hi,... (default: lower half along axis 0)")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("enumerate", help="list the subsets of a point file cut out by boxes")
    p.add_argument("points", help="point file: one point per line, whitespace-separated")
    p.add_argument("--out", help="CSV destination (default stdout)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.set_defaults(func=_cmd_enumerate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, ConfigError, BudgetExceededError, RangeError, OSError) as exc:
        print(f"hoeffkit {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
