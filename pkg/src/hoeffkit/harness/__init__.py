"""Seeded Monte Carlo experiments, CSV output and the command-line interface."""

from .config import DEFAULTS, KINDS, ExperimentConfig, build_config, read_config_file
from .experiments import (
    AggregateResult,
    run_epsample_experiment,
    run_experiment,
    run_fixed_query_experiment,
    run_jl_experiment,
    run_tail_experiment,
)
from .output import HEADER, emit_results, parse_results, results_to_csv
