"""Chernoff-Hoeffding bounds, random projections and epsilon-samples, with
exact oracles and seeded Monte Carlo checks."""

from .bounds import (
    BoundedVariableSpec,
    IidSpec,
    TailBound,
    VarianceSpec,
    cosh_exp_gap,
    hoeffding_bound,
    hoeffding_bound_iid,
    markov_bound,
    plan_hoeffding_samples,
    plan_jl_dimension,
    plan_range_sample,
    union_bound,
    union_vs_independence,
    variance_bound,
)
from .errors import (
    BudgetExceededError,
    ConfigError,
    DegenerateInputError,
    DomainError,
    PreconditionError,
    RangeError,
)
from .points import PointSet, generate_points, read_point_file
from .projection import (
    DistortionReport,
    ProjectionBasis,
    axis_projection,
    distortion_report,
    make_projection,
    project,
    sample_unit_vector,
    squared_ratio_moments,
)
from .rangespace import (
    CanonicalSubset,
    DiscrepancyReport,
    Rectangle,
    canonicalize,
    count_query,
    enumerate_canonical_subsets,
    epsilon_sample_check,
    max_discrepancy,
    sample_subset,
)

__version__ = "0.1.0"
