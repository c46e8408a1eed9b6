"""Random linear projections built from independent random unit vectors, and
measurement of the pairwise distance distortion they introduce."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, DomainError
from .points import PointSet, as_pointset

__all__ = [
    "ProjectionBasis",
    "DistortionReport",
    "sample_unit_vector",
    "make_projection",
    "axis_projection",
    "project",
    "distortion_report",
    "squared_ratio_moments",
]

UNIT_NORM_TOL = 1e-9


def _check_dim(name, value):
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise DomainError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


@dataclass(frozen=True, eq=False)
class ProjectionBasis:
    """``k`` unit vectors in ``R^d``, one per row of ``vectors``.

    The projection is the unscaled map ``p -> vectors @ p``; the ``sqrt(d/k)``
    rescaling is applied only when distortion is measured.
    """

    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=float)
        if v.ndim != 2 or v.shape[0] < 1 or v.shape[1] < 1:
            raise DomainError(f"basis must be a non-empty k x d array, got shape {v.shape}")
        norms = np.linalg.norm(v, axis=1)
        if not np.all(np.abs(norms - 1.0) <= UNIT_NORM_TOL):
            raise DomainError("every basis vector must have unit norm")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def k(self) -> int:
        return self.vectors.shape[0]

    @property
    def d(self) -> int:
        return self.vectors.shape[1]


def sample_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a uniformly random point on the unit sphere in ``R^d``.

    Normalizes a vector of ``d`` standard normals, redrawing on the
    (numerically possible) all-zero draw.
    """
    d = _check_dim("d", d)
    while True:
        v = rng.standard_normal(d)
        norm = np.linalg.norm(v)
        if norm > 0.0:
            return v / norm


def make_projection(d: int, k: int, rng: np.random.Generator) -> ProjectionBasis:
    """Build ``k`` independent random unit vectors in ``R^d`` (not orthogonalized)."""
    d = _check_dim("d", d)
    k = _check_dim("k", k)
    return ProjectionBasis(np.stack([sample_unit_vector(d, rng) for _ in range(k)]))


def axis_projection(d: int) -> ProjectionBasis:
    """The standard orthonormal axes: an isometric projection with ``k = d``."""
    return ProjectionBasis(np.eye(_check_dim("d", d)))


def project(basis: ProjectionBasis, p) -> np.ndarray:
    """Coordinates ``<p, u_i>`` for each basis vector ``u_i``.

    ``p`` may be a single point of shape ``(d,)`` or a stack of shape ``(m, d)``.
    """
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (basis.d,) or p.ndim not in (1, 2):
        raise DomainError(f"point dimension {p.shape} does not match basis d={basis.d}")
    return p @ basis.vectors.T


@dataclass(frozen=True, eq=False)
class DistortionReport:
    """Per-pair distortion ratios ``sqrt(d/k) * |phi(p) - phi(q)| / |p - q|``.

    ``pairs`` holds ``(i, j)`` with ``i < j`` in lexicographic order; pairs of
    coincident points are left out and counted in ``skipped_pairs``.
    """

    pairs: np.ndarray
    ratios: np.ndarray
    epsilon: float
    skipped_pairs: int = 0
    min_ratio: float = field(init=False)
    max_ratio: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "min_ratio", float(self.ratios.min()))
        object.__setattr__(self, "max_ratio", float(self.ratios.max()))

    @property
    def satisfied(self) -> bool:
        """Every pair keeps its distance within a factor ``1 +/- epsilon``."""
        return self.min_ratio >= 1.0 - self.epsilon and self.max_ratio <= 1.0 + self.epsilon

    @property
    def squared_satisfied(self) -> bool:
        """The stricter squared-ratio form: ``1 - eps <= ratio**2 <= 1 + eps``."""
        eps = self.epsilon
        return self.min_ratio**2 >= 1.0 - eps and self.max_ratio**2 <= 1.0 + eps

    @property
    def pair_ratios(self) -> list[tuple[tuple[int, int], float]]:
        return [((int(i), int(j)), float(r)) for (i, j), r in zip(self.pairs, self.ratios)]


def distortion_report(P, basis: ProjectionBasis, epsilon: float) -> DistortionReport:
    """Measure how ``basis`` distorts every pairwise distance in ``P``."""
    P = as_pointset(P)
    if P.d != basis.d:
        raise DomainError(f"point set has d={P.d} but basis has d={basis.d}")
    if not 0.0 < epsilon <= 0.5:
        raise DomainError(f"epsilon must lie in (0, 0.5], got {epsilon}")

    X = P.points
    i, j = np.triu_indices(P.n, k=1)
    diff = X[i] - X[j]
    keep = np.any(diff != 0.0, axis=1)
    skipped = int(np.count_nonzero(~keep))
    if not np.any(keep):
        raise DegenerateInputError("no pair of distinct points to measure")
    i, j, diff = i[keep], j[keep], diff[keep]

    proj_diff = project(basis, diff)
    scale = math.sqrt(basis.d / basis.k)
    ratios = scale * np.linalg.norm(proj_diff, axis=1) / np.linalg.norm(diff, axis=1)
    return DistortionReport(
        pairs=np.column_stack([i, j]),
        ratios=ratios,
        epsilon=float(epsilon),
        skipped_pairs=skipped,
    )


def squared_ratio_moments(
    d: int,
    k: int,
    trials: int,
    rng: np.random.Generator,
    direction=None,
    chunk: int = 100_000,
) -> tuple[float, float]:
    """Monte Carlo mean and variance of one squared-distortion term.

    Each trial draws a fresh unit vector ``u`` and evaluates
    ``X = (d/k) * <u, w>**2 / |w|**2`` for a fixed direction ``w`` (random if
    not given). ``E[X] = 1/k`` exactly and ``Var[X] <= 1/k**2``.
    """
    d = _check_dim("d", d)
    k = _check_dim("k", k)
    trials = _check_dim("trials", trials)
    if direction is None:
        w = sample_unit_vector(d, rng)
    else:
        w = np.asarray(direction, dtype=float)
        if w.shape != (d,) or not np.any(w):
            raise DomainError("direction must be a non-zero vector of length d")
        w = w / np.linalg.norm(w)

    total = 0.0
    total_sq = 0.0
    done = 0
    while done < trials:
        m = min(chunk, trials - done)
        u = rng.standard_normal((m, d))
        norms = np.linalg.norm(u, axis=1)
        # zero rows have probability zero; redraw them to keep the sphere exact
        while np.any(norms == 0.0):
            bad = norms == 0.0
            u[bad] = rng.standard_normal((int(bad.sum()), d))
            norms = np.linalg.norm(u, axis=1)
        x = (d / k) * (u @ w / norms) ** 2
        total += float(x.sum())
        total_sq += float((x * x).sum())
        done += m

    mean = total / trials
    var = max(total_sq / trials - mean * mean, 0.0)
    if trials > 1:
        var *= trials / (trials - 1)
    return mean, var
