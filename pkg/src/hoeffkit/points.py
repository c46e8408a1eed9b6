"""Finite point sets in R^d, point-file I/O and synthetic data models."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DomainError

__all__ = ["PointSet", "as_pointset", "read_point_file", "generate_points", "DATA_MODELS"]

DATA_MODELS = ("gaussian", "uniform-box", "from-file")


@dataclass(frozen=True, eq=False)
class PointSet:
    """``n`` points in ``R^d`` stored as an ``(n, d)`` float array (read-only)."""

    points: np.ndarray

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 1:
            raise DomainError(f"expected a non-empty (n, d) array, got shape {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise DomainError("point coordinates must be finite")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return self.n

    def scaled(self, c: float) -> "PointSet":
        return PointSet(self.points * c)


def as_pointset(P) -> PointSet:
    return P if isinstance(P, PointSet) else PointSet(P)


def read_point_file(path) -> PointSet:
    """Read one point per line of whitespace-separated decimals; ``#`` starts a comment."""
    rows = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise DomainError(f"{path}:{lineno}: {exc}") from None
        if len(rows[-1]) != len(rows[0]):
            raise DomainError(
                f"{path}:{lineno}: expected {len(rows[0])} coordinates, got {len(rows[-1])}"
            )
    if not rows:
        raise DomainError(f"{path}: no points")
    return PointSet(np.array(rows))


def write_point_file(P, path) -> None:
    P = as_pointset(P)
    lines = [" ".join(repr(float(x)) for x in row) for row in P.points]
    Path(path).write_text("\n".join(lines) + "\n")


def generate_points(model: str, n: int, d: int, rng: np.random.Generator) -> PointSet:
    """Standard normal coordinates (``gaussian``) or uniform on ``[0, 1]^d`` (``uniform-box``)."""
    if model == "gaussian":
        return PointSet(rng.standard_normal((n, d)))
    if model == "uniform-box":
        return PointSet(rng.random((n, d)))
    raise DomainError(f"cannot generate points for data model {model!r}")
