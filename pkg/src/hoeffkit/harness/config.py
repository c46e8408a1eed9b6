"""Experiment configuration: defaults, flat ``key=value`` files and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..errors import ConfigError
from ..points import DATA_MODELS

KINDS = ("tail", "jl", "epsample", "fixed-query")

# Defaults are choices of this tool: the theory fixes no trial counts or data models.
DEFAULTS: dict[str, dict[str, Any]] = {
    "tail": {"trials": 10_000, "r": 10, "family": "bernoulli", "p": 0.5, "a": 0.0, "b": 1.0,
             "alpha": 2.5},
    "jl": {"trials": 200, "data_model": "gaussian", "n": 50, "d": 200, "eps": 0.5,
           "delta": 0.1, "basis": "random"},
    "epsample": {"trials": 100, "data_model": "uniform-box", "n": 100, "d": 2, "eps": 0.2,
                 "delta": 0.1, "sample": "random"},
    "fixed-query": {"trials": 10_000, "data_model": "uniform-box", "n": 100, "d": 2,
                    "eps": 0.1, "gamma": 0.02},
}

INT_KEYS = {"trials", "r", "n", "d", "k", "seed", "workers", "budget"}
FLOAT_KEYS = {"p", "a", "b", "alpha", "eps", "delta", "gamma"}
STR_KEYS = {"kind", "family", "data_model", "basis", "sample", "points_file", "rect", "out"}


@dataclass(frozen=True)
class ExperimentConfig:
    """One seeded Monte Carlo experiment.

    ``params`` holds the kind-specific settings (``n``, ``d``, ``k``, ``eps``,
    ``delta``, ``alpha``, ...); anything missing falls back to
    :data:`DEFAULTS` for the kind.
    """

    kind: str
    trials: int = 0
    master_seed: int = 0
    data_model: str = ""
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError("kind", f"must be one of {KINDS}, got {self.kind!r}")
        defaults = DEFAULTS[self.kind]
        if not self.trials:
            object.__setattr__(self, "trials", defaults["trials"])
        if not self.data_model and "data_model" in defaults:
            object.__setattr__(self, "data_model", defaults["data_model"])
        if isinstance(self.trials, bool) or not isinstance(self.trials, int) or self.trials < 1:
            raise ConfigError("trials", f"must be a positive integer, got {self.trials!r}")
        seed = self.master_seed
        if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < 2**64:
            raise ConfigError("seed", f"must be an unsigned 64-bit integer, got {seed!r}")
        if self.data_model and self.data_model not in DATA_MODELS:
            raise ConfigError("data_model", f"must be one of {DATA_MODELS}")
        merged = {k: v for k, v in defaults.items() if k not in ("trials", "data_model")}
        merged.update(self.params)
        object.__setattr__(self, "params", merged)

    def get(self, key, default=None):
        return self.params.get(key, default)


def normalize_key(key: str) -> str:
    return key.strip().lstrip("-").replace("-", "_")


def coerce(key: str, value) -> Any:
    """Convert a textual config value to the type its key expects."""
    if not isinstance(value, str):
        return value
    value = value.strip()
    try:
        if key in INT_KEYS:
            return int(value, 0)
        if key in FLOAT_KEYS:
            return float(value)
    except ValueError:
        raise ConfigError(key, f"cannot parse {value!r}") from None
    if key in STR_KEYS:
        return value
    raise ConfigError(key, "unknown configuration key")


def read_config_file(path) -> dict[str, Any]:
    """Parse ``key = value`` lines; blank lines and ``#`` comments are ignored."""
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}", f"expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        key = normalize_key(key)
        out[key] = coerce(key, value)
    return out


def build_config(kind: str, settings: dict[str, Any]) -> ExperimentConfig:
    """Assemble an :class:`ExperimentConfig` from a flat settings mapping."""
    settings = dict(settings)
    settings.pop("kind", None)
    trials = settings.pop("trials", 0) or 0
    seed = settings.pop("seed", 0) or 0
    data_model = settings.pop("data_model", "") or ""
    for key in ("out", "workers", "config"):
        settings.pop(key, None)
    params = {k: v for k, v in settings.items() if v is not None}
    return ExperimentConfig(kind, trials, seed, data_model, params)
