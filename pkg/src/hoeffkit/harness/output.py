"""CSV serialization of experiment results."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import IO, Iterable, Union

from .experiments import AggregateResult, verdict

HEADER = ["kind", "trials", "failures", "empirical_rate", "bound", "std_err", "verdict",
          "seed", "params"]


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def format_params(params: dict) -> str:
    return ";".join(f"{key}={_fmt(params[key])}" for key in sorted(params))


def _row(r: AggregateResult) -> list[str]:
    return [
        r.kind,
        str(r.trials),
        str(r.failures),
        _fmt(float(r.empirical_failure_rate)),
        _fmt(float(r.theoretical_bound)),
        _fmt(float(r.standard_error)),
        "pass" if r.verdict else "fail",
        str(r.seed),
        format_params(r.params),
    ]


def emit_results(results: Iterable[AggregateResult], destination: Union[str, Path, IO[str]]) -> None:
    """Write ``results`` as CSV rows, in order, under the fixed header.

    ``destination`` is a path or an open text stream.
    """
    rows = [_row(r) for r in results]
    if hasattr(destination, "write"):
        _write(destination, rows)
    else:
        with open(destination, "w", newline="") as fh:
            _write(fh, rows)


def _write(fh, rows):
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(HEADER)
    writer.writerows(rows)


def results_to_csv(results: Iterable[AggregateResult]) -> str:
    buf = io.StringIO()
    emit_results(results, buf)
    return buf.getvalue()


def parse_results(text: str) -> list[dict]:
    """Read emitted CSV back, re-deriving each verdict from its numeric columns.

    Each row dict gains ``recomputed_verdict`` (``"pass"``/``"fail"``).
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != HEADER:
        raise ValueError(f"unexpected header {reader.fieldnames}")
    rows = []
    for row in reader:
        ok = verdict(float(row["empirical_rate"]), float(row["bound"]), float(row["std_err"]))
        row["recomputed_verdict"] = "pass" if ok else "fail"
        rows.append(row)
    return rows
