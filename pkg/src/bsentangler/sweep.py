"""Parameter sweeps over a scenario, producing flat run records.

A record is one dict per sweep point with a fixed column order. Input columns
always come first; output columns follow in :data:`OUTPUT_COLUMNS` order,
restricted to the requested outputs.
"""

from __future__ import annotations

import csv
import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .beamsplitter import weak_split
from .entanglement import concurrence_general, concurrence_inputs, concurrence_oracle
from .fock import DEFAULT_TRUNCATION, DomainError, TruncationConfig, fidelity
from .protocol import collapse_infidelity, run_analytic, run_exact
from .scenarios import ExampleSpec, build_config, expected_concurrence

__all__ = [
    "SCHEMA_VERSION",
    "INPUT_COLUMNS",
    "OUTPUT_COLUMNS",
    "DEFAULT_OUTPUTS",
    "SWEEP_PARAMETERS",
    "SweepSpec",
    "evaluate_point",
    "run_sweep",
    "columns_for",
    "write_csv",
    "read_csv",
]

SCHEMA_VERSION = "bsentangler.runrecord/1"

INPUT_COLUMNS = (
    "example", "sweep_parameter", "sweep_value", "n", "m", "alpha", "t_alpha",
    "r", "theta", "R", "phi", "gamma", "detector",
)
OUTPUT_COLUMNS = (
    "concurrence_closed_form", "concurrence_analytic", "concurrence_exact",
    "success_probability", "success_probability_over_R2", "infidelity",
    "collapse_infidelity",
)
DEFAULT_OUTPUTS = ("concurrence_analytic", "concurrence_exact", "success_probability", "infidelity")
SWEEP_PARAMETERS = ("R", "gamma", "alpha", "r", "n", "t_alpha")


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    start: float
    stop: float
    steps: int
    base: ExampleSpec
    R: float = 0.05
    phi: float = 0.0
    outputs: tuple[str, ...] = DEFAULT_OUTPUTS

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise DomainError(f"cannot sweep {self.parameter!r}; choose from {SWEEP_PARAMETERS}")
        if not self.start < self.stop:
            raise DomainError("sweep needs start < stop")
        if self.steps < 2:
            raise DomainError("sweep needs at least 2 steps")
        bad = [o for o in self.outputs if o not in OUTPUT_COLUMNS]
        if bad:
            raise DomainError(f"unknown outputs {bad}; choose from {OUTPUT_COLUMNS}")

    def values(self) -> list[float]:
        grid = np.linspace(self.start, self.stop, self.steps)
        if self.parameter == "n":
            return sorted({int(round(v)) for v in grid})
        return [float(v) for v in grid]


def columns_for(outputs: Iterable[str]) -> list[str]:
    wanted = set(outputs)
    if "success_probability" in wanted:
        wanted.add("success_probability_over_R2")
    return list(INPUT_COLUMNS) + [c for c in OUTPUT_COLUMNS if c in wanted]


def _point(spec: SweepSpec, value: float) -> tuple[ExampleSpec, float]:
    """Scenario and reflectivity for one sweep value."""
    e, R = spec.base, spec.R
    p = spec.parameter
    if p == "R":
        return e, value
    if p == "gamma":
        return dataclasses.replace(e, gamma=value), R
    if p == "alpha":
        return dataclasses.replace(e, alpha=value), R
    if p == "r":
        return dataclasses.replace(e, r=value), R
    if p == "n":
        return dataclasses.replace(e, n=int(value)), R
    # t_alpha: |T alpha| held at the sweep value
    T = math.sqrt(1.0 - R * R)
    return dataclasses.replace(e, alpha=value / T), R


def _safe(fn):
    try:
        return fn()
    except DomainError:
        return math.nan


def evaluate_point(e: ExampleSpec, R: float, phi: float, outputs: Sequence[str],
                   config: TruncationConfig = DEFAULT_TRUNCATION,
                   sweep_parameter: str = "", sweep_value: float | str = "") -> dict:
    """One run record for scenario ``e`` at reflectivity ``R``."""
    c = build_config(e, R, phi, config)
    T = c.bs.T
    row = {
        "example": e.id.value,
        "sweep_parameter": sweep_parameter,
        "sweep_value": sweep_value,
        "n": "" if e.n is None else int(e.n),
        "m": "" if e.m is None else int(e.m),
        "alpha": "" if e.alpha is None else _complex_str(e.alpha),
        "t_alpha": "" if e.alpha is None else T * abs(complex(e.alpha)),
        "r": "" if e.r is None else e.r,
        "theta": "" if e.r is None else e.theta,
        "R": R,
        "phi": phi,
        "gamma": e.gamma,
        "detector": e.detector.value,
    }
    wanted = set(columns_for(outputs))
    analytic = run_analytic(c) if wanted & {"infidelity", "concurrence_analytic"} else None
    exact = run_exact(c)
    heralded = exact.normalized_state is not None
    if "concurrence_closed_form" in wanted:
        cc = _safe(lambda: expected_concurrence(e, T))
        row["concurrence_closed_form"] = math.nan if cc is None else cc
    if "concurrence_analytic" in wanted:
        w1, w2 = weak_split(c.psi1, c.bs), weak_split(c.psi2, c.bs)
        row["concurrence_analytic"] = _safe(
            lambda: concurrence_general(concurrence_inputs(w1, w2, e.gamma, e.detector)))
    if "concurrence_exact" in wanted:
        row["concurrence_exact"] = concurrence_oracle(exact.normalized_state) if heralded else math.nan
    if "success_probability" in wanted:
        row["success_probability"] = exact.success_probability
        row["success_probability_over_R2"] = exact.success_probability / (R * R) if R > 0 else math.nan
    if "infidelity" in wanted:
        ok = heralded and analytic.normalized_state is not None
        row["infidelity"] = (1.0 - fidelity(exact.normalized_state, analytic.normalized_state)
                             if ok else math.nan)
    if "collapse_infidelity" in wanted:
        row["collapse_infidelity"] = _safe(lambda: collapse_infidelity(c)) if heralded else math.nan
    return {k: row[k] for k in columns_for(outputs)}


def _complex_str(z) -> str:
    z = complex(z)
    return _fmt(z.real) if z.imag == 0 else f"{_fmt(z.real)}{z.imag:+.17g}j"


def run_sweep(spec: SweepSpec, config: TruncationConfig = DEFAULT_TRUNCATION) -> list[dict]:
    """Evaluate every sweep point; rows are returned sorted by sweep value."""
    rows = []
    for v in spec.values():
        e, R = _point(spec, v)
        rows.append(evaluate_point(e, R, spec.phi, spec.outputs, config,
                                   sweep_parameter=spec.parameter, sweep_value=v))
    rows.sort(key=lambda r: r["sweep_value"])
    return rows


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v)) if math.isfinite(v) else "nan"
    return str(v)


def write_csv(rows: Sequence[dict], path: str | Path | None = None, stream=None) -> None:
    """Write rows with a ``#`` schema line and a header; columns from the first row."""
    if not rows:
        raise ValueError("no rows to write")
    cols = list(rows[0])
    if any(list(r) != cols for r in rows):
        raise ValueError("all rows must share the same column set")

    def emit(fh):
        fh.write(f"# schema: {SCHEMA_VERSION}\n")
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([_fmt(r[c]) for c in cols])

    if path is None:
        emit(stream)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            emit(fh)


def read_csv(path: str | Path) -> tuple[str, list[dict]]:
    """Return the schema tag and the rows (values left as strings)."""
    with open(path, encoding="utf-8", newline="") as fh:
        first = fh.readline()
        if not first.startswith("#"):
            raise ValueError(f"{path}: missing schema line")
        schema = first[1:].strip().removeprefix("schema:").strip()
        return schema, list(csv.DictReader(fh))
