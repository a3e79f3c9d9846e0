"""Parameter-grid steady-state sweeps with deterministic gather and CSV output."""

from __future__ import annotations

import io
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BracketError, MagnonSimError, SweepFailureError, ValidationError
from .liouvillian import SWEEPABLE_PARAMETERS, SystemParams
from .steadystate import SteadyStateResult, solve_steady

#: Records above this residual are rejected (fallback, then abort).
RECORD_RESIDUAL_LIMIT = 1e-6

MAX_GRID_POINTS = 1_000_000

CSV_COLUMNS_1D = (
    "axis1", "g2", "log10_g2", "p0", "p1", "p2", "p3", "p4",
    "mean_magnon", "qubit_excitation", "residual",
)
CSV_COLUMNS_2D = ("axis1", "axis2") + CSV_COLUMNS_1D[1:]


@dataclass(frozen=True)
class AxisSpec:
    """One linearly spaced sweep axis over a model parameter.

    ``points`` may be 1 as a degenerate single-value axis (the value is
    ``start``); otherwise ``start < stop`` is required.
    """

    parameter: str
    start: float
    stop: float
    points: int
    spacing: str = "linear"

    def __post_init__(self):
        if self.parameter not in SWEEPABLE_PARAMETERS:
            raise ValidationError(
                f"axis parameter {self.parameter!r} not in {SWEEPABLE_PARAMETERS}"
            )
        if self.spacing != "linear":
            raise ValidationError(f"only linear spacing is supported, got {self.spacing!r}")
        if not isinstance(self.points, int) or self.points < 1:
            raise ValidationError(f"points must be a positive integer, got {self.points!r}")
        if self.points >= 2 and not self.start < self.stop:
            raise ValidationError(
                f"axis start {self.start} must be below stop {self.stop}"
            )

    def values(self) -> np.ndarray:
        if self.points == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.points)


@dataclass(frozen=True)
class SweepRecord:
    """Flat summary of one solved grid point.

    ``g2_zero`` and ``log10_g2`` are ``None`` when g2(0) is undefined
    (zero magnon population); they render as empty CSV fields.
    """

    axis_values: tuple[float, ...]
    g2_zero: float | None
    log10_g2: float | None
    p_n: tuple[float, float, float, float, float]
    mean_magnon: float
    qubit_excitation: float
    residual_norm: float


@dataclass(frozen=True)
class SweepResult:
    base: SystemParams
    axes: tuple[AxisSpec, ...]
    records: tuple[SweepRecord, ...]

    def record(self, *indices: int) -> SweepRecord:
        """Record at the given per-axis indices (row-major over axis1, axis2)."""
        if len(indices) != len(self.axes):
            raise ValidationError(f"expected {len(self.axes)} indices, got {len(indices)}")
        flat = 0
        for axis, k in zip(self.axes, indices):
            if not 0 <= k < axis.points:
                raise ValidationError(f"index {k} out of range for axis with {axis.points} points")
            flat = flat * axis.points + k
        return self.records[flat]


def _record_from_result(result: SteadyStateResult, axis_values: tuple[float, ...]) -> SweepRecord:
    g2 = result.g2_zero
    log10_g2 = math.log10(g2) if g2 is not None and g2 > 0.0 else None
    padded = list(result.p_n[:5]) + [0.0] * max(0, 5 - len(result.p_n))
    return SweepRecord(
        axis_values=axis_values,
        g2_zero=g2,
        log10_g2=log10_g2,
        p_n=tuple(float(p) for p in padded[:5]),
        mean_magnon=float(result.mean_magnon),
        qubit_excitation=float(result.qubit_excitation),
        residual_norm=float(result.residual_norm),
    )


def _acceptable(result: SteadyStateResult) -> bool:
    return result.residual_norm <= RECORD_RESIDUAL_LIMIT and not result.physicality_violations()


def _solve_grid_point(task: tuple[SystemParams, tuple[str, ...], tuple[float, ...]]) -> SweepRecord:
    """Worker: solve one grid point; direct route first, evolution fallback."""
    base, names, values = task
    params = base.replace(**dict(zip(names, values)))
    result = None
    try:
        candidate = solve_steady(params, method="direct")
        if _acceptable(candidate):
            result = candidate
    except MagnonSimError:
        pass
    if result is None:
        try:
            candidate = solve_steady(params, method="evolve")
        except MagnonSimError as exc:
            raise SweepFailureError(
                f"grid point {dict(zip(names, values))} failed both solvers: {exc}", values
            ) from exc
        if not _acceptable(candidate):
            raise SweepFailureError(
                f"grid point {dict(zip(names, values))} failed both solvers "
                f"(fallback residual {candidate.residual_norm:.3e})",
                values,
            )
        result = candidate
    return _record_from_result(result, values)


def run_sweep(base: SystemParams, axes, workers: int = 1) -> SweepResult:
    """Solve the steady state over a 1-D or 2-D linear grid.

    Grid points are independent tasks; results are gathered by grid index,
    so the output ordering (row-major over axis1, axis2) does not depend on
    the worker count.  Any point that fails the direct solve is re-solved
    with the time-evolution oracle; a point failing both aborts the sweep
    with its coordinates.
    """
    axes = tuple(axes)
    if not 1 <= len(axes) <= 2:
        raise ValidationError(f"sweeps support 1 or 2 axes, got {len(axes)}")
    for axis in axes:
        if not isinstance(axis, AxisSpec):
            raise ValidationError("axes must be AxisSpec instances")
    total = math.prod(axis.points for axis in axes)
    if total > MAX_GRID_POINTS:
        raise ValidationError(f"grid of {total} points exceeds limit {MAX_GRID_POINTS}")
    if workers < 1:
        raise ValidationError(f"workers must be >= 1, got {workers}")

    names = tuple(axis.parameter for axis in axes)
    grids = [axis.values() for axis in axes]
    tasks = []
    if len(axes) == 1:
        for v1 in grids[0]:
            tasks.append((base, names, (float(v1),)))
    else:
        for v1 in grids[0]:
            for v2 in grids[1]:
                tasks.append((base, names, (float(v1), float(v2))))

    if workers == 1:
        records = [_solve_grid_point(task) for task in tasks]
    else:
        chunk = max(1, len(tasks) // (workers * 8))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_solve_grid_point, tasks, chunksize=chunk))
    return SweepResult(base=base, axes=axes, records=tuple(records))


@dataclass(frozen=True)
class ThresholdResult:
    """Bisection outcome for the g2(0) = 1 crossing along a noise channel."""

    channel: str
    crossing: float
    iterations: int
    g2_at_zero: float
    g2_at_hi: float
    evaluations: tuple[tuple[float, float], ...]


def thermal_threshold(
    base: SystemParams,
    which: str,
    hi: float,
    rel_tol: float = 1e-3,
    max_iterations: int = 40,
) -> ThresholdResult:
    """Bisect the thermal occupation at which g2(0) crosses 1.

    Requires g2(0) < 1 at occupation 0 and > 1 at occupation ``hi`` for the
    chosen channel ("m_th" or "n_th"); a violated bracket raises
    :class:`BracketError` stating both endpoint values.
    """
    if which not in ("m_th", "n_th"):
        raise ValidationError(f"noise channel must be 'm_th' or 'n_th', got {which!r}")
    if not hi > 0.0:
        raise ValidationError(f"bracket top must be positive, got {hi}")

    evaluations: list[tuple[float, float]] = []

    def g2_at(occupation: float) -> float:
        result = solve_steady(base.replace(**{which: occupation}))
        if result.g2_zero is None:
            raise ValidationError(
                f"g2(0) undefined at {which} = {occupation}; threshold needs a driven mode"
            )
        evaluations.append((occupation, result.g2_zero))
        return result.g2_zero

    g2_lo = g2_at(0.0)
    g2_hi = g2_at(hi)
    if not (g2_lo < 1.0 < g2_hi):
        raise BracketError(
            f"no g2(0) = 1 bracket on [0, {hi}]: g2(0) = {g2_lo:.6g} at {which} = 0 "
            f"and g2(0) = {g2_hi:.6g} at {which} = {hi}"
        )

    lo, top = 0.0, hi
    iterations = 0
    while iterations < max_iterations:
        mid = 0.5 * (lo + top)
        if (top - lo) <= rel_tol * mid:
            break
        iterations += 1
        if g2_at(mid) < 1.0:
            lo = mid
        else:
            top = mid
    return ThresholdResult(
        channel=which,
        crossing=0.5 * (lo + top),
        iterations=iterations,
        g2_at_zero=g2_lo,
        g2_at_hi=g2_hi,
        evaluations=tuple(evaluations),
    )


def _format_value(value: float | None) -> str:
    """Shortest round-trip decimal; empty field for the undefined sentinel."""
    if value is None:
        return ""
    return repr(float(value))


def write_csv(result: SweepResult, destination) -> None:
    """Write a sweep as CSV: fixed column order, LF line endings.

    ``destination`` may be a path or a writable text stream.  I/O failures
    propagate verbatim.
    """
    header = CSV_COLUMNS_1D if len(result.axes) == 1 else CSV_COLUMNS_2D
    lines = [",".join(header)]
    for record in result.records:
        fields = [_format_value(v) for v in record.axis_values]
        fields.append(_format_value(record.g2_zero))
        fields.append(_format_value(record.log10_g2))
        fields.extend(_format_value(p) for p in record.p_n)
        fields.append(_format_value(record.mean_magnon))
        fields.append(_format_value(record.qubit_excitation))
        fields.append(_format_value(record.residual_norm))
        lines.append(",".join(fields))
    text = "\n".join(lines) + "\n"
    if isinstance(destination, (str, os.PathLike)):
        with open(destination, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    elif isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
        destination.write(text)
    else:
        raise ValidationError(f"cannot write CSV to {type(destination).__name__}")
