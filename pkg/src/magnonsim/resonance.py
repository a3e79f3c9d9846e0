"""Closed-form single- and two-excitation resonance detunings.

The dressed level structure of the driven dispersive model puts the
single-magnon transitions at drive detunings

    delta_m = (s1 * A + s2 * B) / 2,   A = sqrt((delta_q + 2 chi)^2 + omega_s^2),
                                       B = sqrt(delta_q^2 + omega_s^2),

and the two-magnon transitions at

    delta_m = (s1 * C + s2 * B) / 4,   C = sqrt((delta_q + 4 chi)^2 + omega_s^2),

for the four sign pairs (s1, s2) in (+,-), (-,+), (+,+), (-,-).  These are
approximate predictors; :func:`annotate_sweep` quantifies (rather than
assumes) their agreement with the full steady-state solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ValidationError

#: Sign pairs, fixed enumeration order.
SIGN_PAIRS = ((1, -1), (-1, 1), (1, 1), (-1, -1))

_SINGLE_LABELS = (
    "|g,0> -> |g,1>",
    "|e,0> -> |e,1>",
    "|e,0> -> |g,1>",
    "|g,0> -> |e,1>",
)
_TWO_LABELS = (
    "|g,0> -> |g/e,2> (+)",
    "|e,0> -> |g/e,2> (-)",
    "|e,0> -> |g/e,2> (+)",
    "|g,0> -> |g/e,2> (-)",
)


@dataclass(frozen=True)
class Resonance:
    """One predicted resonance: transition label, order (1 or 2 excitations), detuning."""

    label: str
    order: int
    detuning: float


@dataclass(frozen=True)
class ResonanceSet:
    single_magnon: tuple[Resonance, ...]
    two_magnon: tuple[Resonance, ...]

    def all(self) -> tuple[Resonance, ...]:
        return self.single_magnon + self.two_magnon


def single_magnon_detunings(delta_q: float, chi_qm: float, omega_s: float) -> tuple[Resonance, ...]:
    """Four labeled single-magnon resonance detunings, in units of gamma."""
    a = math.hypot(delta_q + 2.0 * chi_qm, omega_s)
    b = math.hypot(delta_q, omega_s)
    return tuple(
        Resonance(label, 1, 0.5 * (s1 * a + s2 * b))
        for (s1, s2), label in zip(SIGN_PAIRS, _SINGLE_LABELS)
    )


def two_magnon_detunings(delta_q: float, chi_qm: float, omega_s: float) -> tuple[Resonance, ...]:
    """Four labeled two-magnon resonance detunings, in units of gamma."""
    c = math.hypot(delta_q + 4.0 * chi_qm, omega_s)
    b = math.hypot(delta_q, omega_s)
    return tuple(
        Resonance(label, 2, 0.25 * (s1 * c + s2 * b))
        for (s1, s2), label in zip(SIGN_PAIRS, _TWO_LABELS)
    )


def resonance_set(delta_q: float, chi_qm: float, omega_s: float) -> ResonanceSet:
    return ResonanceSet(
        single_magnon=single_magnon_detunings(delta_q, chi_qm, omega_s),
        two_magnon=two_magnon_detunings(delta_q, chi_qm, omega_s),
    )


@dataclass(frozen=True)
class ResonanceAnnotation:
    """A predicted resonance matched against a solved 1-D detuning sweep."""

    label: str
    order: int
    predicted: float
    in_range: bool
    nearest_index: int | None = None
    nearest_detuning: float | None = None
    extremum_kind: str | None = None  # "min", "max", or None if no extremum in window
    extremum_detuning: float | None = None
    distance: float | None = None


def _local_extrema(values) -> dict[int, str]:
    """Indices of strict interior local minima/maxima; plateaus are skipped."""
    kinds: dict[int, str] = {}
    for k in range(1, len(values) - 1):
        left, mid, right = values[k - 1], values[k], values[k + 1]
        if any(v is None or not math.isfinite(v) for v in (left, mid, right)):
            continue
        if mid < left and mid < right:
            kinds[k] = "min"
        elif mid > left and mid > right:
            kinds[k] = "max"
    return kinds


def annotate_sweep(sweep_result, resonances: ResonanceSet, window: int = 3) -> list[ResonanceAnnotation]:
    """Match each predicted resonance against the g2 curve of a detuning sweep.

    For every prediction inside the sweep range, records the nearest grid
    point, whether a local extremum of g2(0) exists within ``window`` grid
    points of it, and the detuning distance between prediction and
    extremum.  Predictions outside the range are recorded, not errors.
    The sweep must be one-dimensional over the drive detuning.
    """
    if len(sweep_result.axes) != 1 or sweep_result.axes[0].parameter != "delta_m":
        raise ValidationError("annotation requires a 1-D sweep over delta_m")
    grid = sweep_result.axes[0].values()
    g2 = [record.g2_zero for record in sweep_result.records]
    extrema = _local_extrema(g2)

    annotations = []
    for res in resonances.all():
        if not grid[0] <= res.detuning <= grid[-1]:
            annotations.append(
                ResonanceAnnotation(res.label, res.order, res.detuning, in_range=False)
            )
            continue
        nearest = int(min(range(len(grid)), key=lambda k: abs(grid[k] - res.detuning)))
        in_window = [
            k for k in extrema
            if abs(k - nearest) <= window
        ]
        if in_window:
            best = min(in_window, key=lambda k: abs(grid[k] - res.detuning))
            annotations.append(
                ResonanceAnnotation(
                    res.label,
                    res.order,
                    res.detuning,
                    in_range=True,
                    nearest_index=nearest,
                    nearest_detuning=float(grid[nearest]),
                    extremum_kind=extrema[best],
                    extremum_detuning=float(grid[best]),
                    distance=abs(float(grid[best]) - res.detuning),
                )
            )
        else:
            annotations.append(
                ResonanceAnnotation(
                    res.label,
                    res.order,
                    res.detuning,
                    in_range=True,
                    nearest_index=nearest,
                    nearest_detuning=float(grid[nearest]),
                )
            )
    return annotations
