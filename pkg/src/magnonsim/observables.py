"""Derived quantities of a solved state: magnon statistics and thermal occupations."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import constants

from . import fockspace as fs
from .errors import UndefinedCorrelationError, ValidationError

#: Populations more negative than this are an error, not solver noise.
NEGATIVITY_TOLERANCE = 1e-10

#: Mean occupations below this make g2(0) a 0/0 expression.
G2_POPULATION_FLOOR = 1e-12


@dataclass(frozen=True)
class ThermalSpec:
    """Physical operating point for converting temperature to occupations."""

    temperature_k: float
    omega_m_hz: float
    omega_q_hz: float

    def __post_init__(self):
        for name in ("temperature_k", "omega_m_hz", "omega_q_hz"):
            if not getattr(self, name) > 0.0:
                raise ValidationError(f"{name} must be strictly positive")

    def occupations(self) -> tuple[float, float]:
        """(m_th, n_th) Bose-Einstein occupations at this operating point."""
        return (
            thermal_occupation(self.omega_m_hz, self.temperature_k),
            thermal_occupation(self.omega_q_hz, self.temperature_k),
        )


def _check_state(rho: np.ndarray, layout: fs.HilbertLayout) -> np.ndarray:
    rho = fs._require_square(rho, "density matrix")
    if rho.shape[0] != layout.total_dim:
        raise ValidationError(
            f"state dimension {rho.shape[0]} does not match layout dimension {layout.total_dim}"
        )
    return rho


def mean_magnon(rho: np.ndarray, layout: fs.HilbertLayout) -> float:
    """<m'm>: mean magnon number."""
    rho = _check_state(rho, layout)
    m = fs.lift_magnon(fs.annihilation(layout.n_fock), layout)
    return float(np.trace(m.conj().T @ m @ rho).real)


def g2_zero(rho: np.ndarray, layout: fs.HilbertLayout) -> float:
    """Equal-time second-order coherence Tr(m'm'mm rho) / Tr(m'm rho)^2.

    Values below 1 mean sub-Poissonian (antibunched) magnon statistics,
    1 is Poissonian, above 1 is bunched.  Raises
    :class:`UndefinedCorrelationError` when the mean occupation is below
    ``G2_POPULATION_FLOOR`` and the ratio would be 0/0.
    """
    rho = _check_state(rho, layout)
    m = fs.lift_magnon(fs.annihilation(layout.n_fock), layout)
    md = m.conj().T
    population = float(np.trace(md @ m @ rho).real)
    if population < G2_POPULATION_FLOOR:
        raise UndefinedCorrelationError(
            f"g2(0) undefined: mean magnon number {population:.3e} below "
            f"{G2_POPULATION_FLOOR:.0e}"
        )
    pair = float(np.trace(md @ md @ m @ m @ rho).real)
    return pair / population**2


def magnon_distribution(rho: np.ndarray, layout: fs.HilbertLayout) -> np.ndarray:
    """P_n = sum_q <q,n| rho |q,n> for n = 0 .. n_fock - 1.

    Entries within ``NEGATIVITY_TOLERANCE`` below zero (solver noise) are
    clamped to zero; anything more negative raises.
    """
    rho = _check_state(rho, layout)
    diag = np.diag(rho).real
    p = diag[: layout.n_fock] + diag[layout.n_fock :]
    worst = p.min() if p.size else 0.0
    if worst < -NEGATIVITY_TOLERANCE:
        raise ValidationError(
            f"magnon distribution has entry {worst:.3e}, beyond the "
            f"{NEGATIVITY_TOLERANCE:.0e} clamping tolerance"
        )
    return np.clip(p, 0.0, None)


def qubit_excitation(rho: np.ndarray, layout: fs.HilbertLayout) -> float:
    """Population of the excited qubit level, sum_n <e,n| rho |e,n>."""
    rho = _check_state(rho, layout)
    return float(np.diag(rho).real[layout.n_fock :].sum())


def thermal_occupation(freq_hz: float, temperature_k: float) -> float:
    """Bose-Einstein occupation 1 / (exp(h f / kB T) - 1).

    ``freq_hz`` is an ordinary frequency (omega / 2 pi), so Planck's
    constant h (not hbar) multiplies it.  For arguments beyond the
    exp overflow range the occupation is exactly 0.
    """
    if not freq_hz > 0.0 or not temperature_k > 0.0:
        raise ValidationError("frequency and temperature must be strictly positive")
    x = constants.h * freq_hz / (constants.k * temperature_k)
    if x > 700.0:
        return 0.0
    return 1.0 / math.expm1(x)


def temperature_for_occupation(freq_hz: float, occupation: float) -> float:
    """Inverse of :func:`thermal_occupation`: temperature giving this occupation."""
    if not freq_hz > 0.0:
        raise ValidationError("frequency must be strictly positive")
    if not occupation > 0.0:
        raise ValidationError("occupation must be strictly positive to invert")
    return constants.h * freq_hz / (constants.k * math.log1p(1.0 / occupation))
