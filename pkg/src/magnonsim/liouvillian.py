"""Rotating-frame Hamiltonian, dissipation channels, and the vectorized generator.

Model: a driven boson mode (the magnon) dispersively coupled to a driven
two-level system.  In the frame rotating at both drive frequencies the
Hamiltonian is time independent,

    H = delta_m * m'm + (delta_q / 2) * sz + chi_qm * m'm * sz
        + omega_s * (s+ + s-) + omega_d * (m' + m),

with every frequency expressed in units of the reference rate gamma.
Dissipation enters through five fixed Lindblad channels (qubit relaxation,
qubit excitation, qubit pure dephasing, magnon relaxation, magnon
excitation); the pure dephasing rate is derived as
kappa_phi = (kappa_1 + kappa_q) / 2 unless explicitly overridden.

Vectorization convention: column stacking, i.e. vec(rho) stacks the
columns of rho, so vec(A rho B) = (B^T kron A) vec(rho).  A row-stacking
mix-up silently transposes the generator, which is why the convention is
pinned here and asserted in the tests.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import fockspace as fs
from .errors import ValidationError

TWO_PI = 2.0 * np.pi

#: Axis-sweepable model parameters (field names of SystemParams).
SWEEPABLE_PARAMETERS = ("delta_m", "chi_qm", "m_th", "n_th", "omega_d", "delta_q")


@dataclass(frozen=True)
class SystemParams:
    """All model parameters, in units of the reference rate gamma.

    Detunings may take either sign; coupling and drive strengths are
    nonnegative; linewidths are strictly positive; thermal occupations are
    nonnegative.  ``kappa_phi`` is normally derived from kappa_1 and
    kappa_q but can be pinned explicitly to compare dephasing conventions.
    ``gamma_ref_hz`` is the physical value of gamma in rad/s and is used
    only when converting occupations to temperatures.
    """

    delta_m: float = 0.0
    delta_q: float = -20.0
    chi_qm: float = 20.0
    omega_s: float = 15.0
    omega_d: float = 0.1
    kappa_m: float = 1.4
    kappa_q: float = 1.2
    kappa_1: float = 1.0
    n_th: float = 0.0
    m_th: float = 0.0
    n_fock: int = 6
    gamma_ref_hz: float = TWO_PI * 1.0e6
    kappa_phi: float | None = None

    def __post_init__(self):
        for name in ("kappa_m", "kappa_q", "kappa_1", "gamma_ref_hz"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValidationError(f"{name} must be strictly positive, got {value}")
        for name in ("chi_qm", "omega_s", "omega_d", "n_th", "m_th"):
            value = getattr(self, name)
            if value < 0.0:
                raise ValidationError(f"{name} must be nonnegative, got {value}")
        if not isinstance(self.n_fock, int) or self.n_fock < 2:
            raise ValidationError(f"n_fock must be an integer >= 2, got {self.n_fock!r}")
        if self.kappa_phi is not None and self.kappa_phi < 0.0:
            raise ValidationError(f"kappa_phi override must be nonnegative, got {self.kappa_phi}")
        for name in ("delta_m", "delta_q"):
            if not np.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")

    @property
    def kappa_phi_effective(self) -> float:
        """Pure dephasing rate: the override if set, else (kappa_1 + kappa_q) / 2."""
        if self.kappa_phi is not None:
            return self.kappa_phi
        return 0.5 * (self.kappa_1 + self.kappa_q)

    @property
    def layout(self) -> fs.HilbertLayout:
        return fs.HilbertLayout(self.n_fock)

    def replace(self, **changes) -> "SystemParams":
        return dataclasses.replace(self, **changes)


@dataclass(frozen=True)
class LindbladTerm:
    """One dissipation channel: nonnegative rate paired with a jump operator."""

    rate: float
    jump: np.ndarray
    label: str = ""

    def __post_init__(self):
        if self.rate < 0.0:
            raise ValidationError(f"Lindblad rate must be nonnegative, got {self.rate}")
        jump = fs._require_square(self.jump, "jump operator")
        object.__setattr__(self, "jump", jump)


def build_hamiltonian(params: SystemParams) -> np.ndarray:
    """Rotating-frame Hamiltonian on the joint space, dimension 2 * n_fock.

    The constant dispersive shift of the bare qubit frequency is already
    absorbed into the definition of delta_q and must not be added again;
    only the excitation-number-dependent part chi_qm * m'm * sz appears.
    """
    layout = params.layout
    a = fs.annihilation(params.n_fock)
    num = fs.lift_magnon(fs.number(params.n_fock), layout)
    m = fs.lift_magnon(a, layout)
    sz = fs.lift_qubit(fs.sigma_z(), layout)
    sx = fs.lift_qubit(fs.sigma_plus() + fs.sigma_minus(), layout)
    h = (
        params.delta_m * num
        + 0.5 * params.delta_q * sz
        + params.chi_qm * (num @ sz)
        + params.omega_s * sx
        + params.omega_d * (m.conj().T + m)
    )
    return h


def build_dissipators(params: SystemParams, layout: fs.HilbertLayout | None = None) -> list[LindbladTerm]:
    """The five dissipation channels, in fixed order, lifted to the joint space.

    Zero-rate channels are kept in the list (not pruned) so diagnostics
    always show the full channel structure.
    """
    if layout is None:
        layout = params.layout
    elif layout.n_fock != params.n_fock:
        raise ValidationError(
            f"layout truncation {layout.n_fock} does not match params.n_fock {params.n_fock}"
        )
    a = fs.annihilation(params.n_fock)
    m = fs.lift_magnon(a, layout)
    kappa_phi = params.kappa_phi_effective
    return [
        LindbladTerm(params.kappa_1 * (1.0 + params.n_th), fs.lift_qubit(fs.sigma_minus(), layout),
                     "qubit relaxation"),
        LindbladTerm(params.kappa_1 * params.n_th, fs.lift_qubit(fs.sigma_plus(), layout),
                     "qubit excitation"),
        LindbladTerm(2.0 * kappa_phi, fs.lift_qubit(fs.sigma_z(), layout),
                     "qubit pure dephasing"),
        LindbladTerm(params.kappa_m * (1.0 + params.m_th), m,
                     "magnon relaxation"),
        LindbladTerm(params.kappa_m * params.m_th, m.conj().T,
                     "magnon excitation"),
    ]


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    rho = fs._require_square(rho, "density matrix")
    return rho.reshape(-1, order="F")


def unvec(v: np.ndarray, dim: int) -> np.ndarray:
    """Inverse of :func:`vec`."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (dim * dim,):
        raise ValidationError(f"vector of length {v.shape} cannot unvec to {dim}x{dim}")
    return v.reshape((dim, dim), order="F")


def _check_hermitian(h: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    h = fs._require_square(h, "Hamiltonian")
    dev = np.abs(h - h.conj().T).max()
    if dev > tol * max(1.0, np.abs(h).max()):
        raise ValidationError(f"Hamiltonian is not Hermitian (max deviation {dev:.3e})")
    return h


def liouvillian_matrix(h: np.ndarray, terms: list[LindbladTerm]) -> np.ndarray:
    """Generator L with vec(drho/dt) = L vec(rho), under column stacking.

    L = -i (I kron H - H^T kron I)
        + sum_j rate_j [ conj(L_j) kron L_j
                         - (I kron L_j'L_j) / 2 - ((L_j'L_j)^T kron I) / 2 ]
    """
    h = _check_hermitian(h)
    d = h.shape[0]
    eye = np.eye(d, dtype=complex)
    gen = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for term in terms:
        jump = term.jump
        if jump.shape != (d, d):
            raise ValidationError(
                f"jump operator shape {jump.shape} does not match Hamiltonian dimension {d}"
            )
        jdj = jump.conj().T @ jump
        gen += term.rate * (
            np.kron(jump.conj(), jump)
            - 0.5 * np.kron(eye, jdj)
            - 0.5 * np.kron(jdj.T, eye)
        )
    return gen


def master_rhs(h: np.ndarray, terms: list[LindbladTerm], rho: np.ndarray) -> np.ndarray:
    """drho/dt = -i[H, rho] + sum_j rate_j (L rho L' - {L'L, rho} / 2).

    Computed directly in matrix form, never through the vectorized
    generator; this is the independent path used to cross-check
    :func:`liouvillian_matrix` and to drive the time-evolution solver.
    """
    h = fs._require_square(h, "Hamiltonian")
    rho = fs._require_square(rho, "density matrix")
    d = h.shape[0]
    if rho.shape != (d, d):
        raise ValidationError(f"state shape {rho.shape} does not match Hamiltonian dimension {d}")
    out = -1j * (h @ rho - rho @ h)
    for term in terms:
        if term.rate == 0.0:
            continue
        jump = term.jump
        if jump.shape != (d, d):
            raise ValidationError(
                f"jump operator shape {jump.shape} does not match Hamiltonian dimension {d}"
            )
        jdj = jump.conj().T @ jump
        out += term.rate * (
            jump @ rho @ jump.conj().T - 0.5 * (jdj @ rho + rho @ jdj)
        )
    return out
