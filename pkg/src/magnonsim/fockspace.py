"""Dense complex operator algebra on a qubit x truncated-boson Hilbert space.

All operators are plain ``numpy.ndarray`` matrices of dtype complex128.
The joint basis ordering is fixed once and for all: the state |q, n> with
qubit level q (0 = ground, 1 = excited) and boson number n maps to index
``q * n_fock + n``.  This convention is qubit-major and is never
configurable; ``lift_qubit`` / ``lift_magnon`` are the only sanctioned
ways to embed single-factor operators.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError


@dataclass(frozen=True)
class HilbertLayout:
    """Truncated joint space: qubit levels |g>, |e> times boson states |0>..|n_fock-1>."""

    n_fock: int

    def __post_init__(self):
        if not isinstance(self.n_fock, int) or self.n_fock < 1:
            raise ValidationError(f"n_fock must be a positive integer, got {self.n_fock!r}")

    @property
    def total_dim(self) -> int:
        return 2 * self.n_fock

    def basis_index(self, qubit: int, n: int) -> int:
        """Index of |qubit, n> under the fixed qubit-major ordering."""
        if qubit not in (0, 1):
            raise ValidationError(f"qubit level must be 0 or 1, got {qubit}")
        if not 0 <= n < self.n_fock:
            raise ValidationError(f"boson number {n} outside truncation 0..{self.n_fock - 1}")
        return qubit * self.n_fock + n

    def basis_state(self, qubit: int, n: int) -> np.ndarray:
        """Column vector |qubit, n>."""
        v = np.zeros(self.total_dim, dtype=complex)
        v[self.basis_index(qubit, n)] = 1.0
        return v

    def basis_projector(self, qubit: int, n: int) -> np.ndarray:
        """Density matrix |qubit, n><qubit, n|."""
        rho = np.zeros((self.total_dim, self.total_dim), dtype=complex)
        k = self.basis_index(qubit, n)
        rho[k, k] = 1.0
        return rho


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"{name} must be 2-dimensional, got shape {a.shape}")
    return a


def _require_square(a: np.ndarray, name: str = "matrix") -> np.ndarray:
    a = _as_matrix(a, name)
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {a.shape}")
    return a


def identity(dim: int) -> np.ndarray:
    if not isinstance(dim, (int, np.integer)) or dim < 1:
        raise ValidationError(f"identity dimension must be a positive integer, got {dim!r}")
    return np.eye(dim, dtype=complex)


def annihilation(n_fock: int) -> np.ndarray:
    """Boson lowering operator on the truncated space: a|n> = sqrt(n)|n-1>."""
    if not isinstance(n_fock, (int, np.integer)) or n_fock < 2:
        raise ValidationError(f"annihilation needs n_fock >= 2, got {n_fock!r}")
    a = np.zeros((n_fock, n_fock), dtype=complex)
    for n in range(1, n_fock):
        a[n - 1, n] = np.sqrt(n)
    return a


def number(n_fock: int) -> np.ndarray:
    """Boson number operator diag(0, 1, ..., n_fock - 1).

    Equals dagger(annihilation) @ annihilation; built directly so the
    integer diagonal is exact rather than sqrt(n)**2.
    """
    if not isinstance(n_fock, (int, np.integer)) or n_fock < 2:
        raise ValidationError(f"number operator needs n_fock >= 2, got {n_fock!r}")
    return np.diag(np.arange(n_fock, dtype=float)).astype(complex)


def sigma_minus() -> np.ndarray:
    """Qubit lowering operator |g><e| in the (|g>, |e>) basis."""
    s = np.zeros((2, 2), dtype=complex)
    s[0, 1] = 1.0
    return s


def sigma_plus() -> np.ndarray:
    """Qubit raising operator |e><g|."""
    return sigma_minus().conj().T


def sigma_z() -> np.ndarray:
    """|e><e| - |g><g| = diag(-1, +1) in the (|g>, |e>) basis."""
    return np.diag([-1.0 + 0j, 1.0 + 0j])


def kron(a, b) -> np.ndarray:
    """Kronecker product of two square matrices."""
    a = _require_square(a, "kron left factor")
    b = _require_square(b, "kron right factor")
    return np.kron(a, b)


def lift_qubit(op2, layout: HilbertLayout) -> np.ndarray:
    """Embed a 2x2 qubit operator into the joint space (qubit-major ordering)."""
    op2 = _require_square(op2, "qubit operator")
    if op2.shape != (2, 2):
        raise ValidationError(f"qubit operator must be 2x2, got {op2.shape}")
    return np.kron(op2, np.eye(layout.n_fock, dtype=complex))


def lift_magnon(op_n, layout: HilbertLayout) -> np.ndarray:
    """Embed an n_fock x n_fock boson operator into the joint space."""
    op_n = _require_square(op_n, "magnon operator")
    if op_n.shape != (layout.n_fock, layout.n_fock):
        raise ValidationError(
            f"magnon operator must be {layout.n_fock}x{layout.n_fock}, got {op_n.shape}"
        )
    return np.kron(np.eye(2, dtype=complex), op_n)


def dagger(a) -> np.ndarray:
    return _as_matrix(a).conj().T


def matmul(a, b) -> np.ndarray:
    a = _as_matrix(a, "left factor")
    b = _as_matrix(b, "right factor")
    if a.shape[1] != b.shape[0]:
        raise ValidationError(f"matmul shape mismatch: {a.shape} @ {b.shape}")
    return a @ b


def add_scaled(a, c: complex, b) -> np.ndarray:
    """a + c * b for conformable matrices."""
    a = _as_matrix(a, "left term")
    b = _as_matrix(b, "right term")
    if a.shape != b.shape:
        raise ValidationError(f"add_scaled shape mismatch: {a.shape} vs {b.shape}")
    return a + complex(c) * b


def commutator(a, b) -> np.ndarray:
    return matmul(a, b) - matmul(b, a)


def trace(a) -> complex:
    return complex(np.trace(_require_square(a)))


def expectation(op, rho) -> complex:
    """Tr(op @ rho)."""
    return complex(np.trace(matmul(op, rho)))
