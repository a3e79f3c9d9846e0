import hypothesis.strategies as st
import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis.extra.numpy import arrays

settings.register_profile(
    "numerics", deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("numerics")


def complex_matrices(n: int, magnitude: float = 5.0):
    """Strategy: n x n complex matrices with bounded entries."""
    elems = st.floats(
        min_value=-magnitude, max_value=magnitude, allow_nan=False, allow_infinity=False
    )
    pair = st.tuples(
        arrays(np.float64, (n, n), elements=elems),
        arrays(np.float64, (n, n), elements=elems),
    )
    return pair.map(lambda ab: ab[0] + 1j * ab[1])


def hermitian_matrices(n: int, magnitude: float = 5.0):
    return complex_matrices(n, magnitude).map(lambda a: 0.5 * (a + a.conj().T))


def density_matrices(n: int):
    """Strategy: valid n x n density matrices (PSD, unit trace)."""

    def normalize(a: np.ndarray) -> np.ndarray:
        rho = a @ a.conj().T + 1e-3 * np.eye(n)
        return rho / np.trace(rho).real

    return complex_matrices(n, 2.0).map(normalize)
