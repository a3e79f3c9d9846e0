import numpy as np
import pytest
from conftest import complex_matrices, density_matrices
from hypothesis import given

from magnonsim import fockspace as fs
from magnonsim.errors import ValidationError


def test_identity_examples():
    assert np.array_equal(fs.identity(2), np.eye(2))
    assert np.array_equal(fs.identity(1), np.array([[1.0 + 0j]]))
    assert fs.trace(fs.identity(6)) == 6.0


@pytest.mark.parametrize("bad", [0, -1, 2.5])
def test_identity_rejects_bad_dimension(bad):
    with pytest.raises(ValidationError):
        fs.identity(bad)


def test_annihilation_matrix_elements():
    a = fs.annihilation(3)
    expected = np.zeros((3, 3), dtype=complex)
    expected[0, 1] = 1.0
    expected[1, 2] = np.sqrt(2)
    assert np.array_equal(a, expected)


def test_number_operator_identity():
    a = fs.annihilation(3)
    assert np.allclose(fs.matmul(fs.dagger(a), a), np.diag([0.0, 1.0, 2.0]), atol=0)


def test_annihilation_lowers_single_quantum():
    a = fs.annihilation(2)
    assert np.array_equal(a @ np.array([0.0, 1.0]), np.array([1.0 + 0j, 0.0]))


@pytest.mark.parametrize("bad", [0, 1, -3])
def test_annihilation_rejects_trivial_ladder(bad):
    with pytest.raises(ValidationError):
        fs.annihilation(bad)


def test_pauli_algebra():
    sm, sp, sz = fs.sigma_minus(), fs.sigma_plus(), fs.sigma_z()
    assert np.array_equal(sm, np.array([[0, 1], [0, 0]], dtype=complex))
    assert np.array_equal(sp @ sm, np.diag([0.0 + 0j, 1.0]))
    assert np.array_equal(sz @ sz, np.eye(2))
    assert np.array_equal(fs.commutator(sp, sm), sz)


def test_kron_examples():
    assert np.array_equal(fs.kron(fs.identity(2), fs.identity(3)), np.eye(6))
    assert np.array_equal(
        np.diag(fs.kron(fs.sigma_z(), fs.identity(2))), np.array([-1, -1, 1, 1], dtype=complex)
    )


def test_kron_rejects_nonsquare():
    with pytest.raises(ValidationError):
        fs.kron(np.ones((2, 3)), np.eye(2))


@given(complex_matrices(2), complex_matrices(2))
def test_kron_trace_multiplicative(a, b):
    lhs = fs.trace(fs.kron(a, b))
    rhs = fs.trace(a) * fs.trace(b)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))


@given(complex_matrices(2), complex_matrices(3), complex_matrices(2))
def test_kron_associative(a, b, c):
    lhs = fs.kron(fs.kron(a, b), c)
    rhs = fs.kron(a, fs.kron(b, c))
    assert np.abs(lhs - rhs).max() <= 1e-12


def test_lift_examples():
    layout = fs.HilbertLayout(2)
    assert np.array_equal(
        np.diag(fs.lift_qubit(fs.sigma_z(), layout)), np.array([-1, -1, 1, 1], dtype=complex)
    )
    assert np.array_equal(
        np.diag(fs.lift_magnon(fs.number(2), layout)), np.array([0, 1, 0, 1], dtype=complex)
    )


def test_lift_rejects_wrong_shapes():
    layout = fs.HilbertLayout(3)
    with pytest.raises(ValidationError):
        fs.lift_qubit(np.eye(3), layout)
    with pytest.raises(ValidationError):
        fs.lift_magnon(np.eye(2), layout)


@given(complex_matrices(2), complex_matrices(4))
def test_lifted_factors_commute(q_op, m_op):
    layout = fs.HilbertLayout(4)
    lifted_q = fs.lift_qubit(q_op, layout)
    lifted_m = fs.lift_magnon(m_op, layout)
    assert np.abs(fs.commutator(lifted_q, lifted_m)).max() < 1e-12


@given(complex_matrices(5))
def test_dagger_involution(a):
    assert np.array_equal(fs.dagger(fs.dagger(a)), a)


@given(complex_matrices(4), complex_matrices(4))
def test_dagger_reverses_products(a, b):
    lhs = fs.dagger(fs.matmul(a, b))
    rhs = fs.matmul(fs.dagger(b), fs.dagger(a))
    assert np.abs(lhs - rhs).max() <= 1e-12


@given(density_matrices(4))
def test_expectation_of_identity_is_trace(rho):
    assert abs(fs.expectation(fs.identity(4), rho) - fs.trace(rho)) <= 1e-12


@given(complex_matrices(4), complex_matrices(4))
def test_trace_cyclic(a, b):
    lhs = fs.trace(fs.matmul(a, b))
    rhs = fs.trace(fs.matmul(b, a))
    scale = float((np.abs(a) @ np.abs(b)).trace().real)
    assert abs(lhs - rhs) <= 1e-12 * max(1.0, scale)


def test_matmul_and_add_scaled_reject_mismatch():
    with pytest.raises(ValidationError):
        fs.matmul(np.eye(2), np.eye(3))
    with pytest.raises(ValidationError):
        fs.add_scaled(np.eye(2), 1.0, np.eye(3))


def test_add_scaled_semantics():
    out = fs.add_scaled(np.eye(2), 2j, fs.sigma_minus())
    expected = np.eye(2, dtype=complex)
    expected[0, 1] = 2j
    assert np.array_equal(out, expected)


@pytest.mark.parametrize("n_fock", [2, 3, 6, 9])
def test_ladder_commutator_truncation_artifact(n_fock):
    a = fs.annihilation(n_fock)
    comm = fs.commutator(a, fs.dagger(a))
    expected = np.eye(n_fock, dtype=complex)
    expected[-1, -1] = 1.0 - n_fock  # truncation artifact, not 1
    # sqrt(n)*sqrt(n) rounds at the last ulp, hence the 1e-12 rather than exact
    assert np.abs(comm - expected).max() <= 1e-12
    assert comm[-1, -1].real == pytest.approx(1.0 - n_fock, abs=1e-12)


def test_basis_ordering_is_qubit_major():
    layout = fs.HilbertLayout(4)
    assert layout.total_dim == 8
    assert layout.basis_index(0, 0) == 0
    assert layout.basis_index(0, 3) == 3
    assert layout.basis_index(1, 0) == 4
    assert layout.basis_index(1, 2) == 6
    state = layout.basis_state(1, 2)
    assert state[6] == 1.0 and np.count_nonzero(state) == 1
    proj = layout.basis_projector(1, 2)
    assert proj[6, 6] == 1.0 and np.count_nonzero(proj) == 1
    # the lifted sigma_z diagonal pins the convention: ground block first
    sz = fs.lift_qubit(fs.sigma_z(), layout)
    assert np.array_equal(np.diag(sz), np.array([-1] * 4 + [1] * 4, dtype=complex))


def test_layout_validation():
    with pytest.raises(ValidationError):
        fs.HilbertLayout(0)
    layout = fs.HilbertLayout(3)
    with pytest.raises(ValidationError):
        layout.basis_index(2, 0)
    with pytest.raises(ValidationError):
        layout.basis_index(0, 3)
