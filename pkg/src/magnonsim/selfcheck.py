"""Built-in invariant suite backing the CLI ``check`` mode.

Each check is a named callable returning an error string (empty on
success).  The suite exercises the operator algebra, the two generator
construction routes, both steady-state solvers, and the closed-form
resonance formulas on deterministic seeded inputs.
"""

from __future__ import annotations

import numpy as np

from . import fockspace as fs
from . import resonance as rn
from .liouvillian import (
    SystemParams,
    build_dissipators,
    build_hamiltonian,
    liouvillian_matrix,
    master_rhs,
    vec,
)
from .steadystate import evolve_to_steady, solve_steady


def _rand_complex(rng, n: int) -> np.ndarray:
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


def _rand_hermitian(rng, n: int) -> np.ndarray:
    a = _rand_complex(rng, n)
    return 0.5 * (a + a.conj().T)


def check_ladder_truncation() -> str:
    for n_fock in (2, 4, 6, 9):
        a = fs.annihilation(n_fock)
        comm = fs.commutator(a, a.conj().T)
        expected = np.eye(n_fock, dtype=complex)
        expected[-1, -1] = 1.0 - n_fock
        if np.abs(comm - expected).max() > 1e-12:
            return f"ladder commutator wrong at n_fock={n_fock}"
    return ""


def check_lift_factors_commute() -> str:
    rng = np.random.default_rng(11)
    layout = fs.HilbertLayout(5)
    for _ in range(20):
        q = fs.lift_qubit(_rand_complex(rng, 2), layout)
        m = fs.lift_magnon(_rand_complex(rng, 5), layout)
        if np.abs(fs.commutator(q, m)).max() > 1e-12:
            return "lifted qubit and magnon operators do not commute"
    return ""


def check_dagger_antihomomorphism() -> str:
    rng = np.random.default_rng(12)
    for _ in range(20):
        a, b = _rand_complex(rng, 6), _rand_complex(rng, 6)
        lhs = fs.dagger(fs.matmul(a, b))
        rhs = fs.matmul(fs.dagger(b), fs.dagger(a))
        if np.abs(lhs - rhs).max() > 1e-12:
            return "dagger(AB) != dagger(B) dagger(A)"
    return ""


def check_kron_associativity() -> str:
    rng = np.random.default_rng(13)
    for _ in range(10):
        a, b, c = (_rand_complex(rng, k) for k in (2, 3, 2))
        lhs = fs.kron(fs.kron(a, b), c)
        rhs = fs.kron(a, fs.kron(b, c))
        if np.abs(lhs - rhs).max() > 1e-12:
            return "kron is not associative"
    return ""


def check_dual_generator_routes() -> str:
    params = SystemParams()
    h = build_hamiltonian(params)
    terms = build_dissipators(params)
    gen = liouvillian_matrix(h, terms)
    d = h.shape[0]
    rng = np.random.default_rng(14)
    for _ in range(100):
        rho = _rand_hermitian(rng, d)
        via_super = (gen @ vec(rho)).reshape((d, d), order="F")
        direct = master_rhs(h, terms, rho)
        if np.abs(via_super - direct).max() > 1e-10:
            return "superoperator and matrix-form right-hand sides disagree"
    return ""


def check_trace_preservation() -> str:
    params = SystemParams()
    gen = liouvillian_matrix(build_hamiltonian(params), build_dissipators(params))
    d = params.layout.total_dim
    left = vec(np.eye(d, dtype=complex)).conj() @ gen
    if np.abs(left).max() > 1e-10:
        return "vec(I)' L is not the zero row"
    return ""


def check_unitary_generator_antihermitian() -> str:
    params = SystemParams()
    h = build_hamiltonian(params)
    terms = [t.__class__(0.0, t.jump, t.label) for t in build_dissipators(params)]
    gen = liouvillian_matrix(h, terms)
    if np.abs(gen + gen.conj().T).max() > 1e-10:
        return "dissipation-free generator is not anti-Hermitian"
    return ""


def check_spectrum_left_half_plane() -> str:
    params = SystemParams()
    gen = liouvillian_matrix(build_hamiltonian(params), build_dissipators(params))
    eigs = np.linalg.eigvals(gen)
    worst = float(eigs.real.max())
    if worst > 1e-9:
        return f"generator eigenvalue with positive real part {worst:.3e}"
    if float(np.abs(eigs).min()) > 1e-10:
        return "generator kernel (steady state) not found in spectrum"
    return ""


def check_steady_state_physicality() -> str:
    result = solve_steady(SystemParams())
    problems = result.physicality_violations()
    return "; ".join(problems)


def check_solver_agreement() -> str:
    params = SystemParams()
    direct = solve_steady(params, method="direct")
    evolved = evolve_to_steady(build_hamiltonian(params), build_dissipators(params), t_final=80.0)
    diff = float(np.abs(direct.rho_ss - evolved).max())
    if diff > 1e-6:
        return f"direct and evolved steady states differ by {diff:.3e}"
    return ""


def check_thermal_detailed_balance() -> str:
    params = SystemParams(omega_s=0.0, omega_d=0.0, chi_qm=0.0, m_th=0.5)
    result = solve_steady(params)
    p = result.p_n
    ratio = params.m_th / (1.0 + params.m_th)
    for n in range(params.n_fock - 1):
        if abs(p[n + 1] / p[n] - ratio) > 1e-6:
            return f"detailed-balance ratio broken at n={n}"
    return ""


def check_vacuum_fixed_point() -> str:
    params = SystemParams(omega_s=0.0, omega_d=0.0)
    result = solve_steady(params)
    expected = params.layout.basis_projector(0, 0)
    diff = float(np.abs(result.rho_ss - expected).max())
    if diff > 1e-8:
        return f"undriven zero-temperature steady state deviates from |g,0> by {diff:.3e}"
    return ""


def check_resonance_symmetries() -> str:
    for delta_q, chi, omega_s in ((-20.0, 45.0, 15.0), (3.0, 7.0, 0.5)):
        for maker in (rn.single_magnon_detunings, rn.two_magnon_detunings):
            values = [r.detuning for r in maker(delta_q, chi, omega_s)]
            if abs(values[0] + values[1]) > 0.0 or abs(values[2] + values[3]) > 0.0:
                return "sign-flip pairing violated"
            scaled = [r.detuning for r in maker(2.0 * delta_q, 2.0 * chi, 2.0 * omega_s)]
            for v, s in zip(values, scaled):
                if abs(s - 2.0 * v) > 1e-12 * max(1.0, abs(s)):
                    return "resonance formulas are not degree-1 homogeneous"
    return ""


CHECKS = (
    ("ladder-truncation-commutator", check_ladder_truncation),
    ("lift-factors-commute", check_lift_factors_commute),
    ("dagger-antihomomorphism", check_dagger_antihomomorphism),
    ("kron-associativity", check_kron_associativity),
    ("dual-generator-routes", check_dual_generator_routes),
    ("trace-preservation", check_trace_preservation),
    ("unitary-generator-antihermitian", check_unitary_generator_antihermitian),
    ("spectrum-left-half-plane", check_spectrum_left_half_plane),
    ("steady-state-physicality", check_steady_state_physicality),
    ("solver-agreement", check_solver_agreement),
    ("thermal-detailed-balance", check_thermal_detailed_balance),
    ("vacuum-fixed-point", check_vacuum_fixed_point),
    ("resonance-symmetries", check_resonance_symmetries),
)


def run_all() -> list[tuple[str, bool, str]]:
    """Run every check; returns (name, passed, detail) triples."""
    results = []
    for name, func in CHECKS:
        try:
            detail = func()
        except Exception as exc:  # a crashed check is a failed check
            detail = f"{type(exc).__name__}: {exc}"
        results.append((name, detail == "", detail))
    return results
