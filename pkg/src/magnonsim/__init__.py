"""Steady-state Lindblad simulator for a dispersively coupled qubit-magnon system.

The package solves the rotating-frame master equation of a driven magnon
mode whose frequency is shifted per excitation by a driven qubit, and
derives the quantities that characterize magnon statistics: the
second-order coherence g2(0), magnon-number distributions, closed-form
resonance detunings, and thermal-noise thresholds.
"""

from .errors import (
    BracketError,
    ConvergenceError,
    DegenerateSteadyStateError,
    MagnonSimError,
    SweepFailureError,
    UndefinedCorrelationError,
    ValidationError,
)
from .fockspace import (
    HilbertLayout,
    add_scaled,
    annihilation,
    commutator,
    dagger,
    expectation,
    identity,
    kron,
    lift_magnon,
    lift_qubit,
    matmul,
    number,
    sigma_minus,
    sigma_plus,
    sigma_z,
    trace,
)
from .liouvillian import (
    LindbladTerm,
    SystemParams,
    build_dissipators,
    build_hamiltonian,
    liouvillian_matrix,
    master_rhs,
    unvec,
    vec,
)
from .observables import (
    ThermalSpec,
    g2_zero,
    magnon_distribution,
    mean_magnon,
    qubit_excitation,
    temperature_for_occupation,
    thermal_occupation,
)
from .resonance import (
    Resonance,
    ResonanceAnnotation,
    ResonanceSet,
    annotate_sweep,
    resonance_set,
    single_magnon_detunings,
    two_magnon_detunings,
)
from .steadystate import (
    SteadyStateResult,
    TruncationReport,
    evolve_to_steady,
    liouvillian_norm,
    solve_direct,
    solve_steady,
    summarize_state,
    truncation_converged,
)
from .sweep import (
    AxisSpec,
    SweepRecord,
    SweepResult,
    ThresholdResult,
    run_sweep,
    thermal_threshold,
    write_csv,
)
from .config import RunConfig, parse_config, serialize_config

__version__ = "0.1.0"

__all__ = [
    "AxisSpec",
    "BracketError",
    "ConvergenceError",
    "DegenerateSteadyStateError",
    "HilbertLayout",
    "LindbladTerm",
    "MagnonSimError",
    "Resonance",
    "ResonanceAnnotation",
    "ResonanceSet",
    "RunConfig",
    "SteadyStateResult",
    "SweepFailureError",
    "SweepRecord",
    "SweepResult",
    "SystemParams",
    "ThermalSpec",
    "ThresholdResult",
    "TruncationReport",
    "UndefinedCorrelationError",
    "ValidationError",
    "add_scaled",
    "annihilation",
    "annotate_sweep",
    "build_dissipators",
    "build_hamiltonian",
    "commutator",
    "dagger",
    "evolve_to_steady",
    "expectation",
    "g2_zero",
    "identity",
    "kron",
    "lift_magnon",
    "lift_qubit",
    "liouvillian_matrix",
    "liouvillian_norm",
    "magnon_distribution",
    "master_rhs",
    "matmul",
    "mean_magnon",
    "number",
    "parse_config",
    "qubit_excitation",
    "resonance_set",
    "run_sweep",
    "serialize_config",
    "sigma_minus",
    "sigma_plus",
    "sigma_z",
    "single_magnon_detunings",
    "solve_direct",
    "solve_steady",
    "summarize_state",
    "temperature_for_occupation",
    "thermal_occupation",
    "thermal_threshold",
    "trace",
    "truncation_converged",
    "two_magnon_detunings",
    "unvec",
    "vec",
    "write_csv",
]
