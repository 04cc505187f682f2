"""Relative-entropy entanglement witness and quantum work statistics.

Matrices are numpy complex arrays of size 2^n; site 1 is the most
significant qubit.
"""

from ._core import (
    NumericalError,
    build_css,
    build_sigma_prime_7,
    build_w_state,
    build_xxz,
    css_thermal_params_3,
    effective_hamiltonian,
    exact_evolution,
    jarzynski_average,
    log_partition,
    relative_entropy,
    relative_entropy_via_work,
    sample_tpm,
    sigma_prime_thermal_params_7,
    sweep,
    tasaki_average,
    thermal_relative_entropy,
    thermal_state,
    transition_matrix,
    trotter_evolution,
    witness_evaluate,
    witness_thermal,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
