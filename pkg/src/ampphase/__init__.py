"""Amplitude amplification with arbitrary phases.

Phase matching for the generalized Grover iterate, exact (probability one)
search schedules, rotation synthesis, a small statevector simulator and
numerical checks of the equal-angle error bounds.
"""
from .core import (
    AlgorithmModel,
    HDecomposition,
    PhasePair,
    Unitary2,
    build_q_matrix,
    decompose_equal_diagonal,
    diagonal_gap,
    is_matched,
    normalize_angle,
    phase_from_rotation_angle,
    rotation_angle_from_phase,
    rotation_matrix,
    solve_phi_good,
    solve_success_prob,
)
from .exact import (
    ExactSchedule,
    prepare_init_subspace,
    run_exact_registers,
    run_exact_subspace,
    schedule_exact,
)
from .rotation import RotationPlan, apply_rotation_plan, plan_rotation
from .simulator import SimConfig, apply_oracle_phase, apply_q, apply_zero_phase, restricted_matrix

__version__ = "0.1.0"

__all__ = [
    "AlgorithmModel",
    "ExactSchedule",
    "HDecomposition",
    "PhasePair",
    "RotationPlan",
    "SimConfig",
    "Unitary2",
    "apply_oracle_phase",
    "apply_q",
    "apply_rotation_plan",
    "apply_zero_phase",
    "build_q_matrix",
    "decompose_equal_diagonal",
    "diagonal_gap",
    "is_matched",
    "normalize_angle",
    "phase_from_rotation_angle",
    "plan_rotation",
    "prepare_init_subspace",
    "restricted_matrix",
    "rotation_angle_from_phase",
    "rotation_matrix",
    "run_exact_registers",
    "run_exact_subspace",
    "schedule_exact",
    "solve_phi_good",
    "solve_success_prob",
]
