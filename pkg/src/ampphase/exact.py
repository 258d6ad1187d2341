"""Amplitude amplification that ends on a good state with probability one.

The iterate with matched phases rotates by ``vartheta`` per step (up to phases).
Starting from the adjusted angle ``theta_init = pi/2 - m*vartheta`` instead of
``theta``, ``m`` steps land exactly on the good axis.  The adjusted start is
prepared with a second and third register that park the surplus good
amplitude and are swapped back at the end.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    AlgorithmModel,
    PhasePair,
    _is_pi,
    build_q_matrix,
    decompose_equal_diagonal,
    normalize_angle,
    rotation_angle_from_phase,
    solve_phi_good,
)
from .errors import ContractViolation, DimensionLimitError, TrivialAnglesError
from .simulator import SimConfig, apply_algorithm, apply_q, subspace_basis

MAX_REGISTER_QUBITS = 10
CERTAINTY_TOL = 1e-9
# slack when the iterate count ratio lands on an integer
_CEIL_SLACK = 1e-9


@dataclass(frozen=True)
class ExactSchedule:
    phases: PhasePair
    vartheta: float
    m: int
    theta_init: float
    u: float
    v: float

    def as_dict(self) -> dict:
        return {
            "phi_zero": self.phases.phi_zero,
            "phi_good": self.phases.phi_good,
            "vartheta": self.vartheta,
            "m": self.m,
            "theta_init": self.theta_init,
            "u": self.u,
            "v": self.v,
        }


def matched_phases(phi_zero: float, model: AlgorithmModel) -> PhasePair:
    if _is_pi(phi_zero):
        return PhasePair.grover()
    return PhasePair(phi_zero, solve_phi_good(phi_zero, model))


def schedule_exact(phi_zero: float, model: AlgorithmModel) -> ExactSchedule:
    model.require_nondegenerate()
    phi_zero = normalize_angle(phi_zero)
    if abs(phi_zero) < 1e-12:
        raise TrivialAnglesError("phi_zero = 0 gives a zero rotation angle")
    phases = matched_phases(phi_zero, model)
    dec = decompose_equal_diagonal(build_q_matrix(model, phases))
    vartheta = rotation_angle_from_phase(phi_zero, model)
    m = max(math.ceil((math.pi / 2 - model.theta) / vartheta - _CEIL_SLACK), 0)
    theta_init = math.pi / 2 - m * vartheta
    return ExactSchedule(phases, vartheta, m, theta_init, dec.u, dec.v)


def prepare_init_subspace(schedule: ExactSchedule) -> np.ndarray:
    """Start vector (sin theta_init, e^{iu} cos theta_init) in the (good, bad) basis."""
    t = schedule.theta_init
    return np.array([math.sin(t), cmath.exp(1j * schedule.u) * math.cos(t)], dtype=complex)


def prepare_init_uncorrected(schedule: ExactSchedule) -> np.ndarray:
    """Start vector without the e^{iu} factor on the bad component."""
    t = schedule.theta_init
    return np.array([math.sin(t), math.cos(t)], dtype=complex)


def subspace_trajectory(schedule: ExactSchedule, model: AlgorithmModel, start=None) -> list[float]:
    """Good-state probability after each of 0..m iterates in the 2x2 model."""
    M = build_q_matrix(model, schedule.phases).to_array()
    state = prepare_init_subspace(schedule) if start is None else np.asarray(start, dtype=complex)
    probs = [abs(state[0]) ** 2]
    for _ in range(schedule.m):
        state = M @ state
        probs.append(abs(state[0]) ** 2)
    return probs


def run_exact_subspace(schedule: ExactSchedule, model: AlgorithmModel) -> float:
    return subspace_trajectory(schedule, model)[-1]


def run_uncorrected_subspace(schedule: ExactSchedule, model: AlgorithmModel) -> float:
    return subspace_trajectory(schedule, model, prepare_init_uncorrected(schedule))[-1]


@dataclass
class RegisterRun:
    """Result of the three-register simulation.

    ``branch_probs[k]`` is the good-state probability of register 1 within the
    register-3 = 0 branch after k iterates, renormalized by |alpha|^2 so it is
    directly comparable with :func:`subspace_trajectory`.
    """

    p_success: float
    purity: float
    norm_drift: float
    alpha: float
    beta: float
    branch_probs: list
    final_state: np.ndarray


def _check_register_config(config: SimConfig) -> None:
    if config.n > MAX_REGISTER_QUBITS:
        raise DimensionLimitError(
            f"register simulation supports n <= {MAX_REGISTER_QUBITS}, got {config.n}"
        )
    config.require_proper()


def simulate_registers(config: SimConfig, schedule: ExactSchedule) -> RegisterRun:
    """Run the certainty construction on the joint N x N x 2 statevector.

    Register 1 holds the search space, register 2 a parking copy of the good
    projection and register 3 a flag qubit.  The state is an array of shape
    (N, N, 2) indexed [reg1, reg2, reg3].
    """
    _check_register_config(config)
    N = config.dim
    model = config.model()
    good, bad = subspace_basis(config)
    mask = config.good_mask

    state = np.zeros((N, N, 2), dtype=complex)
    state[0, 0, 0] = 1.0
    state[:, 0, 0] = apply_algorithm(state[:, 0, 0], config)

    # |Psi>|0>|0>  ->  alpha |Psi_init>|0>|0> + beta |0>|Psi_1/sqrt(a)>|1>
    alpha = math.cos(model.theta) / math.cos(schedule.theta_init)
    if alpha > 1.0 + 1e-12:
        raise ContractViolation(f"alpha={alpha} exceeds 1; |theta_init| > theta")
    alpha = min(alpha, 1.0)
    beta = math.sqrt(max(1.0 - alpha * alpha, 0.0))
    init = prepare_init_subspace(schedule)
    psi_init = init[0] * good + init[1] * bad
    state = np.zeros((N, N, 2), dtype=complex)
    state[:, 0, 0] = alpha * psi_init
    state[0, :, 1] = beta * good

    def branch_prob(st):
        if alpha == 0.0:
            return float("nan")
        return float(np.sum(np.abs(st[mask, 0, 0]) ** 2)) / alpha**2

    flat = state.reshape(N, 2 * N)
    branch = [branch_prob(state)]
    drift = abs(np.linalg.norm(flat) - 1.0)
    # Q acts on register 1 only, so columns that start at zero stay zero
    active = np.flatnonzero(np.any(flat != 0.0, axis=0))
    for _ in range(schedule.m):
        flat[:, active] = apply_q(flat[:, active], config, schedule.phases)
        state = flat.reshape(N, N, 2)
        branch.append(branch_prob(state))
        drift = max(drift, abs(np.linalg.norm(flat) - 1.0))

    # swap registers 1 and 2 where register 3 is |1>
    state = state.copy()
    state[:, :, 1] = state[:, :, 1].T.copy()
    flat = state.reshape(N, 2 * N)
    drift = max(drift, abs(np.linalg.norm(flat) - 1.0))

    p_success = float(np.sum(np.abs(flat[mask]) ** 2))
    sv = np.linalg.svd(flat, compute_uv=False)
    purity = float(np.sum(sv**4))
    return RegisterRun(p_success, purity, float(drift), alpha, beta, branch, state)


def run_exact_registers(config: SimConfig, schedule: ExactSchedule) -> float:
    return simulate_registers(config, schedule).p_success


def exact_report(phi_zero: float, model: AlgorithmModel, config: SimConfig | None = None) -> dict:
    schedule = schedule_exact(phi_zero, model)
    report = {
        "phi_zero": schedule.phases.phi_zero,
        "phi_good": schedule.phases.phi_good,
        "m": schedule.m,
        "theta_init": schedule.theta_init,
        "u": schedule.u,
        "v": schedule.v,
        "p_success_subspace": run_exact_subspace(schedule, model),
        "p_success_registers": None,
        "p_success_uncorrected": run_uncorrected_subspace(schedule, model),
    }
    if config is not None:
        report["p_success_registers"] = run_exact_registers(config, schedule)
    return report
