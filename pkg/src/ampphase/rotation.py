"""Rotations by an arbitrary angle built from powers of a phase-matched iterate."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .core import (
    DECOMPOSE_GAP_TOL,
    AlgorithmModel,
    PhasePair,
    build_q_matrix,
    decompose_equal_diagonal,
    diagonal_gap,
    phase_bad,
    phase_from_rotation_angle,
    rotation_matrix,
    solve_phi_good,
)
from .errors import MismatchedModelError, PreconditionError

MULTIPLE_TOL = 1e-12


@dataclass(frozen=True)
class RotationPlan:
    """How to realize ``rotation_matrix(target_x)`` with ``m`` iterates.

    The effective operator is ``e^{-imv} D(-u) M^m D(u)`` where ``D(u)`` is
    the conditional phase e^{iu} on the bad states.  ``deviation`` is the
    max-norm distance of that operator from the target rotation.
    """

    target_x: float
    m: int
    vartheta: float
    phases: PhasePair
    u: float
    v: float
    grover_shortcut: bool
    model: AlgorithmModel
    deviation: float = 0.0

    def effective_operator(self) -> np.ndarray:
        if self.m == 0:
            return np.eye(2, dtype=complex)
        M = build_q_matrix(self.model, self.phases).to_array()
        Mm = np.linalg.matrix_power(M, self.m)
        return cmath.exp(-1j * self.m * self.v) * (phase_bad(-self.u) @ Mm @ phase_bad(self.u))

    def as_dict(self) -> dict:
        return {
            "x": self.target_x,
            "a": self.model.a,
            "m": self.m,
            "vartheta": self.vartheta,
            "phi_zero": self.phases.phi_zero,
            "phi_good": self.phases.phi_good,
            "u": self.u,
            "v": self.v,
            "grover_shortcut": self.grover_shortcut,
            "deviation": self.deviation,
        }


def _reachable(vartheta: float, model: AlgorithmModel) -> bool:
    return abs(math.sin(vartheta)) <= math.sin(2.0 * model.theta) * (1.0 + MULTIPLE_TOL)


def plan_rotation(x: float, model: AlgorithmModel) -> RotationPlan:
    """Plan a rotation by ``x`` in [0, 2 pi) for known success probability."""
    model.require_nondegenerate()
    x = float(x)
    if not (0.0 <= x < 2.0 * math.pi):
        raise PreconditionError(f"rotation angle must lie in [0, 2 pi), got {x}")
    step = 2.0 * model.theta
    if x == 0.0:
        return RotationPlan(0.0, 0, 0.0, PhasePair(0.0, 0.0), 0.0, 0.0, False, model)

    ratio = x / step
    k = round(ratio)
    if k >= 1 and abs(ratio - k) <= MULTIPLE_TOL * max(1.0, ratio):
        plan = RotationPlan(x, int(k), step, PhasePair.grover(), 0.0, 0.0, True, model)
        return _with_deviation(plan)

    m = math.floor(ratio) + 1
    # for a > 1/2 the per-step angle must also satisfy |sin| <= sin(2 theta)
    while not _reachable(x / m, model):
        m += 1
    vartheta = x / m
    phi_zero = phase_from_rotation_angle(vartheta, model)
    if abs(phi_zero - math.pi) < MULTIPLE_TOL:
        phases = PhasePair.grover()
    else:
        phases = PhasePair(phi_zero, solve_phi_good(phi_zero, model))
    dec = decompose_equal_diagonal(build_q_matrix(model, phases))
    plan = RotationPlan(x, m, vartheta, phases, dec.u, dec.v, False, model)
    return _with_deviation(plan)


def _with_deviation(plan: RotationPlan) -> RotationPlan:
    dev = float(np.max(np.abs(plan.effective_operator() - rotation_matrix(plan.target_x))))
    return RotationPlan(**{**plan.__dict__, "deviation": dev})


def apply_rotation_plan(plan: RotationPlan, state) -> np.ndarray:
    """Apply the planned rotation to a (good, bad) state vector."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (2,):
        raise ValueError(f"expected a 2-component state, got shape {state.shape}")
    if plan.m == 0:
        return state.copy()
    M = build_q_matrix(plan.model, plan.phases)
    if not plan.grover_shortcut and diagonal_gap(M) >= DECOMPOSE_GAP_TOL:
        raise MismatchedModelError("plan phases are not matched to the plan's success probability")
    out = phase_bad(plan.u) @ state
    for _ in range(plan.m):
        out = M @ out
    out = phase_bad(-plan.u) @ out
    return cmath.exp(-1j * plan.m * plan.v) * out
