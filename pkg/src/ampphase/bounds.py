"""Numerical checks of the error bounds for approximate (unmatched) phases.

Every checker evaluates its quantity exactly from amplitudes in the 2x2 model
and returns a :class:`BoundReport`.  ``status`` is one of

* ``satisfied`` / ``violated``: the inequality was evaluated and holds or not;
* ``vacuous``: it holds but its right-hand side carries no information
  (a probability bound >= 1, a lower bound < 0, an operator bound >= 2);
* ``not-applicable``: the check's precondition or proviso fails at this point.
"""
from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .core import AlgorithmModel, PhasePair, build_q_matrix, solve_phi_good
from .errors import PreconditionError
from .simulator import SimConfig, apply_algorithm, apply_q, basis_state

SATISFIED = "satisfied"
VIOLATED = "violated"
VACUOUS = "vacuous"
NOT_APPLICABLE = "not-applicable"

CHECKS = ("lemma1", "norm_chain", "theorem2", "theorem3")

DEFAULT_A = tuple(2.0**-k for k in range(1, 11))
DEFAULT_PHI = (math.pi / 6, math.pi / 4, math.pi / 2, 2 * math.pi / 3, 5 * math.pi / 6)

THEOREM3_CONSTANT = math.sqrt(3.0) / (2.0 * math.pi**2 * (math.sqrt(3.0) + math.pi))

CSV_FIELDS = ("check", "a", "phi_zero", "phi_good_used", "m", "measured", "bound", "status")


@dataclass(frozen=True)
class BoundReport:
    check: str
    a: float
    phi_zero: float
    phi_good_used: float
    phi_good_matched: float
    m: int
    measured: float
    bound: float
    status: str
    extra: dict = field(default_factory=dict, compare=False)

    @property
    def satisfied(self) -> bool:
        return self.status in (SATISFIED, VACUOUS)

    def csv_row(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in CSV_FIELDS}


def _status(holds: bool, vacuous: bool) -> str:
    if not holds:
        return VIOLATED
    return VACUOUS if vacuous else SATISFIED


def equal_angle_vartheta(phi_zero: float, model: AlgorithmModel) -> float:
    """Angle in (0, pi/2] with sin = sin(phi/2) sin(2 theta)."""
    return math.asin(min(math.sin(phi_zero / 2.0) * math.sin(2.0 * model.theta), 1.0))


def equal_angle_iterations(vartheta: float) -> int:
    """m = ceil((pi/2)/vartheta - 1/2)."""
    return max(math.ceil((math.pi / 2) / vartheta - 0.5 - 1e-9), 0)


def good_amplitude_after(model: AlgorithmModel, phases: PhasePair, m: int) -> np.ndarray:
    """Q^m A|0> in the (good, bad) basis of the 2x2 model."""
    M = build_q_matrix(model, phases).to_array()
    state = model.initial_state()
    for _ in range(m):
        state = M @ state
    return state


def register_good_probability(a: float, phases: PhasePair, m: int, n: int) -> float:
    """Good-state probability of Q^m A|0> on an n-qubit Walsh-Hadamard register.

    Requires a * 2**n to be an integer; the first a * 2**n indices are marked.
    """
    N = 2**n
    t = a * N
    if abs(t - round(t)) > 1e-9 or not 0 < round(t) < N:
        raise PreconditionError(f"a={a} is not a proper fraction t/{N}")
    config = SimConfig(n, frozenset(range(int(round(t)))))
    state = apply_algorithm(basis_state(N), config)
    for _ in range(m):
        state = apply_q(state, config, phases)
    return float(np.sum(np.abs(state[config.good_mask]) ** 2))


def _require_open_phase(phi_zero: float, upper_inclusive: bool = False) -> None:
    ok = 0.0 < phi_zero < math.pi or (upper_inclusive and phi_zero == math.pi)
    if not ok:
        raise PreconditionError(f"phi_zero must lie in (0, pi), got {phi_zero}")


def check_lemma1(model: AlgorithmModel, phi_zero: float) -> BoundReport:
    """Overlap of Q(phi, phi)^m A|0> with the good axis against 1 - a(2 + 4 pi^2 m).

    ``phi_zero = pi`` is accepted as the Grover endpoint.
    """
    model.require_nondegenerate()
    _require_open_phase(phi_zero, upper_inclusive=True)
    vartheta = equal_angle_vartheta(phi_zero, model)
    m = equal_angle_iterations(vartheta)
    overlap = float(abs(good_amplitude_after(model, PhasePair(phi_zero, phi_zero), m)[0]))
    bound = 1.0 - model.a * (2.0 + 4.0 * math.pi**2 * m)
    matched = math.pi if phi_zero == math.pi else solve_phi_good(phi_zero, model)
    return BoundReport(
        "lemma1", model.a, phi_zero, phi_zero, matched, m, overlap, bound,
        _status(overlap >= bound, bound < 0.0), {"vartheta": vartheta},
    )


@dataclass(frozen=True)
class NormChainReport:
    a: float
    phi_zero: float
    phi_good_used: float
    phi_good_matched: float
    m: int
    phase_gap: float  # |phi_good_used - phi_good_matched|
    phase_gap_bound: float  # 2 pi a
    op_norm: float  # largest singular value of Q' - Q on the subspace
    identity_value: float  # |1 - e^{i (phi_good_used - phi_good_matched)}|
    op_norm_bound: float  # 4 pi^2 a
    power_norm: float  # ||Q'^m - Q^m||
    power_bound: float  # 4 pi^2 a m

    @property
    def identity_error(self) -> float:
        return abs(self.op_norm - self.identity_value)

    @property
    def satisfied(self) -> bool:
        return (
            self.phase_gap <= self.phase_gap_bound
            and self.identity_error < 1e-12
            and self.op_norm <= self.op_norm_bound
            and self.power_norm <= self.power_bound + 1e-12
        )

    def as_bound_report(self) -> BoundReport:
        status = _status(self.satisfied, self.op_norm_bound >= 2.0)
        return BoundReport(
            "norm_chain", self.a, self.phi_zero, self.phi_good_used, self.phi_good_matched,
            self.m, self.op_norm, self.op_norm_bound, status, asdict(self),
        )


def norm_chain(model: AlgorithmModel, phi_zero: float, phi_good_used: float | None = None) -> NormChainReport:
    """Distance between the equal-angle iterate and the matched one.

    ``phi_good_used`` defaults to ``phi_zero`` (equal angles).  The reported
    ``phase_gap`` also serves as the tighter empirical bound on ``op_norm``
    since |1 - e^{i d}| <= |d|.
    """
    model.require_nondegenerate()
    _require_open_phase(phi_zero)
    used = phi_zero if phi_good_used is None else phi_good_used
    matched = solve_phi_good(phi_zero, model)
    Qp = build_q_matrix(model, PhasePair(phi_zero, used)).to_array()
    Q = build_q_matrix(model, PhasePair(phi_zero, matched)).to_array()
    op_norm = float(np.linalg.norm(Qp - Q, 2))
    m = equal_angle_iterations(equal_angle_vartheta(phi_zero, model))
    power_norm = float(np.linalg.norm(np.linalg.matrix_power(Qp, m) - np.linalg.matrix_power(Q, m), 2))
    return NormChainReport(
        a=model.a,
        phi_zero=phi_zero,
        phi_good_used=used,
        phi_good_matched=matched,
        m=m,
        phase_gap=abs(used - matched),
        phase_gap_bound=2.0 * math.pi * model.a,
        op_norm=op_norm,
        identity_value=abs(1.0 - cmath.exp(1j * (used - matched))),
        op_norm_bound=4.0 * math.pi**2 * model.a,
        power_norm=power_norm,
        power_bound=4.0 * math.pi**2 * model.a * m,
    )


def run_theorem2(model: AlgorithmModel, phi_zero: float) -> BoundReport:
    """Bad-outcome probability of Q(phi, phi)^m A|0> against 4 pi^3 a/vartheta + 44 a."""
    model.require_nondegenerate()
    if not (model.theta <= phi_zero < math.pi):
        raise PreconditionError(f"need theta <= phi_zero < pi, got phi_zero={phi_zero}")
    vartheta = equal_angle_vartheta(phi_zero, model)
    m = equal_angle_iterations(vartheta)
    final = good_amplitude_after(model, PhasePair(phi_zero, phi_zero), m)
    p_bad = float(abs(final[1]) ** 2)
    bound = 4.0 * math.pi**3 * model.a / vartheta + 44.0 * model.a
    return BoundReport(
        "theorem2", model.a, phi_zero, phi_zero, solve_phi_good(phi_zero, model), m,
        p_bad, bound, _status(p_bad <= bound, bound >= 1.0), {"vartheta": vartheta},
    )


def theorem3_delta_max(model: AlgorithmModel, phi_zero: float, epsilon: float) -> float:
    return epsilon * THEOREM3_CONSTANT * phi_zero * math.sqrt(model.a)


def run_theorem3(model: AlgorithmModel, phi_zero: float, phi_good_used: float, epsilon: float) -> BoundReport:
    """Error probability with an approximate oracle phase against 4a + epsilon.

    The bound only applies when |phi_good_used - matched| <= delta_max; otherwise
    the report is ``not-applicable`` (the measured error is still recorded).
    """
    model.require_nondegenerate()
    _require_open_phase(phi_zero)
    if not (-math.pi < phi_good_used < math.pi):
        raise PreconditionError(f"phi_good_used must lie in (-pi, pi), got {phi_good_used}")
    if not epsilon > 0.0:
        raise PreconditionError(f"epsilon must be positive, got {epsilon}")
    matched = solve_phi_good(phi_zero, model)
    delta = abs(phi_good_used - matched)
    delta_max = theorem3_delta_max(model, phi_zero, epsilon)
    vartheta = equal_angle_vartheta(phi_zero, model)
    m = equal_angle_iterations(vartheta)
    final = good_amplitude_after(model, PhasePair(phi_zero, phi_good_used), m)
    p_err = float(abs(final[1]) ** 2)
    bound = 4.0 * model.a + epsilon
    if delta > delta_max:
        status = NOT_APPLICABLE
    else:
        status = _status(p_err <= bound, bound >= 1.0)
    return BoundReport(
        "theorem3", model.a, phi_zero, phi_good_used, matched, m, p_err, bound, status,
        {"delta": delta, "delta_max": delta_max, "epsilon": epsilon},
    )


@dataclass(frozen=True)
class SweepGrid:
    """Grid of points for :func:`sweep`.

    ``phi_good`` selects the oracle phase for theorem3 and norm_chain:
    ``"equal"`` uses phi_zero, ``"matched"`` the solved phase, or a float.
    """

    check: str
    a_values: tuple = DEFAULT_A
    phi_values: tuple = DEFAULT_PHI
    phi_good: object = "equal"
    epsilon: float = 0.1

    def points(self):
        for phi in self.phi_values:
            for a in self.a_values:
                yield float(a), float(phi)


def _phi_good_for(grid: SweepGrid, phi: float, model: AlgorithmModel) -> float:
    if grid.phi_good == "equal":
        return phi
    if grid.phi_good == "matched":
        return solve_phi_good(phi, model)
    return float(grid.phi_good)


def _evaluate(grid: SweepGrid, a: float, phi: float) -> BoundReport:
    model = AlgorithmModel.from_probability(a)
    if grid.check == "lemma1":
        return check_lemma1(model, phi)
    if grid.check == "norm_chain":
        return norm_chain(model, phi, _phi_good_for(grid, phi, model)).as_bound_report()
    if grid.check == "theorem2":
        if not model.theta <= phi < math.pi:
            return BoundReport("theorem2", a, phi, phi, solve_phi_good(phi, model), 0,
                               float("nan"), float("nan"), NOT_APPLICABLE)
        return run_theorem2(model, phi)
    if grid.check == "theorem3":
        return run_theorem3(model, phi, _phi_good_for(grid, phi, model), grid.epsilon)
    raise ValueError(f"unknown check {grid.check!r}; expected one of {CHECKS}")


def sweep(grid: SweepGrid, workers: int = 1) -> list[BoundReport]:
    """Evaluate ``grid.check`` at every grid point, phi-major then a, in grid order."""
    if grid.check not in CHECKS:
        raise ValueError(f"unknown check {grid.check!r}; expected one of {CHECKS}")
    points = list(grid.points())
    if not points:
        raise PreconditionError("sweep grid is empty")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda p: _evaluate(grid, *p), points))
    return [_evaluate(grid, a, phi) for a, phi in points]


def summarize(reports: list[BoundReport]) -> dict:
    counts = {s: 0 for s in (SATISFIED, VIOLATED, VACUOUS, NOT_APPLICABLE)}
    for r in reports:
        counts[r.status] += 1
    evaluated = counts[SATISFIED] + counts[VIOLATED] + counts[VACUOUS]
    return {
        "check": reports[0].check if reports else None,
        "rows": len(reports),
        **counts,
        "all_satisfied": counts[VIOLATED] == 0 and evaluated > 0,
    }
