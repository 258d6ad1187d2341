import math

import numpy as np
import pytest

from ampphase.core import AlgorithmModel, PhasePair, rotation_matrix
from ampphase.errors import DegenerateSubspaceError, MismatchedModelError, PreconditionError
from ampphase.rotation import RotationPlan, apply_rotation_plan, plan_rotation


def model(a):
    return AlgorithmModel.from_probability(a)


def random_state(rng):
    v = rng.normal(size=2) + 1j * rng.normal(size=2)
    return v / np.linalg.norm(v)


def test_exact_multiple_takes_grover_shortcut():
    m = model(0.1)
    plan = plan_rotation(2 * m.theta, m)
    assert plan.grover_shortcut
    assert plan.m == 1
    assert plan.phases == PhasePair.grover()
    out = apply_rotation_plan(plan, [0, 1])
    assert np.allclose(out, [math.sin(2 * m.theta), math.cos(2 * m.theta)], atol=1e-12)


def test_three_steps_shortcut():
    m = model(0.01)
    plan = plan_rotation(6 * m.theta, m)
    assert plan.grover_shortcut and plan.m == 3


def test_zero_rotation_is_identity():
    plan = plan_rotation(0.0, model(0.3))
    assert plan.m == 0
    state = np.array([0.6, 0.8j])
    assert np.array_equal(apply_rotation_plan(plan, state), state)


def test_quarter_turn_at_quarter_probability():
    m = model(0.25)  # theta = pi/6
    plan = plan_rotation(math.pi / 2, m)
    assert not plan.grover_shortcut
    assert plan.m == 2
    assert plan.vartheta == pytest.approx(math.pi / 4, abs=1e-15)
    expected_phi = 2 * math.asin(math.sin(math.pi / 4) / (math.sqrt(3) / 2))
    assert plan.phases.phi_zero == pytest.approx(expected_phi, abs=1e-12)
    out = apply_rotation_plan(plan, [0, 1])
    assert np.allclose(out, [1, 0], atol=1e-10)
    assert np.max(np.abs(plan.effective_operator() - rotation_matrix(math.pi / 2))) < 1e-10


def test_rejects_bad_inputs():
    with pytest.raises(PreconditionError):
        plan_rotation(2 * math.pi, model(0.2))
    with pytest.raises(PreconditionError):
        plan_rotation(-0.1, model(0.2))
    with pytest.raises(DegenerateSubspaceError):
        plan_rotation(1.0, model(0.0))


def test_mismatched_plan_rejected():
    plan = plan_rotation(1.0, model(0.2))
    tampered = RotationPlan(**{**plan.__dict__, "model": model(0.3)})
    with pytest.raises(MismatchedModelError):
        apply_rotation_plan(tampered, [1, 0])


def test_random_plans_match_rotation():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(200):
        x = rng.uniform(0, 2 * math.pi)
        plan = plan_rotation(x, model(rng.uniform(0.001, 0.999)))
        worst = max(worst, np.max(np.abs(plan.effective_operator() - rotation_matrix(x))))
        assert plan.deviation < 1e-9
    assert worst < 1e-9


def test_count_bound_up_to_half():
    rng = np.random.default_rng(5)
    for _ in range(200):
        x = rng.uniform(0.01, 2 * math.pi)
        m = model(rng.uniform(0.001, 0.5))
        plan = plan_rotation(x, m)
        assert plan.m <= math.ceil(x / (2 * m.theta)) + 1
        if not plan.grover_shortcut:
            assert plan.m > x / (2 * m.theta)
            assert plan.vartheta == pytest.approx(x / plan.m, rel=1e-15)


def test_reachability_above_half():
    # per-step angle must keep |sin| <= sin(2 theta) when 2 theta > pi/2
    m = model(0.9)
    plan = plan_rotation(2.5, m)
    assert abs(math.sin(plan.vartheta)) <= math.sin(2 * m.theta) + 1e-12
    assert plan.deviation < 1e-9


def test_iterations_scale_inversely_with_theta():
    x = 1.0
    ratios = []
    for a in np.logspace(-6, -1, 11):
        m = model(a)
        plan = plan_rotation(x, m)
        ratios.append(plan.m * m.theta)
    # m in (x/(2 theta), x/(2 theta) + 1]
    assert all(x / 2 < r <= x / 2 + math.asin(math.sqrt(0.1)) + 1e-12 for r in ratios)


def test_composition():
    rng = np.random.default_rng(11)
    for _ in range(50):
        a = rng.uniform(0.01, 0.99)
        x1, x2 = rng.uniform(0, math.pi, size=2)
        state = random_state(rng)
        out = apply_rotation_plan(plan_rotation(x2, model(a)), apply_rotation_plan(plan_rotation(x1, model(a)), state))
        assert np.max(np.abs(out - rotation_matrix(x1 + x2) @ state)) < 1e-9
