from math import log, pi

import numpy as np
import pytest

from qdela.exceptions import InvalidProblemError
from qdela.model import Bounds, Rng
from qdela.problems import (arm_forward_kinematics, arm_objective, behaviour_arm, behaviour_sigmoid,
                            behaviour_sine, behaviour_subset, make_problem, objective_problem,
                            rastrigin_objective, sphere_objective)


def test_sphere():
    assert sphere_objective(np.zeros(3)) == 0
    assert sphere_objective([1, 2]) == -5
    assert sphere_objective(np.full(4, -5.0)) == -100


def test_sphere_vectorised():
    assert np.array_equal(sphere_objective([[0, 0], [1, 2]]), [0, -5])


def test_rastrigin():
    assert rastrigin_objective(np.zeros(5)) == pytest.approx(0, abs=1e-12)
    assert rastrigin_objective([1, 1]) == pytest.approx(-2)
    assert rastrigin_objective([0.5]) == pytest.approx(-20.25)


def test_arm_kinematics():
    assert np.allclose(arm_forward_kinematics(np.zeros(4), np.full(4, 3.0)), [12, 0])
    assert np.allclose(arm_forward_kinematics([pi / 2, 0, 0, 0], np.full(4, 3.0)), [0, 12], atol=1e-12)
    assert np.allclose(arm_forward_kinematics([pi / 2, -pi / 2], [6, 6]), [6, 6])


def test_arm_objective():
    assert arm_objective(np.full(5, 0.3)) == 0
    assert arm_objective([pi, -pi]) == pytest.approx(-pi ** 2)
    angles = np.array([0, pi / 2, pi])
    assert arm_objective(angles) == pytest.approx(-np.mean((angles - angles.mean()) ** 2))


def test_behaviour_subset():
    bounds = Bounds.uniform(-5, 5, 3)
    assert np.allclose(behaviour_subset([-5, -5, 0], bounds), [0, 0])
    assert np.allclose(behaviour_subset([0, 0, 0], bounds), [0.5, 0.5])
    assert np.allclose(behaviour_subset([2.5, -5, 1], bounds), [0.75, 0])


def test_behaviour_subset_needs_two_dims():
    with pytest.raises(InvalidProblemError):
        behaviour_subset([1.0], Bounds.uniform(-5, 5, 1))


def test_behaviour_sigmoid():
    W = np.eye(2)
    assert np.allclose(behaviour_sigmoid([0, 0], W), [0.5, 0.5])
    assert np.allclose(behaviour_sigmoid([log(3), 0], W), [0.75, 0.5])
    saturated = behaviour_sigmoid([1000, -1000], W)
    assert saturated[0] == pytest.approx(1) and saturated[1] == pytest.approx(0)


def test_behaviour_sine():
    W = np.eye(2)
    assert np.allclose(behaviour_sine([0, 0], W), [0.5, 0.5])
    assert np.allclose(behaviour_sine([pi / 2, -pi / 2], W), [1, 0])
    assert np.allclose(behaviour_sine([pi / 6, 0], W), [0.75, 0.5])


def test_behaviour_arm():
    assert np.allclose(behaviour_arm(np.zeros(4)), [1, 0.5])
    assert np.allclose(behaviour_arm([pi / 2, 0, 0, 0]), [0.5, 1])
    # two links folded back onto the base
    assert np.allclose(behaviour_arm([0, pi]), [0.5, 0.5])


def test_make_problem_bounds():
    problem = make_problem('sphere', 'subset', 2, Rng(0))
    assert np.allclose(problem.bounds.lower, -5) and np.allclose(problem.bounds.upper, 5)
    arm = make_problem('arm', 'arm', 16, Rng(0))
    assert np.allclose(arm.bounds.upper, pi)
    fitness, behaviour = arm.evaluate(np.zeros(16))
    assert fitness == 0
    assert np.allclose(behaviour, [1, 0.5])


@pytest.mark.parametrize('name, behaviour, d', [
    ('arm', 'sigmoid', 8),
    ('sphere', 'arm', 4),
    ('sphere', 'subset', 1),
    ('ackley', 'subset', 4),
    ('sphere', 'sine', 0),
])
def test_make_problem_invalid(name, behaviour, d):
    with pytest.raises(InvalidProblemError):
        make_problem(name, behaviour, d, Rng(0))


def test_projection_fixed_per_configuration():
    a = make_problem('rastrigin', 'sigmoid', 6, Rng(3).derive('problem'))
    b = make_problem('rastrigin', 'sigmoid', 6, Rng(3).derive('problem'))
    c = make_problem('rastrigin', 'sigmoid', 6, Rng(4).derive('problem'))
    assert a.W.shape == (6, 2)
    assert np.array_equal(a.W, b.W)
    assert not np.array_equal(a.W, c.W)


def test_evaluate_stack():
    problem = make_problem('rastrigin', 'sine', 3, Rng(0))
    fitness, behaviours = problem.evaluate(np.zeros((5, 3)))
    assert fitness.shape == (5,)
    assert behaviours.shape == (5, 2)
    assert np.all((behaviours >= 0) & (behaviours <= 1))


def test_objective_problem_falls_back_for_one_dimension():
    problem = objective_problem('sphere', 1, Rng(0))
    assert problem.behaviour_name == 'sigmoid'
    assert objective_problem('sphere', 4, Rng(0)).behaviour_name == 'subset'


@pytest.mark.parametrize('name, behaviour, d', [
    ('sphere', 'subset', 4),
    ('sphere', 'sigmoid', 8),
    ('sphere', 'sine', 8),
    ('rastrigin', 'subset', 2),
    ('rastrigin', 'sigmoid', 16),
    ('rastrigin', 'sine', 16),
    ('arm', 'arm', 8),
])
def test_behaviours_stay_in_unit_square(name, behaviour, d):
    problem = make_problem(name, behaviour, d, Rng(1))
    X = np.random.default_rng(2).uniform(problem.bounds.lower, problem.bounds.upper, size=(100_000, d))
    fitness, behaviours = problem.evaluate(X)
    assert fitness.shape == (100_000,)
    assert behaviours.shape == (100_000, 2)
    assert np.all((behaviours >= 0) & (behaviours <= 1))


def test_arm_base_rotation_rotates_end_effector():
    gen = np.random.default_rng(3)
    lengths = np.full(6, 2.0)
    for _ in range(100):
        angles = gen.uniform(-pi, pi, 6)
        theta = gen.uniform(-pi, pi)
        turned = angles.copy()
        turned[0] += theta
        rotation = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        expected = rotation @ arm_forward_kinematics(angles, lengths)
        assert np.allclose(arm_forward_kinematics(turned, lengths), expected, rtol=0, atol=1e-12)
