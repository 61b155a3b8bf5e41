import numpy as np
import pytest

from qdela.ela.features import ElaBudget
from qdela.ela.local import cluster_optima, ela_local
from qdela.ela.nelder_mead import nelder_mead
from qdela.exceptions import InsufficientSamplesError, STATUS_DEGENERATE
from qdela.model import Bounds, Dataset, Rng
from qdela.problems import sphere_objective
from qdela.sampling import lhs_sample

BOUNDS = Bounds.uniform(-5, 5, 2)


def _double_well(x):
    x = np.asarray(x, dtype=float)
    return -((x[..., 0] ** 2 - 4) ** 2 + x[..., 1] ** 2)


def test_nelder_mead_quadratic():
    result = nelder_mead(lambda x: float(np.sum((x - 1) ** 2)), np.zeros(3), 0.5, 2000)
    assert np.allclose(result.x, 1, atol=1e-4)
    assert result.nfev <= 2000


def test_nelder_mead_respects_budget():
    calls = []

    def func(x):
        calls.append(1)
        return float(np.sum(x ** 2))

    result = nelder_mead(func, np.full(4, 3.0), 0.1, 25)
    assert len(calls) == result.nfev == 25
    assert result.fun <= 36


def test_cluster_optima_order():
    points = np.array([[0.0, 0.0], [1.0, 1.0], [0.001, 0.0], [1.0, 1.001]])
    assert list(cluster_optima(points, 0.01)) == [0, 1, 0, 1]
    assert list(cluster_optima(points[:1], 0.01)) == [0]


def test_unimodal_sphere():
    X = lhs_sample(100, BOUNDS, Rng(0))
    features, evals = ela_local(Dataset(X, sphere_objective(X)), sphere_objective, BOUNDS,
                                ElaBudget(local_starts=50), Rng(1))
    assert evals > 0
    assert features['f22'].value == 1
    assert features['f17'].value == 1
    assert features['f20'].value == pytest.approx(0, abs=1e-6)
    assert features['f21'].value == 0
    assert features['f18'].status == STATUS_DEGENERATE
    assert features['f19'].value == features['f17'].value
    assert features['f23'].value == pytest.approx(1 / 50)


def test_double_well():
    X = lhs_sample(400, BOUNDS, Rng(2))
    features, _ = ela_local(Dataset(X, _double_well(X)), _double_well, BOUNDS,
                            ElaBudget(local_starts=200), Rng(3))
    assert features['f22'].value == 2
    assert features['f17'].value == pytest.approx(0.5, abs=0.15)


def test_needs_two_starts():
    X = lhs_sample(10, BOUNDS, Rng(4))
    with pytest.raises(InsufficientSamplesError):
        ela_local(Dataset(X, sphere_objective(X)), sphere_objective, BOUNDS, ElaBudget(local_starts=1), Rng(5))


def test_default_starts():
    assert ElaBudget().starts_for(2) == 100
    assert ElaBudget().starts_for(16) == 400
    assert ElaBudget(local_starts=7).starts_for(16) == 7


def test_starts_at_the_corners_reach_the_interior_optimum():
    X = np.array([[4.9, 4.9], [-4.9, 4.95], [4.95, -4.9], [-4.95, -4.95]])
    features, _ = ela_local(Dataset(X, sphere_objective(X)), sphere_objective, BOUNDS,
                            ElaBudget(local_starts=4), Rng(6))
    assert features['f22'].value == 1
    assert features['f20'].value == pytest.approx(0, abs=1e-6)


def test_evaluations_within_budget():
    X = lhs_sample(60, BOUNDS, Rng(7))
    budget = ElaBudget(local_starts=10, local_max_evals=40)
    _, evals = ela_local(Dataset(X, _double_well(X)), _double_well, BOUNDS, budget, Rng(8))
    assert 0 < evals <= budget.local_starts * budget.local_max_evals
