"""
Benchmark objectives, behaviour functions and their composition into problems.

Every function here works on a single genotype or on a stack of them along the
last axis, so a whole generation is evaluated in one call.
"""

from dataclasses import dataclass
from math import pi
from typing import Callable, Optional

import numpy as np
from kivy.logger import Logger
from scipy.special import expit

from . import ARM_REACH, SEARCH_BOUND
from .exceptions import InvalidProblemError
from .model import Bounds, Rng


def sphere_objective(x):
    x = np.asarray(x, dtype=float)
    return -np.sum(x ** 2, axis=-1)


def rastrigin_objective(x):
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    return -(10 * d + np.sum(x ** 2 - 10 * np.cos(2 * pi * x), axis=-1))


def arm_forward_kinematics(angles, link_lengths):
    """
    End-effector position (ex, ey) of a planar chain whose k-th joint angle is
    relative to the previous link
    """
    angles = np.asarray(angles, dtype=float)
    link_lengths = np.asarray(link_lengths, dtype=float)
    absolute = np.cumsum(angles, axis=-1)
    ex = np.sum(link_lengths * np.cos(absolute), axis=-1)
    ey = np.sum(link_lengths * np.sin(absolute), axis=-1)
    return np.stack([ex, ey], axis=-1)


def arm_objective(angles):
    """Smoothness of the arm: negated population variance of the joint angles"""
    return -np.var(np.asarray(angles, dtype=float), axis=-1)


def arm_link_lengths(dim: int) -> np.ndarray:
    return np.full(dim, ARM_REACH / dim)


def behaviour_subset(x, bounds: Bounds):
    x = np.asarray(x, dtype=float)
    if x.shape[-1] < 2 or bounds.dim < 2:
        raise InvalidProblemError('the subset behaviour needs at least two dimensions')
    b = (x[..., :2] - bounds.lower[:2]) / bounds.range[:2]
    return np.clip(b, 0.0, 1.0)


def behaviour_sigmoid(x, W):
    return expit(np.asarray(x, dtype=float) @ W)


def behaviour_sine(x, W):
    return (np.sin(np.asarray(x, dtype=float) @ W) + 1) / 2


def behaviour_arm(angles):
    angles = np.asarray(angles, dtype=float)
    position = arm_forward_kinematics(angles, arm_link_lengths(angles.shape[-1]))
    return np.clip((position + ARM_REACH) / (2 * ARM_REACH), 0.0, 1.0)


@dataclass(frozen=True)
class DomainData:
    objective: Callable
    low: float
    high: float
    behaviours: tuple
    default_behaviour: str


DOMAINS = {
    'sphere': DomainData(
        objective=sphere_objective,
        low=-SEARCH_BOUND,
        high=SEARCH_BOUND,
        behaviours=('subset', 'sigmoid', 'sine'),
        default_behaviour='subset',
    ),
    'rastrigin': DomainData(
        objective=rastrigin_objective,
        low=-SEARCH_BOUND,
        high=SEARCH_BOUND,
        behaviours=('subset', 'sigmoid', 'sine'),
        default_behaviour='subset',
    ),
    'arm': DomainData(
        objective=arm_objective,
        low=-pi,
        high=pi,
        behaviours=('arm',),
        default_behaviour='arm',
    ),
}


@dataclass(frozen=True, eq=False)
class Problem:
    name: str
    dim: int
    bounds: Bounds
    objective: Callable
    behaviour: Callable
    behaviour_name: str
    W: Optional[np.ndarray] = None

    def evaluate(self, x):
        """Returns (fitness, behaviours) for one genotype or a stack of them"""
        return self.objective(x), self.behaviour(x)


def make_problem(name: str, behaviour_name: str, d: int, config_rng: Rng) -> Problem:
    """
    Binds a domain, a behaviour function and a dimension. Projection matrices of
    the sigmoid and sine behaviours are drawn once here, from a stream derived
    from the configuration, so every replicate sees the same instance.
    """
    domain = DOMAINS.get(name)
    if domain is None:
        raise InvalidProblemError(f'unknown domain {name!r}, expected one of {sorted(DOMAINS)}')
    if behaviour_name not in domain.behaviours:
        raise InvalidProblemError(f'behaviour {behaviour_name!r} does not apply to {name!r}')
    d = int(d)
    if d < 1:
        raise InvalidProblemError(f'dimension must be positive, got {d}')
    if behaviour_name == 'subset' and d < 2:
        raise InvalidProblemError('the subset behaviour needs at least two dimensions')

    bounds = Bounds.uniform(domain.low, domain.high, d)
    W = None
    if behaviour_name == 'subset':
        behaviour = lambda x: behaviour_subset(x, bounds)
    elif behaviour_name in ('sigmoid', 'sine'):
        W = config_rng.derive(f'projection/{name}/{d}').generator.standard_normal((d, 2))
        function = behaviour_sigmoid if behaviour_name == 'sigmoid' else behaviour_sine
        behaviour = lambda x: function(x, W)
    else:
        behaviour = behaviour_arm

    Logger.debug(f'Problem: {name}/{behaviour_name} in {d} dimensions')
    return Problem(
        name=name,
        dim=d,
        bounds=bounds,
        objective=domain.objective,
        behaviour=behaviour,
        behaviour_name=behaviour_name,
        W=W,
    )


def objective_problem(name: str, d: int, config_rng: Rng) -> Problem:
    """A problem of the domain for work that only needs its objective and bounds"""
    domain = DOMAINS.get(name)
    if domain is None:
        raise InvalidProblemError(f'unknown domain {name!r}, expected one of {sorted(DOMAINS)}')
    behaviour_name = domain.default_behaviour
    if behaviour_name == 'subset' and int(d) < 2:
        behaviour_name = 'sigmoid'
    return make_problem(name, behaviour_name, d, config_rng)
