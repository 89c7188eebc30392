"""One-step recurrence derived from the element system, with stability tools.

The element equations can be read as an update: knowing displacement and
velocity at the left node, the second equation yields the right displacement
and the first equation then yields the right velocity,

    U_{e+1} = (F2 + m*V_e - K21*U_e) / K22,
    V_{e+1} = (F1 - K11*U_e - K12*U_{e+1}) / m.

For a fixed step tau this is the linear recurrence A W' = B W + F on the
state W = (U, V). The scheme propagates neutrally (both amplification
eigenvalues on the unit circle) exactly when tau < sqrt(12 m / k), about
0.551 natural periods; beyond that the eigenvalues turn real and the larger
one grows the solution.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .convolution import DEFAULT_QUADRATURE, QuadratureSpec
from .element import Element, local_force, sinusoid_force_pair
from .model import OscillatorProblem, SinusoidForcing, ZeroForcing
from .solver import Trajectory

__all__ = [
    "StabilityWarning",
    "StateVector",
    "StepMatrices",
    "step_matrices",
    "stability_limit",
    "amplification_eigenvalues",
    "march",
]


class StabilityWarning(UserWarning):
    """The chosen step is at or beyond the neutral-stability limit."""


@dataclass(frozen=True)
class StateVector:
    """Displacement and velocity at one time node."""

    displacement: float
    velocity: float

    def __post_init__(self):
        if not (math.isfinite(self.displacement) and math.isfinite(self.velocity)):
            raise ValueError("state entries must be finite")


@dataclass(frozen=True, eq=False)
class StepMatrices:
    """Matrices of the implicit recurrence a @ W_next = b @ W + F."""

    a: np.ndarray
    b: np.ndarray
    tau: float


def _element_entries(mass: float, stiffness: float, tau: float) -> tuple[float, float]:
    """Diagonal and off-diagonal entries of the 2x2 element matrix."""
    return mass / tau + stiffness * tau / 6.0, -mass / tau + stiffness * tau / 3.0


def step_matrices(mass: float, stiffness: float, tau: float) -> StepMatrices:
    """Recurrence matrices for a fixed step tau.

    a = [[-m/tau + k*tau/3, m], [m/tau + k*tau/6, 0]] is invertible for any
    positive arguments (det = -m * (m/tau + k*tau/6)).
    """
    _require_positive(mass=mass, stiffness=stiffness, tau=tau)
    diag, off = _element_entries(mass, stiffness, tau)
    a = np.array([[off, mass], [diag, 0.0]])
    b = np.array([[-diag, 0.0], [-off, mass]])
    return StepMatrices(a=a, b=b, tau=tau)


def stability_limit(mass: float, stiffness: float) -> float:
    """Critical step sqrt(12 m / k); equivalently 0.5513 natural periods."""
    _require_positive(mass=mass, stiffness=stiffness)
    return math.sqrt(12.0 * mass / stiffness)


def amplification_eigenvalues(mass: float, stiffness: float, tau: float):
    """Both roots of the per-step amplification quadratic.

    The quadratic is lam^2 - 2*lam*(M - K)/(M + K/2) + 1 = 0 with M = m/tau
    and K = k*tau/3. The constant term is 1, so the roots always multiply to
    one; they form a unit-circle conjugate pair exactly below the stability
    limit and a real pair with max |lam| > 1 above it.
    """
    _require_positive(mass=mass, stiffness=stiffness, tau=tau)
    big_m = mass / tau
    big_k = stiffness * tau / 3.0
    center = (big_m - big_k) / (big_m + big_k / 2.0)
    root = cmath.sqrt(complex(center * center - 1.0))
    return center + root, center - root


def march(
    problem: OscillatorProblem,
    tau: float,
    steps: int,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> Trajectory:
    """Run the one-step scheme from (u(0), u'(0)) for `steps` fixed steps.

    The element matrix is computed once; the nodal force pair is recomputed
    for every step (closed form for sinusoids, quadrature otherwise). An
    unstable step is not an error: a warning is emitted and the growing
    trajectory is returned as computed.
    """
    _require_positive(tau=tau)
    if int(steps) != steps or steps < 1:
        raise ValueError("steps must be a positive integer")
    steps = int(steps)
    mass = problem.mass
    if tau >= stability_limit(mass, problem.stiffness):
        warnings.warn(
            f"step {tau:g} is at or beyond the stability limit "
            f"{stability_limit(mass, problem.stiffness):g}; expect growth",
            StabilityWarning,
            stacklevel=2,
        )

    first, second = _step_force_arrays(problem, tau, steps, quad)
    diag, off = _element_entries(mass, problem.stiffness, tau)

    u = problem.initial_displacement
    v = problem.initial_velocity
    displacements = [u]
    velocities = [v]
    for e in range(steps):
        u_next = (second[e] + mass * v - off * u) / diag
        v = (first[e] - diag * u - off * u_next) / mass
        u = u_next
        displacements.append(u)
        velocities.append(v)

    times = tau * np.arange(steps + 1)
    return Trajectory(
        times=times,
        displacements=np.array(displacements),
        velocities=np.array(velocities),
        scheme="onestep",
    )


def _step_force_arrays(problem, tau, steps, quad):
    """Nodal force pair per step, as plain lists for the scalar recurrence."""
    forcing = problem.forcing
    if isinstance(forcing, ZeroForcing):
        zero = [0.0] * steps
        return zero, list(zero)
    left = tau * np.arange(steps)
    if isinstance(forcing, SinusoidForcing):
        first, second = sinusoid_force_pair(
            left, left + tau, tau, forcing.amplitude, forcing.frequency
        )
        return first.tolist(), second.tolist()
    pairs = [
        local_force(Element(s, s + tau, e + 1), forcing, quad)
        for e, s in enumerate(left.tolist())
    ]
    return [p[0] for p in pairs], [p[1] for p in pairs]


def _require_positive(**values: float):
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0.0):
            raise ValueError(f"{name} must be a positive finite number")
