"""Problem data: oscillator parameters, forcing terms, and time partitions.

Everything here is an immutable value object. Operations are pure, so
problems and meshes can be shared freely between threads and solves.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "MeshError",
    "MeshWarning",
    "Forcing",
    "ZeroForcing",
    "SinusoidForcing",
    "PointwiseForcing",
    "ZERO",
    "OscillatorProblem",
    "Mesh",
    "uniform_mesh",
    "validate_mesh",
    "natural_frequency",
]


class MeshError(ValueError):
    """A time partition violates the mesh requirements."""


class MeshWarning(UserWarning):
    """Non-fatal mesh diagnostics (e.g. an odd element count)."""


class Forcing:
    """External force history f(s), evaluable at any instant s >= 0."""

    def __call__(self, s: float) -> float:
        raise NotImplementedError


@dataclass(frozen=True)
class ZeroForcing(Forcing):
    """Free vibration: f(s) = 0."""

    def __call__(self, s: float) -> float:
        return 0.0


@dataclass(frozen=True)
class SinusoidForcing(Forcing):
    """Harmonic drive f(s) = amplitude * sin(frequency * s)."""

    amplitude: float
    frequency: float

    def __post_init__(self):
        if not self.frequency > 0.0:
            raise ValueError("sinusoid frequency must be positive")

    def __call__(self, s: float) -> float:
        return self.amplitude * math.sin(self.frequency * s)


@dataclass(frozen=True)
class PointwiseForcing(Forcing):
    """Arbitrary force history given as a callable of time.

    Nodal forces for this variant are always computed by quadrature, so the
    callable only needs to support scalar evaluation.
    """

    func: Callable[[float], float]

    def __call__(self, s: float) -> float:
        return float(self.func(s))


ZERO = ZeroForcing()


@dataclass(frozen=True)
class OscillatorProblem:
    """Initial value problem  mass*u'' + stiffness*u = f,  u(0), u'(0) given.

    Parameters
    ----------
    mass, stiffness : float
        Positive physical constants.
    initial_displacement, initial_velocity : float
        State at s = 0.
    horizon : float
        Final time of the solve interval [0, horizon].
    forcing : Forcing
        External force history; defaults to free vibration.
    """

    mass: float
    stiffness: float
    initial_displacement: float = 0.0
    initial_velocity: float = 0.0
    horizon: float = 1.0
    forcing: Forcing = ZERO

    def __post_init__(self):
        for name in ("mass", "stiffness", "horizon"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be a positive finite number")
        for name in ("initial_displacement", "initial_velocity"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @property
    def omega(self) -> float:
        """Natural angular frequency sqrt(stiffness/mass)."""
        return math.sqrt(self.stiffness / self.mass)

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True, eq=False)
class Mesh:
    """Partition 0 = s_1 < s_2 < ... < s_{n+1} = horizon of the time axis.

    Construction only checks the shape of the node array; use
    :func:`validate_mesh` (called by the assembly routines) for the
    monotonicity and length-symmetry requirements.
    """

    nodes: np.ndarray

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        if nodes.ndim != 1 or nodes.size < 2:
            raise MeshError("mesh needs a 1-d array of at least two nodes")
        nodes = nodes.copy()
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def n(self) -> int:
        """Number of elements."""
        return self.nodes.size - 1

    @property
    def horizon(self) -> float:
        return float(self.nodes[-1])

    @property
    def element_lengths(self) -> np.ndarray:
        return np.diff(self.nodes)


def uniform_mesh(horizon: float, n: int) -> Mesh:
    """Mesh with n equal elements on [0, horizon]."""
    if not (math.isfinite(horizon) and horizon > 0.0):
        raise ValueError("horizon must be a positive finite number")
    if int(n) != n or n < 1:
        raise ValueError("element count must be a positive integer")
    return Mesh(np.linspace(0.0, horizon, int(n) + 1))


def validate_mesh(mesh: Mesh) -> None:
    """Check the partition requirements, raising MeshError on violation.

    Requirements: nodes start at 0 and increase strictly, and the element
    lengths read the same forwards and backwards (symmetry of the partition
    about the midpoint). An odd element count only triggers a MeshWarning:
    length-symmetric meshes give identical end elements either way, which is
    the property the scheme actually relies on.
    """
    nodes = mesh.nodes
    scale = max(1.0, abs(float(nodes[-1])))
    if abs(float(nodes[0])) > 1e-12 * scale:
        raise MeshError("mesh must start at 0")
    lengths = mesh.element_lengths
    if not np.all(lengths > 0.0):
        raise MeshError("mesh nodes must be strictly increasing")
    if not np.allclose(lengths, lengths[::-1], rtol=1e-9, atol=1e-12 * scale):
        raise MeshError("element lengths must be symmetric about the midpoint")
    if mesh.n % 2 == 1:
        warnings.warn(
            "odd number of elements; the midpoint of the interval is not a node",
            MeshWarning,
            stacklevel=2,
        )


def natural_frequency(problem: OscillatorProblem) -> float:
    """Angular frequency sqrt(stiffness/mass) of the free oscillation."""
    return problem.omega
