"""Single time element: linear shape functions, local system, local forces.

Each element [s_e, s_{e+1}] carries two hat functions and a 2x2 system
matrix built from the convolution of shape functions (inertia part) and of
their derivatives (elastic part). For the length tau of the element:

    mass_part = (m/tau) [[ 1, -1], [-1,  1]]
    stiff_part = (k*tau/3) [[1/2, 1], [1, 1/2]]

Dirac end-impulse terms are never integrated numerically; they enter the
element functional analytically as products of the impulse with the
opposite end displacement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolution import DEFAULT_QUADRATURE, QuadratureSpec, convolve_shifted
from .model import Forcing, Mesh, SinusoidForcing, ZeroForcing

__all__ = [
    "Element",
    "LocalSystem",
    "mesh_element",
    "mesh_elements",
    "shape_values",
    "local_matrices",
    "local_force",
    "local_force_sinusoid_closed",
    "sinusoid_force_pair",
    "evaluate_local_functional",
]


@dataclass(frozen=True)
class Element:
    """One subinterval [left, right] of the time partition.

    `index` is the 1-based position of the element in its mesh; it does not
    enter any formula and defaults to 0 for free-standing elements.
    """

    left: float
    right: float
    index: int = 0

    def __post_init__(self):
        if not self.right > self.left:
            raise ValueError("element must have right > left")

    @property
    def length(self) -> float:
        return self.right - self.left


def mesh_element(mesh: Mesh, e: int) -> Element:
    """Element number e (1-based) of a mesh."""
    if not 1 <= e <= mesh.n:
        raise ValueError(f"element index must be in [1, {mesh.n}]")
    return Element(float(mesh.nodes[e - 1]), float(mesh.nodes[e]), e)


def mesh_elements(mesh: Mesh) -> list[Element]:
    return [mesh_element(mesh, e) for e in range(1, mesh.n + 1)]


@dataclass(frozen=True, eq=False)
class LocalSystem:
    """Element matrices and force: mass and stiffness 2x2 blocks, 2-vector force.

    Both blocks are symmetric with equal diagonal entries, so the combined
    matrix is symmetric about both diagonals.
    """

    mass: np.ndarray
    stiffness: np.ndarray
    force: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        """Combined element matrix (mass + stiffness)."""
        return self.mass + self.stiffness


def shape_values(elem: Element, s: float) -> tuple[float, float]:
    """Values of the two hat functions at s; they are nonnegative and sum to 1."""
    if not elem.left <= s <= elem.right:
        raise ValueError("s outside the element")
    tau = elem.length
    return (elem.right - s) / tau, (s - elem.left) / tau


def local_matrices(elem: Element, mass: float, stiffness: float) -> LocalSystem:
    """Closed-form element blocks; the force entry is left at zero.

    Zero mass or stiffness is accepted here (useful for isolating one block);
    positivity of the physical constants is enforced at the problem level.
    """
    tau = elem.length
    m_blk = (mass / tau) * np.array([[1.0, -1.0], [-1.0, 1.0]])
    k_blk = (stiffness * tau / 3.0) * np.array([[0.5, 1.0], [1.0, 0.5]])
    return LocalSystem(mass=m_blk, stiffness=k_blk, force=np.zeros(2))


def sinusoid_force_pair(left, right, length, amplitude, frequency):
    """Nodal forces for f(s) = amplitude*sin(frequency*s), array-friendly.

    Accepts scalars or equally shaped arrays for left/right/length and
    returns the pair (first entry, second entry). The two entries add up to
    the integral of f over the element (partition of unity).
    """
    c = amplitude / frequency
    d = amplitude / (length * frequency**2)
    swing = np.sin(frequency * right) - np.sin(frequency * left)
    first = -c * np.cos(frequency * right) + d * swing
    second = c * np.cos(frequency * left) - d * swing
    return first, second


def local_force_sinusoid_closed(elem: Element, amplitude: float, frequency: float) -> np.ndarray:
    """Closed-form nodal force for sinusoidal forcing on one element."""
    if not frequency > 0.0:
        raise ValueError("frequency must be positive")
    first, second = sinusoid_force_pair(
        elem.left, elem.right, elem.length, amplitude, frequency
    )
    return np.array([float(first), float(second)])


def local_force(
    elem: Element, forcing: Forcing, quad: QuadratureSpec = DEFAULT_QUADRATURE
) -> np.ndarray:
    """Nodal force 2-vector  integral_0^tau f(s_e + s) N_i(s_{e+1} - s) ds.

    Sinusoids use the closed form; anything else goes through convolution
    quadrature. The reversed-argument hat functions are plain linear ramps
    on the element, so no breakpoints are needed.
    """
    if isinstance(forcing, ZeroForcing):
        return np.zeros(2)
    if isinstance(forcing, SinusoidForcing):
        return local_force_sinusoid_closed(elem, forcing.amplitude, forcing.frequency)
    tau = elem.length

    def hat_first(x: float) -> float:
        return (elem.right - x) / tau

    def hat_second(x: float) -> float:
        return (x - elem.left) / tau

    return np.array(
        [
            convolve_shifted(forcing, hat_first, elem.left, elem.right, quad),
            convolve_shifted(forcing, hat_second, elem.left, elem.right, quad),
        ]
    )


def evaluate_local_functional(
    elem: Element,
    u1: float,
    u2: float,
    mass: float,
    stiffness: float,
    forcing: Forcing,
    f1: float,
    f2: float,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Quadratic element functional at end displacements (u1, u2).

    Returns 0.5 u.K u - F.u - f2*u1 + f1*u2, where K and F are the element
    matrix and nodal force, and f1, f2 are the end-impulse coefficients of
    the left and right Dirac terms as they appear in the functional. Its
    gradient vanishes exactly when K u = F + (f2, -f1).
    """
    system = local_matrices(elem, mass, stiffness)
    force = local_force(elem, forcing, quad)
    u = np.array([u1, u2])
    return float(0.5 * u @ system.matrix @ u - force @ u - f2 * u1 + f1 * u2)
