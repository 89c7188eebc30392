"""Global system assembly for the time FEM scheme.

The global matrix is banded about its second diagonal: with 1-based indices,
entry (i, j) can be nonzero only for i + j in {n+1, n+2, n+3}, and the matrix
is symmetric with respect to that diagonal, K[i, j] = K[n+2-j, n+2-i]. Both
facts come from the convolution bilinear form behind the scheme, which pairs
each node with its mirror about the interval midpoint. The initial-velocity
impulse m*v0 consequently lands in the LAST load entry, and element forces
land in reversed row order.

Two independent constructions are provided:

* :func:`assemble_global` sums the per-element systems, merges the equations
  that share an interior end-velocity term, and reverses the equation order.
* :func:`global_system_direct` evaluates the closed-form convolutions of the
  global hat functions and their derivatives.

On a valid (length-symmetric) mesh the two agree entrywise to roundoff,
which the test suite checks against convolution quadrature as well.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .convolution import DEFAULT_QUADRATURE, QuadratureSpec
from .element import local_force, mesh_elements, sinusoid_force_pair
from .model import Mesh, OscillatorProblem, SinusoidForcing, ZeroForcing, validate_mesh

__all__ = [
    "GlobalSystem",
    "ReducedSystem",
    "assemble_global",
    "impose_initial_conditions",
    "global_system_direct",
    "hat_band_values",
    "hat_derivative_band_values",
    "reversal_form",
    "evaluate_global_functional",
]


@dataclass(frozen=True, eq=False)
class GlobalSystem:
    """(n+1) x (n+1) anti-banded system in compact storage.

    With 0-based indices the three bands sit at column n-1-i, n-i and n+1-i
    of row i:

    * ``anti_upper[i]  = A[i, n-1-i]``  for i in [0, n-1]
    * ``anti_diag[i]   = A[i, n-i]``    for i in [0, n]   (the second diagonal)
    * ``anti_lower[p]  = A[p+1, n-p]``  for p in [0, n-1]

    ``load`` holds the known part of the right-hand side. The first equation
    also contains the (unknown until solved) final momentum -m*u'(horizon);
    that term is NOT a number in ``load[0]`` and is tracked by the
    ``end_momentum_unknown`` flag. Imposing the initial displacement drops
    that equation; :func:`convfem.solver.recover_final_velocity` rebuilds the
    term afterwards, which is why the oscillator mass is kept here.
    """

    anti_upper: np.ndarray
    anti_diag: np.ndarray
    anti_lower: np.ndarray
    load: np.ndarray
    mass: float
    end_momentum_unknown: bool = True

    @property
    def n(self) -> int:
        return self.anti_diag.size - 1

    def dense(self) -> np.ndarray:
        """Materialize the full matrix (meant for small n)."""
        n = self.n
        full = np.zeros((n + 1, n + 1))
        rows = np.arange(n)
        full[rows, n - 1 - rows] = self.anti_upper
        full[np.arange(n + 1), n - np.arange(n + 1)] = self.anti_diag
        full[rows + 1, n - rows] = self.anti_lower
        return full


@dataclass(frozen=True, eq=False)
class ReducedSystem:
    """n x n system in the unknowns U_2..U_{n+1} after imposing u(0) = u0.

    Obtained from the global system by dropping the first row (the equation
    with the unknown end momentum) and the first column (the known first
    displacement, folded into the load). Band layout, 0-based:

    * ``anti_upper[p] = R[p, n-3-p]``
    * ``anti_diag[p]  = R[p, n-2-p]``
    * ``anti_lower[p] = R[p, n-1-p]``

    Read bottom-up, each equation introduces exactly one new unknown with
    coefficient ``anti_lower``; those are the pivots of the O(n) solve.
    """

    anti_upper: np.ndarray
    anti_diag: np.ndarray
    anti_lower: np.ndarray
    load: np.ndarray
    u0: float

    @property
    def n(self) -> int:
        return self.anti_lower.size

    def dense(self) -> np.ndarray:
        n = self.n
        full = np.zeros((n, n))
        rows = np.arange(n)
        full[rows, n - 1 - rows] = self.anti_lower
        if n >= 2:
            rows = np.arange(n - 1)
            full[rows, n - 2 - rows] = self.anti_diag
        if n >= 3:
            rows = np.arange(n - 2)
            full[rows, n - 3 - rows] = self.anti_upper
        return full

    def matvec(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        flipped = x[::-1]
        out = self.anti_lower * flipped
        n = self.n
        if n >= 2:
            out[: n - 1] += self.anti_diag * flipped[1:]
        if n >= 3:
            out[: n - 2] += self.anti_upper * flipped[2:]
        return out


def _element_force_arrays(mesh: Mesh, problem: OscillatorProblem, quad: QuadratureSpec):
    """Per-element nodal force components (first, second), 0-based element order."""
    n = mesh.n
    forcing = problem.forcing
    if isinstance(forcing, ZeroForcing):
        zero = np.zeros(n)
        return zero, zero.copy()
    if isinstance(forcing, SinusoidForcing):
        return sinusoid_force_pair(
            mesh.nodes[:-1],
            mesh.nodes[1:],
            mesh.element_lengths,
            forcing.amplitude,
            forcing.frequency,
        )
    pairs = np.array([local_force(el, forcing, quad) for el in mesh_elements(mesh)])
    return pairs[:, 0], pairs[:, 1]


def _combine_load(first: np.ndarray, second: np.ndarray, momentum: float) -> np.ndarray:
    """Reversed-row load: row i takes first[n-i] + second[n+1-i] (1-based)."""
    n = first.size
    load = np.zeros(n + 1)
    load[:n] += first[::-1]
    load[1:] += second[::-1]
    load[n] += momentum
    return load


def assemble_global(
    mesh: Mesh, problem: OscillatorProblem, quad: QuadratureSpec = DEFAULT_QUADRATURE
) -> GlobalSystem:
    """Sum the element systems and reverse the equation order.

    Adding the two equations that share each interior end-velocity term
    cancels all unknown interior momenta; reversing the resulting equations
    produces the anti-banded matrix and the upside-down load, with m*v0 in
    the last entry and the unknown final momentum flagged out of row one.
    """
    validate_mesh(mesh)
    lengths = mesh.element_lengths
    m, k = problem.mass, problem.stiffness
    diag_entry = m / lengths + k * lengths / 6.0
    off_entry = -m / lengths + k * lengths / 3.0

    n = mesh.n
    anti_upper = diag_entry[::-1].copy()
    anti_lower = diag_entry[::-1].copy()
    anti_diag = np.zeros(n + 1)
    anti_diag[:n] += off_entry[::-1]
    anti_diag[1:] += off_entry[::-1]

    first, second = _element_force_arrays(mesh, problem, quad)
    load = _combine_load(first, second, problem.mass * problem.initial_velocity)
    return GlobalSystem(anti_upper, anti_diag, anti_lower, load, mass=problem.mass)


def impose_initial_conditions(gs: GlobalSystem, u0: float) -> ReducedSystem:
    """Drop the first equation and fold the known first displacement into the load.

    Only the last two equations couple to the first displacement (band
    structure), so only the last two load entries change.
    """
    n = gs.n
    load = gs.load[1:].copy()
    if n >= 2:
        load[n - 2] -= gs.anti_upper[n - 1] * u0
    load[n - 1] -= gs.anti_diag[n] * u0
    return ReducedSystem(
        anti_upper=gs.anti_upper[1 : n - 1].copy(),
        anti_diag=gs.anti_diag[1:n].copy(),
        anti_lower=gs.anti_lower.copy(),
        load=load,
        u0=u0,
    )


def hat_band_values(mesh: Mesh):
    """Closed-form convolutions of global hat-function pairs, as bands.

    Returns (upper, diag, lower) in the :class:`GlobalSystem` band layout.
    With tau_e the element lengths, the nonzero values are tau_i/6 above the
    second diagonal, (tau_{i-1} + tau_i)/3 on it, and tau_{i-1}/6 below it
    (end rows drop the missing element). Valid on length-symmetric meshes,
    where reversing the argument of a hat function maps it onto the hat of
    the mirror node.
    """
    lengths = mesh.element_lengths
    n = mesh.n
    upper = lengths / 6.0
    lower = lengths / 6.0
    diag = np.zeros(n + 1)
    diag[:n] += lengths / 3.0
    diag[1:] += lengths / 3.0
    return upper, diag, lower


def hat_derivative_band_values(mesh: Mesh):
    """Closed-form convolutions of hat-derivative pairs, as bands.

    Reversing the argument flips the sign of the derivative, so relative to
    the ordinary overlap integrals every sign is inverted: +1/tau_i above the
    second diagonal, -(1/tau_{i-1} + 1/tau_i) on it, +1/tau_{i-1} below.
    """
    lengths = mesh.element_lengths
    n = mesh.n
    upper = 1.0 / lengths
    lower = 1.0 / lengths
    diag = np.zeros(n + 1)
    diag[:n] -= 1.0 / lengths
    diag[1:] -= 1.0 / lengths
    return upper, diag, lower


def global_system_direct(
    mesh: Mesh, problem: OscillatorProblem, quad: QuadratureSpec = DEFAULT_QUADRATURE
) -> GlobalSystem:
    """Build the global system straight from the global shape functions.

    Every matrix entry is mass * [derivative pair] + stiffness * [hat pair]
    using the closed-form band values above; no element summation is
    involved. Requires a length-symmetric mesh (the closed forms rest on the
    mirror-node identity) and must agree with :func:`assemble_global` up to
    roundoff.
    """
    validate_mesh(mesh)
    m, k = problem.mass, problem.stiffness
    up_h, di_h, lo_h = hat_band_values(mesh)
    up_d, di_d, lo_d = hat_derivative_band_values(mesh)

    first, second = _element_force_arrays(mesh, problem, quad)
    load = _combine_load(first, second, problem.mass * problem.initial_velocity)
    return GlobalSystem(
        anti_upper=m * up_d + k * up_h,
        anti_diag=m * di_d + k * di_h,
        anti_lower=m * lo_d + k * lo_h,
        load=load,
        mass=problem.mass,
    )


def reversal_form(x, y) -> float:
    """Bilinear form pairing each coordinate with its mirror: sum_i x_i * y_{N+1-i}.

    This is the finite-dimensional counterpart of the convolution pairing;
    the global matrix is symmetric with respect to it.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("reversal_form needs two equal-length vectors")
    return float(np.dot(x, y[::-1]))


def evaluate_global_functional(
    mesh: Mesh,
    problem: OscillatorProblem,
    displacements,
    quad: QuadratureSpec = DEFAULT_QUADRATURE,
) -> float:
    """Discrete quadratic functional 0.5 U.K U - F.U over the free unknowns.

    `displacements` is the full nodal vector including the fixed first entry
    u(0); the value is computed on the reduced system built from the direct
    global construction, so its gradient with respect to U_2..U_{n+1}
    vanishes at the finite element solution.
    """
    u = np.asarray(displacements, dtype=float)
    if u.size != mesh.n + 1:
        raise ValueError("displacement vector must have one entry per node")
    u0 = problem.initial_displacement
    scale = max(1.0, abs(u0))
    if abs(u[0] - u0) > 1e-9 * scale:
        raise ValueError("first displacement entry must equal the initial displacement")
    gs = global_system_direct(mesh, problem, quad)
    rs = impose_initial_conditions(gs, u0)
    x = u[1:]
    return float(0.5 * x @ rs.matvec(x) - rs.load @ x)
