"""Direct solve of the reduced anti-banded system and trajectory helpers.

Reversing the equation order of the reduced system turns the anti-band into
a lower triangular band of width three, so one forward-substitution sweep
solves it in O(n): the bottom equation of the original system determines the
first unknown displacement, and every equation above it brings in exactly
one more node. A dense partial-pivot solve backs this up for pathological
inputs flagged by a small pivot.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .assembly import GlobalSystem, ReducedSystem, assemble_global, impose_initial_conditions
from .convolution import DEFAULT_QUADRATURE, QuadratureSpec
from .model import Mesh, OscillatorProblem

__all__ = [
    "SingularSystemError",
    "Trajectory",
    "solve_reduced",
    "fem_trajectory",
    "recover_final_velocity",
]

# |pivot| below this fraction of its row magnitude triggers the dense fallback.
_PIVOT_TOLERANCE = 1e-14
# Largest n for which the dense fallback is attempted at all.
_DENSE_FALLBACK_LIMIT = 4096


class SingularSystemError(RuntimeError):
    """The reduced system is numerically singular."""


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Nodal solution history.

    `velocities` is populated by the one-step scheme only; the finite
    element path solves for displacements alone. `scheme` is "fem" or
    "onestep".
    """

    times: np.ndarray
    displacements: np.ndarray
    velocities: np.ndarray | None = None
    scheme: str = "fem"


def _solve_dense(rs: ReducedSystem) -> np.ndarray:
    if rs.n > _DENSE_FALLBACK_LIMIT:
        raise SingularSystemError(
            "near-singular pivot and system too large for the dense fallback"
        )
    try:
        return np.linalg.solve(rs.dense(), rs.load)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError("reduced system is singular") from exc


def solve_reduced(rs: ReducedSystem) -> np.ndarray:
    """Solve for the unknown displacements U_2..U_{n+1}.

    Forward substitution over the reversed equations; pivots are the
    coefficients on the band below the second diagonal, which are strictly
    positive for any physical mass/stiffness/step. A pivot smaller than
    1e-14 of its row magnitude falls back to a dense partial-pivot solve.
    """
    n = rs.n
    pivots = rs.anti_lower[::-1].tolist()
    prev_coef = rs.anti_diag[::-1].tolist()
    prev2_coef = rs.anti_upper[::-1].tolist()
    rhs = rs.load[::-1].tolist()

    x = [0.0] * n
    for r in range(n):
        pivot = pivots[r]
        row_scale = abs(pivot)
        value = rhs[r]
        if r >= 1:
            coef = prev_coef[r - 1]
            value -= coef * x[r - 1]
            row_scale = max(row_scale, abs(coef))
        if r >= 2:
            coef = prev2_coef[r - 2]
            value -= coef * x[r - 2]
            row_scale = max(row_scale, abs(coef))
        if abs(pivot) < _PIVOT_TOLERANCE * row_scale or pivot == 0.0:
            return _solve_dense(rs)
        x[r] = value / pivot
    return np.array(x)


def fem_trajectory(
    problem: OscillatorProblem, mesh: Mesh, quad: QuadratureSpec = DEFAULT_QUADRATURE
) -> Trajectory:
    """Assemble, impose the initial displacement, solve, and prepend u(0)."""
    gs = assemble_global(mesh, problem, quad)
    rs = impose_initial_conditions(gs, problem.initial_displacement)
    unknowns = solve_reduced(rs)
    displacements = np.concatenate(([problem.initial_displacement], unknowns))
    return Trajectory(times=mesh.nodes.copy(), displacements=displacements, scheme="fem")


def recover_final_velocity(gs: GlobalSystem, displacements) -> float:
    """Rebuild u'(horizon) from the discarded first equation.

    That equation reads  K11*U_n + K12*U_{n+1} = F - m*u'(horizon)  with F
    the known part of the first load entry, so the end velocity follows from
    the last two solved displacements.
    """
    u = np.asarray(displacements, dtype=float)
    if u.size != gs.n + 1:
        raise ValueError("displacement vector must have one entry per node")
    residual = gs.load[0] - gs.anti_upper[0] * u[-2] - gs.anti_diag[0] * u[-1]
    return float(residual / gs.mass)
