"""Closed-form solutions of the oscillator and error reports against them.

Used as the reference ("Exact") column when judging either numerical
scheme. Free vibration and sinusoidal forcing (including the resonant case)
have closed forms; pointwise forcing does not and is rejected here, so those
runs are validated by scheme-versus-scheme consistency only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import OscillatorProblem, PointwiseForcing, SinusoidForcing, ZeroForcing
from .solver import Trajectory

__all__ = ["ErrorReport", "exact_solution", "error_metrics"]

# Relative detuning below which the sinusoid is treated as resonant.
_RESONANCE_REL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ErrorReport:
    """Signed per-node error of a trajectory against the closed form."""

    at_times: np.ndarray
    per_node_error: np.ndarray

    @property
    def max_abs_error(self) -> float:
        return float(np.max(np.abs(self.per_node_error)))


def exact_solution(problem: OscillatorProblem, s):
    """Closed-form displacement at time s (scalar or array).

    Free:           u0 cos(w s) + (v0/w) sin(w s)
    Driven, W != w: adds C sin(W s) with C = f0 / (m (w^2 - W^2)) and the
                    matching correction to the sine coefficient.
    Resonant:       secular term -(f0/(2 m w)) s cos(w s); linear growth.

    The resonance branch is taken for |W - w| <= 1e-12 * w; no uniformly
    accurate near-resonance blend is attempted.
    """
    s_arr = np.asarray(s, dtype=float)
    omega = problem.omega
    u0 = problem.initial_displacement
    v0 = problem.initial_velocity
    forcing = problem.forcing

    if isinstance(forcing, ZeroForcing):
        u = u0 * np.cos(omega * s_arr) + (v0 / omega) * np.sin(omega * s_arr)
    elif isinstance(forcing, SinusoidForcing):
        f0 = forcing.amplitude
        drive = forcing.frequency
        if abs(drive - omega) <= _RESONANCE_REL_TOL * omega:
            sin_coef = v0 / omega + f0 / (2.0 * problem.mass * omega**2)
            u = (
                u0 * np.cos(omega * s_arr)
                + sin_coef * np.sin(omega * s_arr)
                - (f0 / (2.0 * problem.mass * omega)) * s_arr * np.cos(omega * s_arr)
            )
        else:
            c = f0 / (problem.mass * (omega**2 - drive**2))
            u = (
                u0 * np.cos(omega * s_arr)
                + ((v0 - c * drive) / omega) * np.sin(omega * s_arr)
                + c * np.sin(drive * s_arr)
            )
    elif isinstance(forcing, PointwiseForcing):
        raise ValueError("pointwise forcing has no closed-form solution")
    else:
        raise ValueError(f"unsupported forcing type {type(forcing).__name__}")

    if s_arr.ndim == 0:
        return float(u)
    return u


def error_metrics(traj: Trajectory, problem: OscillatorProblem) -> ErrorReport:
    """Signed node errors (computed minus exact) for a trajectory."""
    reference = exact_solution(problem, traj.times)
    return ErrorReport(
        at_times=traj.times.copy(),
        per_node_error=traj.displacements - reference,
    )
