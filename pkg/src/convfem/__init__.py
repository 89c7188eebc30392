"""Finite elements in time for the driven harmonic oscillator.

The package discretizes the initial value problem

    m u''(s) + k u(s) = f(s),   u(0) = u0,   u'(0) = v0

with linear finite elements over the TIME axis. The variational principle
behind the discretization replaces the usual L2 inner product with a
convolution pairing, which makes the initial conditions part of the
stationarity conditions instead of side constraints. Two solution paths
come out of the same element system:

* a global solve of an anti-banded linear system whose nonzero entries lie
  about the second diagonal (:func:`fem_trajectory`), and
* an explicit one-step recurrence on the (displacement, velocity) state
  (:func:`march`), neutrally stable for steps below sqrt(12 m / k).

Both reproduce each other to near machine precision on matching meshes.
Closed-form reference solutions live in :mod:`convfem.exact`, and
:mod:`convfem.convolution` provides the quadrature used to cross-check
every closed-form matrix entry against its defining integral.
"""

from .assembly import (
    GlobalSystem,
    ReducedSystem,
    assemble_global,
    evaluate_global_functional,
    global_system_direct,
    hat_band_values,
    hat_derivative_band_values,
    impose_initial_conditions,
    reversal_form,
)
from .convolution import DEFAULT_QUADRATURE, QuadratureSpec, convolve, convolve_shifted
from .element import (
    Element,
    LocalSystem,
    evaluate_local_functional,
    local_force,
    local_force_sinusoid_closed,
    local_matrices,
    mesh_element,
    mesh_elements,
    shape_values,
    sinusoid_force_pair,
)
from .exact import ErrorReport, error_metrics, exact_solution
from .marching import (
    StabilityWarning,
    StateVector,
    StepMatrices,
    amplification_eigenvalues,
    march,
    stability_limit,
    step_matrices,
)
from .model import (
    ZERO,
    Forcing,
    Mesh,
    MeshError,
    MeshWarning,
    OscillatorProblem,
    PointwiseForcing,
    SinusoidForcing,
    ZeroForcing,
    natural_frequency,
    uniform_mesh,
    validate_mesh,
)
from .solver import (
    SingularSystemError,
    Trajectory,
    fem_trajectory,
    recover_final_velocity,
    solve_reduced,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_QUADRATURE",
    "ZERO",
    "Element",
    "ErrorReport",
    "Forcing",
    "GlobalSystem",
    "LocalSystem",
    "Mesh",
    "MeshError",
    "MeshWarning",
    "OscillatorProblem",
    "PointwiseForcing",
    "QuadratureSpec",
    "ReducedSystem",
    "SingularSystemError",
    "SinusoidForcing",
    "StabilityWarning",
    "StateVector",
    "StepMatrices",
    "Trajectory",
    "ZeroForcing",
    "amplification_eigenvalues",
    "assemble_global",
    "convolve",
    "convolve_shifted",
    "error_metrics",
    "evaluate_global_functional",
    "evaluate_local_functional",
    "exact_solution",
    "fem_trajectory",
    "global_system_direct",
    "hat_band_values",
    "hat_derivative_band_values",
    "impose_initial_conditions",
    "local_force",
    "local_force_sinusoid_closed",
    "local_matrices",
    "march",
    "mesh_element",
    "mesh_elements",
    "natural_frequency",
    "recover_final_velocity",
    "reversal_form",
    "shape_values",
    "sinusoid_force_pair",
    "solve_reduced",
    "stability_limit",
    "step_matrices",
    "uniform_mesh",
    "validate_mesh",
]
