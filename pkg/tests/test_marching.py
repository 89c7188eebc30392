"""One-step recurrence: updates, propagator form, stability boundary."""

import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from convfem import (
    OscillatorProblem,
    PointwiseForcing,
    SinusoidForcing,
    StabilityWarning,
    StateVector,
    amplification_eigenvalues,
    exact_solution,
    fem_trajectory,
    march,
    stability_limit,
    step_matrices,
    uniform_mesh,
)

# Frozen: amplification eigenvalue for m=1, k=9, tau=0.1 (quadratic formula,
# coefficient 9.7/10.15, cross-checked at high precision).
EIG_RE = 0.95566502463054187
EIG_IM = 0.29445604204686614


def test_step_matrices_entries():
    sm = step_matrices(1.0, 9.0, 0.1)
    assert np.allclose(sm.a, [[-9.7, 1.0], [10.15, 0.0]], atol=1e-12)
    assert np.allclose(sm.b, [[-10.15, 0.0], [9.7, 1.0]], atol=1e-12)
    assert sm.tau == 0.1


def test_step_matrix_always_invertible():
    for tau in (0.01, 0.5, 2.0, 50.0):
        sm = step_matrices(1.0, 9.0, tau)
        det = np.linalg.det(sm.a)
        assert det == pytest.approx(-1.0 * (1.0 / tau + 9.0 * tau / 6.0), rel=1e-12)
        assert det != 0.0


def test_step_matrices_small_stiffness_limit():
    sm = step_matrices(1.0, 1e-12, 1.0)
    assert np.allclose(sm.a, [[-1.0, 1.0], [1.0, 0.0]], atol=1e-9)
    assert np.allclose(sm.b, [[-1.0, 0.0], [1.0, 1.0]], atol=1e-9)


def test_state_vector_requires_finite_entries():
    StateVector(1.0, -2.0)
    with pytest.raises(ValueError):
        StateVector(math.inf, 0.0)
    with pytest.raises(ValueError):
        StateVector(0.0, math.nan)


def test_stability_limit_values():
    assert stability_limit(1.0, 9.0) == pytest.approx(math.sqrt(12.0) / 3.0, abs=1e-15)
    assert stability_limit(1.0, 12.0) == pytest.approx(1.0, abs=1e-15)
    assert stability_limit(3.0, 1.0) == pytest.approx(6.0, abs=1e-15)
    # about 0.551 natural periods
    ratio = stability_limit(1.0, 9.0) / (2.0 * math.pi / 3.0)
    assert ratio == pytest.approx(0.5513, abs=1e-4)


def test_discriminant_vanishes_at_the_limit():
    tau = stability_limit(1.0, 9.0)
    lam1, lam2 = amplification_eigenvalues(1.0, 9.0, tau)
    assert abs(lam1 - lam2) < 1e-6  # double root up to roundoff of tau^2
    assert abs(lam1) == pytest.approx(1.0, abs=1e-12)


def test_amplification_eigenvalues_below_limit():
    lam1, lam2 = amplification_eigenvalues(1.0, 9.0, 0.1)
    assert lam1 == pytest.approx(complex(EIG_RE, EIG_IM), abs=1e-12)
    assert lam2 == pytest.approx(complex(EIG_RE, -EIG_IM), abs=1e-12)
    assert abs(lam1) == pytest.approx(1.0, abs=1e-12)
    assert abs(lam2) == pytest.approx(1.0, abs=1e-12)


def test_amplification_eigenvalues_above_limit():
    lam1, lam2 = amplification_eigenvalues(1.0, 9.0, 1.2)
    assert abs(lam1.imag) == 0.0 and abs(lam2.imag) == 0.0
    assert max(abs(lam1), abs(lam2)) > 1.0 + 1e-6


@settings(max_examples=40, deadline=None)
@given(
    m=st.floats(0.1, 10.0),
    k=st.floats(0.1, 50.0),
    tau=st.floats(0.001, 5.0),
)
def test_eigenvalue_product_is_one(m, k, tau):
    lam1, lam2 = amplification_eigenvalues(m, k, tau)
    assert abs(lam1 * lam2 - 1.0) < 1e-9


def test_phase_tracks_frequency_for_small_steps():
    lam1, _ = amplification_eigenvalues(1.0, 9.0, 0.01)
    assert cmath.phase(lam1) == pytest.approx(0.03, abs=1e-5)


def test_single_step_hand_values():
    problem = OscillatorProblem(1.0, 9.0, 0.0, 2.0, 1.0)
    traj = march(problem, 0.1, 1)
    assert traj.displacements[1] == pytest.approx(2.0 / 10.15, abs=1e-15)
    assert traj.velocities[1] == pytest.approx(9.7 * 2.0 / 10.15, abs=1e-14)
    # close to the closed-form state ((2/3) sin 0.3, 2 cos 0.3)
    assert traj.displacements[1] == pytest.approx(exact_solution(problem, 0.1), abs=1e-3)
    assert traj.velocities[1] == pytest.approx(2.0 * math.cos(0.3), abs=1e-3)


def test_march_matches_fem_free_vibration():
    problem = OscillatorProblem(1.0, 9.0, 0.0, 2.0, 1.0)
    one = march(problem, 0.1, 10)
    fem = fem_trajectory(problem, uniform_mesh(1.0, 10))
    assert one.displacements[-1] == pytest.approx(0.1018, abs=5e-5)
    assert np.max(np.abs(one.displacements - fem.displacements)) < 1e-10
    assert one.scheme == "onestep"
    assert one.velocities is not None


def test_march_matches_fem_forced():
    problem = OscillatorProblem(1.0, 9.0, 0.0, 0.0, 10.0, SinusoidForcing(5.0, 3.6))
    one = march(problem, 0.05, 200)
    fem = fem_trajectory(problem, uniform_mesh(10.0, 200))
    assert np.max(np.abs(one.displacements - fem.displacements)) <= 1e-10


def test_free_vibration_is_a_matrix_power():
    problem = OscillatorProblem(1.0, 9.0, 0.7, -1.3, 3.0)
    tau = 0.1
    traj = march(problem, tau, 20)
    sm = step_matrices(1.0, 9.0, tau)
    propagator = np.linalg.solve(sm.a, sm.b)
    state = np.array([0.7, -1.3])
    for i in range(1, 21):
        state = propagator @ state
        assert traj.displacements[i] == pytest.approx(state[0], abs=1e-10)
        assert traj.velocities[i] == pytest.approx(state[1], abs=1e-10)


def _neutral_displacement_amplitude(mass, stiffness, tau, u0, v0):
    """Invariant displacement amplitude of the stable recurrence.

    Independent of the march loop: diagonalize the one-step propagator and
    read the amplitude off the conjugate eigenpair expansion of (u0, v0).
    """
    sm = step_matrices(mass, stiffness, tau)
    propagator = np.linalg.solve(sm.a, sm.b)
    evals, evecs = np.linalg.eig(propagator)
    assert np.allclose(np.abs(evals), 1.0, atol=1e-12)
    coef = np.linalg.solve(evecs, np.array([u0, v0], dtype=complex))
    return 2.0 * abs(coef[0] * evecs[0, 0])


def test_march_bounded_below_limit():
    # neutral propagation: over 10^4 steps the displacement never exceeds
    # the closed-form amplitude of the recurrence itself (no growth at all)
    problem = OscillatorProblem(1.0, 9.0, 0.0, 2.0, 5000.0)
    traj = march(problem, 0.5, 10_000)
    amplitude = _neutral_displacement_amplitude(1.0, 9.0, 0.5, 0.0, 2.0)
    assert amplitude == pytest.approx(0.7396002616336387, abs=1e-12)
    assert np.max(np.abs(traj.displacements)) <= 1.01 * amplitude
    # the coarse step overshoots the continuous amplitude by ~11 percent;
    # that is a discretization amplitude error, not growth
    assert amplitude == pytest.approx((2.0 / 3.0) * 1.109400, abs=1e-5)


def test_march_diverges_above_limit_with_warning():
    problem = OscillatorProblem(1.0, 9.0, 0.0, 2.0, 240.0)
    with pytest.warns(StabilityWarning):
        traj = march(problem, 1.2, 200)
    assert np.max(np.abs(traj.displacements)) > 100.0 * (2.0 / 3.0)


def test_march_pointwise_forcing_matches_closed_form_route():
    f0, freq = 5.0, 3.6
    closed = OscillatorProblem(1.0, 9.0, 0.0, 0.0, 2.0, SinusoidForcing(f0, freq))
    wrapped = OscillatorProblem(
        1.0, 9.0, 0.0, 0.0, 2.0, PointwiseForcing(lambda s: f0 * math.sin(freq * s))
    )
    a = march(closed, 0.05, 40)
    b = march(wrapped, 0.05, 40)
    assert np.max(np.abs(a.displacements - b.displacements)) < 1e-9


def test_march_argument_checks():
    problem = OscillatorProblem(1.0, 9.0, 0.0, 2.0, 1.0)
    with pytest.raises(ValueError):
        march(problem, 0.0, 5)
    with pytest.raises(ValueError):
        march(problem, 0.1, 0)
    with pytest.raises(ValueError):
        step_matrices(0.0, 9.0, 0.1)
    with pytest.raises(ValueError):
        stability_limit(1.0, 0.0)
    with pytest.raises(ValueError):
        amplification_eigenvalues(1.0, 9.0, 0.0)


def test_march_times_grid():
    problem = OscillatorProblem(1.0, 9.0, 0.0, 2.0, 1.0)
    traj = march(problem, 0.25, 4)
    assert np.allclose(traj.times, [0.0, 0.25, 0.5, 0.75, 1.0], atol=0)
