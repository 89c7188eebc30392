# Stability of the one-step recurrence. The scheme propagates neutrally
# (both amplification eigenvalues on the unit circle) for steps below
# sqrt(12 m / k), about 0.551 natural periods, and grows geometrically
# beyond. The sweep shows max |lambda| crossing 1 at the predicted step, and
# two marches illustrate bounded versus exploding trajectories.
import numpy as np

from convfem import (
    OscillatorProblem,
    amplification_eigenvalues,
    march,
    stability_limit,
)

m, k = 1.0, 9.0
critical = stability_limit(m, k)
period = 2.0 * np.pi / 3.0
print(f"critical step: {critical:.6f} s = {critical / period:.4f} periods")
print()
print("  tau     max|lambda|")
for tau in (0.2, 0.5, 0.8, 1.0, 1.1, 1.15, 1.1547, 1.16, 1.2, 1.5):
    lam1, lam2 = amplification_eigenvalues(m, k, tau)
    marker = "  <- limit" if abs(tau - critical) < 1e-3 else ""
    print(f"{tau:>6.4f}   {max(abs(lam1), abs(lam2)):.9f}{marker}")

print()
problem = OscillatorProblem(m, k, 0.0, 2.0, 500.0)
stable = march(problem, 0.5, 1000)
print(f"tau = 0.5 for 1000 steps: max |u| = {np.max(np.abs(stable.displacements)):.4f}")

import warnings

with warnings.catch_warnings():
    warnings.simplefilter("ignore")  # the growth below is intentional
    wild = march(problem, 1.2, 200)
print(f"tau = 1.2 for  200 steps: max |u| = {np.max(np.abs(wild.displacements)):.4e}")
print("growth by design: the eigenvalue pair turned real with max|lambda| > 1")
