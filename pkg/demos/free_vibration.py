# Free vibration of a spring-mass system solved with time finite elements.
# A mass released with initial velocity v0 oscillates at omega = sqrt(k/m);
# the demo compares the nodal FEM values against the closed-form motion for
# three step sizes and shows the errors shrinking with refinement.
import numpy as np

from convfem import OscillatorProblem, error_metrics, exact_solution, fem_trajectory, uniform_mesh

m, k = 1.0, 9.0          # omega = 3 rad/s, period about 2.09 s
u0, v0 = 0.0, 2.0        # released from the origin with a kick
t_end = 10.0

problem = OscillatorProblem(m, k, u0, v0, t_end)

print(f"natural frequency = {problem.omega} rad/s, period = {problem.period:.4f} s")
print()
print("displacement at whole-number times, FEM vs closed form")
print("time   tau=0.1     tau=0.05    tau=0.01    exact")
solutions = {}
for tau in (0.1, 0.05, 0.01):
    n = round(t_end / tau)
    solutions[tau] = fem_trajectory(problem, uniform_mesh(t_end, n))
for t in range(1, 11):
    cells = "".join(
        f"{solutions[tau].displacements[round(t / tau)]:>12.4f}" for tau in (0.1, 0.05, 0.01)
    )
    print(f"{t:>4}{cells}{exact_solution(problem, float(t)):>12.4f}")

print()
print("max nodal error by step size")
for tau in (0.1, 0.05, 0.025, 0.0125):
    n = round(t_end / tau)
    traj = fem_trajectory(problem, uniform_mesh(t_end, n))
    print(f"  tau = {tau:<7} max error = {error_metrics(traj, problem).max_abs_error:.6f}")

# optional picture
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fine = np.linspace(0.0, t_end, 2000)
    traj = solutions[0.1]
    plt.figure(figsize=(8, 4))
    plt.plot(fine, exact_solution(problem, fine), "-", label="closed form")
    plt.plot(traj.times, traj.displacements, "o", ms=3, label="FEM, tau=0.1")
    plt.xlabel("time [s]")
    plt.ylabel("displacement")
    plt.legend()
    plt.tight_layout()
    plt.savefig("free_vibration.png", dpi=150)
    print("\nwrote free_vibration.png")
except ImportError:
    pass
