# The global matrix of the time FEM is unusual: its nonzero entries sit on
# three diagonals about the SECOND (anti) diagonal, it is symmetric with
# respect to that diagonal, and the initial-velocity impulse m*v0 appears in
# the LAST load entry. This demo prints the dense matrix for a small mesh so
# the structure is visible, and verifies the two independent constructions
# (element assembly vs direct closed-form convolutions) coincide.
import numpy as np

from convfem import (
    OscillatorProblem,
    SinusoidForcing,
    assemble_global,
    global_system_direct,
    impose_initial_conditions,
    reversal_form,
    uniform_mesh,
)

np.set_printoptions(precision=3, suppress=True, linewidth=120)

problem = OscillatorProblem(1.0, 9.0, 0.3, 2.0, 1.0, SinusoidForcing(5.0, 3.6))
mesh = uniform_mesh(1.0, 6)

gs = assemble_global(mesh, problem)
dense = gs.dense()
print("global matrix (n = 6):")
print(dense)
print()
print("load vector (known part; the first entry also carries the unknown")
print("end momentum until the first equation is dropped):")
print(gs.load)
print()

mirror = dense[::-1, ::-1].T
print("second-diagonal symmetry: max |K - mirror(K)| =", np.max(np.abs(dense - mirror)))

direct = global_system_direct(mesh, problem)
print("assembly vs direct construction: max gap =", np.max(np.abs(dense - direct.dense())))

# the bilinear form behind the symmetry pairs each coordinate with its mirror
rng = np.random.default_rng(1)
x, y = rng.standard_normal(7), rng.standard_normal(7)
print(
    "reversal-form symmetry of K: B(Kx, y) - B(Ky, x) =",
    reversal_form(dense @ x, y) - reversal_form(dense @ y, x),
)

rs = impose_initial_conditions(gs, problem.initial_displacement)
print()
print("reduced system after imposing u(0):")
print(rs.dense())
print("reduced load (m*v0 folded into the last equation's row):")
print(rs.load)
