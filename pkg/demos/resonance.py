# Resonance: driving exactly at the natural frequency makes the amplitude
# grow linearly, envelope (f0 / (2 m omega)) t. A slightly detuned drive
# produces beats instead. Both runs use the one-step scheme well inside its
# stability region.
import numpy as np

from convfem import OscillatorProblem, SinusoidForcing, exact_solution, march

m, k, f0 = 1.0, 9.0, 5.0
omega = 3.0
tau = 0.05
t_end = 30.0
steps = round(t_end / tau)

resonant = OscillatorProblem(m, k, 0.0, 0.0, t_end, SinusoidForcing(f0, omega))
beating = OscillatorProblem(m, k, 0.0, 0.0, t_end, SinusoidForcing(f0, 3.6))

res = march(resonant, tau, steps)
beat = march(beating, tau, steps)

print("resonant drive: peak |u| per 5-second window vs envelope (f0/2mw) t")
envelope_rate = f0 / (2.0 * m * omega)
for lo in range(0, 30, 5):
    window = (res.times >= lo) & (res.times <= lo + 5.0)
    peak = np.max(np.abs(res.displacements[window]))
    print(f"  [{lo:>2},{lo + 5:>2}] s: peak = {peak:>7.3f}, envelope at window end = {envelope_rate * (lo + 5):.3f}")

print()
print(f"detuned drive (3.6 rad/s): peak |u| = {np.max(np.abs(beat.displacements)):.3f}")
print("bounded, with the characteristic slow beat between drive and free motion")

rows = ["time,resonant,beating,exact_resonant"]
for i, t in enumerate(res.times):
    rows.append(
        f"{t:.17g},{res.displacements[i]:.17g},{beat.displacements[i]:.17g},"
        f"{exact_solution(resonant, float(t)):.17g}"
    )
with open("resonance.csv", "w", newline="\n") as handle:
    handle.write("\n".join(rows) + "\n")
print("\nwrote resonance.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(11, 4), sharey=False)
    axes[0].plot(res.times, res.displacements, lw=0.8)
    axes[0].plot(res.times, envelope_rate * res.times, "k--", lw=1)
    axes[0].plot(res.times, -envelope_rate * res.times, "k--", lw=1)
    axes[0].set_title("drive at the natural frequency")
    axes[1].plot(beat.times, beat.displacements, lw=0.8)
    axes[1].set_title("detuned drive (beats)")
    for ax in axes:
        ax.set_xlabel("time [s]")
    axes[0].set_ylabel("displacement")
    fig.tight_layout()
    fig.savefig("resonance.png", dpi=150)
    print("wrote resonance.png")
except ImportError:
    pass
