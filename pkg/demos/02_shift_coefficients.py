"""Scalar, vector and tensor shift coefficients across the hyperfine manifold.

Evaluates the closed-form coefficients over a detuning scan, prints the
reference point values, and illustrates the far-detuned behaviour including
the linear vector-to-tensor ratio law.  Saves a figure when matplotlib is
available.
"""
import numpy as np

from nucshift import HalfInteger, asymptotic_b, b_coefficients, hf_energies, offpole_grid

spin = HalfInteger(9)
gamma = 0.0057

# --- point values at the mean of the three levels ----------------------------
en = hf_energies(spin, gamma)
d_ref = sum(en.as_tuple()) / 3.0
bset = b_coefficients(spin, gamma, d_ref)
print(f"detuning {d_ref:+.4f}: b0 = {bset.c0.real:.3f}, "
      f"b1 = {bset.c1.real:.3f}, b2 = {bset.c2.real:.3f}")
print("the scalar shift dominates at this detuning\n")

# --- scan between and beyond the hyperfine lines ------------------------------
grid = offpole_grid(spin, gamma, -8.0, 6.0, 200)
table = np.array([b_coefficients(spin, gamma, d).as_array().real for d in grid])
for d, (b0, b1, b2) in zip(grid[::40], table[::40]):
    print(f"delta = {d:+.3f}:  b0 = {b0:+.4f}  b1 = {b1:+.4f}  b2 = {b2:+.4f}")

# --- ratio law without the quadrupole term ------------------------------------
print("\nvector/tensor ratio is linear in the detuning at zero quadrupole:")
for d in (-4.0, -1.5, 2.0):
    b = b_coefficients(spin, 0.0, d)
    ratio = b.c1.real / b.c2.real
    print(f"  delta = {d:+.1f}: b1/b2 = {ratio:+.3f} (2*delta + 3 = {2 * d + 3:+.3f})")

# --- far-detuned series --------------------------------------------------------
print("\ntruncated far-detuned series vs exact values at delta = 100:")
series = asymptotic_b(spin, gamma, 100.0).as_array().real
exact = b_coefficients(spin, gamma, 100.0).as_array().real
for name, s, x in zip(("b0", "b1", "b2"), series, exact):
    print(f"  {name}: series {s:+.3e}, exact {x:+.3e}")

# --- optional figure -----------------------------------------------------------
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    print("\nmatplotlib not installed; skipping the figure")
else:
    fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    top.plot(grid, table[:, 0], ".", ms=3)
    top.set_ylabel(r"$\bar b_0$")
    top.set_ylim(-8, 8)
    bottom.plot(grid, table[:, 1], ".", ms=3, label=r"$\bar b_1$")
    bottom.plot(grid, table[:, 2], ".", ms=3, label=r"$\bar b_2$")
    bottom.set_ylim(-8, 8)
    bottom.set_xlabel(r"detuning $\bar\Delta$")
    bottom.legend()
    fig.tight_layout()
    fig.savefig("shift_coefficients.png", dpi=150)
    print("\nwrote shift_coefficients.png")
