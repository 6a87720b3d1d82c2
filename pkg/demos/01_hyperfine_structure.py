"""Hyperfine structure of the excited j = 1 line.

Walks through the derived constants of the 87Sr-like reference species, the
three dimensionless level energies, and the agreement between the dense
hyperfine Hamiltonian and the closed-form spectrum.
"""
import math

import numpy as np

from nucshift import (
    AtomParams,
    HalfInteger,
    derive_constants,
    hf_energies,
    hf_hamiltonian_matrix,
)

TWO_PI = 2.0 * math.pi

# --- merged dipole constant and relative quadrupole strength -----------------
# The bare constants of the 9/2 reference species (kHz over 2 pi):
params = AtomParams(
    spin=HalfInteger(9),
    ahf_prime=TWO_PI * -260085e3,
    bhf=TWO_PI * -35667e3,
    linewidth=0.0,
    dge_sq=1.0,
)
consts = derive_constants(params)
print(f"A_hf / 2pi = {consts.a_hf / TWO_PI / 1e3:.1f} kHz")
print(f"relative quadrupole strength gamma = {consts.gamma:.6f}")

# --- level energies in units of hbar*A_hf ------------------------------------
for gamma in (0.0, consts.gamma):
    en = hf_energies(params.spin, gamma)
    print(f"gamma = {gamma:.4f}: "
          f"E(i-1) = {en.e_lower:+.4f}, E(i) = {en.e_mid:+.4f}, E(i+1) = {en.e_upper:+.4f}")

# --- dense Hamiltonian reproduces the closed forms ---------------------------
# The product-basis matrix I.J + gamma (I.J)^2 has eigenvalues E_f with
# degeneracy 2f+1; for spin 1/2 only two levels exist (and no quadrupole term),
# the third energy being a formal quantity used by the coefficient denominators.
for spin, gamma in ((HalfInteger(1), 0.0), (HalfInteger(9), consts.gamma)):
    eig = np.linalg.eigvalsh(hf_hamiltonian_matrix(spin, gamma))
    values, counts = np.unique(np.round(eig, 10), return_counts=True)
    labels = ", ".join(f"{v:+.4f} (x{c})" for v, c in zip(values, counts))
    print(f"spin {spin}: spectrum {labels}")
    en = hf_energies(spin, gamma)
    if en.formal_lower:
        print(f"  formal lower energy {en.e_lower:+.4f} is not in the spectrum")
