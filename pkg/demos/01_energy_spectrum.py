"""Dressed-state ladder of the linearized two-mode model.

With the mechanical drive off and both detunings zero, the Hamiltonian
conserves the charge N = 2 n_photon + n_phonon, so it splits into small
manifolds. Diagonalizing each manifold gives the dressed states whose
splittings explain both the blockade detunings at weak coupling and the
resonance positions at strong coupling.
"""

import math

import numpy as np

from quadromech import (TruncatedSpace, build_h_eff, EffectiveParams,
                        manifold_in_full_space, manifold_spectrum)

J = 1.0

print(f"coupling J = {J} (units of the photon decay rate)\n")
for N in range(5):
    report = manifold_spectrum(J, N)
    labels = ", ".join(f"|{n},{m}>" for n, m in report.basis)
    print(f"manifold N = {N}   basis: {labels}")
    for k, energy in enumerate(report.eigenvalues):
        comps = ", ".join(f"{c.real:+.4f}" for c in report.eigenvectors[:, k])
        print(f"   E = {energy:+.6f}   amplitudes [{comps}]")
    print()

# the same eigenvalues drop out of the full truncated Hamiltonian
space = TruncatedSpace(2, 4)
ep = EffectiveParams(delta=0.0, delta_m=0.0, J=J, epsilon=0.0,
                     gamma_c=1.0, gamma_m=0.1, n_th=0.0)
h = build_h_eff(ep, space).to_dense()
for N in (2, 3, 4):
    idx = manifold_in_full_space(space, N)
    eigs = np.linalg.eigvalsh(h[np.ix_(idx, idx)])
    print(f"full-space manifold N={N} eigenvalues: "
          + ", ".join(f"{e:+.6f}" for e in eigs))

print("\ntransition detunings that block the second excitation:")
e1 = manifold_spectrum(J, 1).eigenvalues[-1]
e2 = manifold_spectrum(J, 2).eigenvalues[-1]
e3 = manifold_spectrum(J, 3).eigenvalues[-1]
print(f"   one phonon -> two-quanta manifold:   {e2 - e1:+.6f}  (= sqrt(2) J "
      f"= {math.sqrt(2) * J:.6f})")
print(f"   two-quanta -> three-quanta manifold:  {e3 - e2:+.6f}  "
      f"(= (sqrt(6)-sqrt(2)) J = {(math.sqrt(6) - math.sqrt(2)) * J:.6f})")
