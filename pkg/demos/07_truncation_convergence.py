"""Certifying the Fock-space truncation by growing it until nothing moves.

The cutoff pair is grown by 50% per step until the occupations and all
equal-time correlations change by less than a relative tolerance, which is
the package's substitute for an a-priori truncation choice. The converged
observables are then cross-checked against a deliberately oversized space.
"""

from quadromech import (EffectiveParams, TruncatedSpace, converge_truncation,
                        record)

ep = EffectiveParams(delta=0.0, delta_m=0.0, J=0.406, epsilon=0.05,
                     gamma_c=1.0, gamma_m=0.1, n_th=1e-4)

start = TruncatedSpace(2, 6)
print(f"starting truncation: photon {start.n_photon_max}, "
      f"phonon {start.n_phonon_max} (dim {start.dim})")
rho, report = converge_truncation(ep, start, tol=1e-4)
final = report.final_space
print(f"converged: {report.converged} at photon {final.n_photon_max}, "
      f"phonon {final.n_phonon_max} (dim {final.dim})")
print("last relative changes per observable:")
for name, delta in report.observable_deltas:
    print(f"   {name:>8}: {delta:.2e}")

oversized = TruncatedSpace(final.n_photon_max + 2, final.n_phonon_max + 4)
converged_rec = record(ep, final)
oracle_rec = record(ep, oversized)
print(f"\nconverged space vs oversized ({oversized.n_photon_max}, "
      f"{oversized.n_phonon_max}):")
for name in ("n_a", "n_b", "g2_aa_0", "g2_bb_0", "g2_ab_0"):
    a, b = getattr(converged_rec, name), getattr(oracle_rec, name)
    print(f"   {name:>8}: {a:.10e} vs {b:.10e} "
          f"(rel {abs(a - b) / abs(b):.1e})")
