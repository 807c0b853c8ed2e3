"""exp(-i eps T_c) is not an energy shift.

If every operator conjugate to H generated translations of energy, then
exp(-i eps T_c) phi_0 would be an eigenvector with energy E_0 + eps. It is
instead spread over several eigenvectors, and the spectrum of H (bounded
below) is untouched by the conjugation.
"""
import math

import numpy as np

from ccr_forge import SystemConfig, build_system, characteristic_time_operator, pauli_falsifier

cfg = SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=64)
T = characteristic_time_operator(cfg).matrix
H = build_system(cfg).H
for eps in (0.0, 0.1, 1.0):
    rep = pauli_falsifier(T, H, eps, cfg.basis.index(0))
    top = np.sort(rep.overlaps)[::-1][:4]
    print(f"eps = {eps}: overlaps {np.round(top, 4)}, {rep.n_above_threshold} above 1e-3, "
          f"||H psi - (E0+eps) psi|| = {rep.eigen_residual:.3f}, spectrum shift {rep.spectrum_shift:.1e}")
print("checks at eps = 1:", rep.checks())
