"""Eigenstates of the arrival operator collapse at the origin at their eigenvalue.

A positive-tau eigenstate of T_gamma = -T^gamma, evolved under the box
Hamiltonian, gathers almost all of its probability into |q| <= l/4 around
t = tau. Its conjugate is the -tau eigenstate and runs the same film
backwards.
"""
import math

import numpy as np

from ccr_forge import SystemConfig, build_toa_matrix, collapse_series, toa_spectrum
from ccr_forge.arrival import mid_positive_state, time_reversal_mismatch

cfg = SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=64)
states = toa_spectrum(build_toa_matrix(cfg, arrival=True).matrix)
psi = mid_positive_state(states)
partner = min(states, key=lambda s: abs(s.tau + psi.tau))
print(f"{len(states)} eigenstates; chosen tau = {psi.tau:.6e}, partner tau = {partner.tau:.6e}")

t = np.linspace(0.0, 2 * psi.tau, 401)
fwd = collapse_series(psi, cfg, t)
bwd = collapse_series(partner, cfg, -t)
for n in range(0, 401, 50):
    bar = "#" * int(40 * fwd.mass_w[n])
    print(f"t/tau = {t[n] / psi.tau:4.2f}  mass(|q|<=l/4) = {fwd.mass_w[n]:.3f}  {bar}")
at_tau = collapse_series(psi, cfg, [psi.tau])
print(f"at t = tau: mass {at_tau.mass_w[0]:.4f}, <q> = {at_tau.q_mean[0]:+.2e}")
print(f"time-reversal mismatch {time_reversal_mismatch(fwd, bwd):.1e}, "
      f"probability drift {fwd.max_probability_drift():.1e}")
