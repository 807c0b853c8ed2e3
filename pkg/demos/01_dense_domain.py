"""The characteristic time operator and its dense canonical domain.

For a nondegenerate spectrum, T_c[k, k'] = i / (E_k - E_k') satisfies
[T_c, H] = iI on every vector whose coefficients sum to zero, and fails by
exactly -i times the all-ones matrix everywhere else. No bounded pair can
satisfy the CCR on the whole space; this is what that looks like in
truncation.
"""
import math

import numpy as np

from ccr_forge import SystemConfig, build_system, ccr_residual, characteristic_time_operator, commutator_defect
from ccr_forge.ccrlab import basis_vector, classify_category, dense_domain_sample

cfg = SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=64)
T = characteristic_time_operator(cfg).matrix
H = build_system(cfg).H

print(f"N = {cfg.N} momentum states, E_0 = {H[cfg.basis.index(0), cfg.basis.index(0)].real:.6f}")

worst = max(ccr_residual(T, H, dense_domain_sample(cfg.K, 32, seed)) for seed in range(50))
print(f"zero-sum vectors: worst residual ||[T,H]phi - i phi|| = {worst:.2e}")

r = ccr_residual(T, H, basis_vector(cfg.K, 0))
print(f"single basis vector e_0: residual {r:.6f} = sqrt(N) = {math.sqrt(cfg.N):.6f}")

d = commutator_defect(T, H).defect
print(f"[T,H] - iI: entries equal -i within {d['max_entry_error']:.1e}, "
      f"norm {d['norm']:.10g} (N = {d['N']}), second singular value {d['second_singular_value']:.1e}")

# The normal vector of the zero-sum condition is (1, 1, ...), which grows
# without bound: nothing normalizable is orthogonal to the domain.
verdict = classify_category(cfg, "dense_zero_sum", [16, 64, 256])
print(f"category of the zero-sum domain: {verdict}")
print(f"norm of (1,...,1): {[round(float(np.sqrt(2 * K + 1)), 2) for K in (16, 64, 256)]}")
