"""The passage-time pair only obeys the CCR on a closed subspace.

Vectors in it have zero mean and vanish with their derivative at the walls.
The bump d/dq (q^2 - l^2)^4 is one of them; its CCR residual shrinks as the
truncation grows, while the constant function (the normal of the subspace)
keeps a finite norm.
"""
import math

import numpy as np

from ccr_forge import SystemConfig, build_system, build_toa_matrix, bump_domain_sample, ccr_residual
from ccr_forge.ccrlab import classify_category
from ccr_forge.confined import constant_coefficients

base = SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=32)
for K in (32, 64, 128):
    cfg = base.with_K(K)
    T = build_toa_matrix(cfg).matrix
    phi = bump_domain_sample(4, cfg)
    r = ccr_residual(T, build_system(cfg).H, phi)
    c = np.linalg.norm(constant_coefficients(cfg))
    print(f"K={K:4d}: bump residual {r:.3e}   ||c|| = {c:.6f}   (sqrt(2l) = {math.sqrt(2):.6f})")

print("category of the bump domain:", classify_category(base, "closed_bump", [32, 64, 128]))
