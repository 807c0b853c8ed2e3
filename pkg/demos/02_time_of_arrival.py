"""The confined time-of-arrival operator, built two independent ways.

The Heaviside-kernel integral operator is projected onto the momentum
basis by triangle-split Gauss-Legendre quadrature; the symmetrized
product (mu/2)(Q P^-1 + P^-1 Q) is exact per element. They agree to
rounding once the quadrature resolves the basis.
"""
import math

import numpy as np

from ccr_forge import SystemConfig, build_toa_matrix
from ccr_forge.timeops import QuadratureResolutionError, singular_value_profile, toa_kernel_matrix

cfg = SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=8)
prod = build_toa_matrix(cfg, "toa_product").matrix
i, j = cfg.basis.index(0), cfg.basis.index(1)
print(f"T^gamma[0][1] = {prod[i, j].imag:.10f} i   (12/(5 pi^2) = {12 / (5 * math.pi**2):.10f})")

for order in (16, 32, 64):
    diff = np.max(np.abs(toa_kernel_matrix(cfg, order) - prod))
    print(f"kernel quadrature order {order:3d}: max |kernel - product| = {diff:.2e}")

try:
    build_toa_matrix(cfg.with_K(40), "toa_kernel", 16)
except QuadratureResolutionError as exc:
    print(f"K=40 at order 16 is refused: {exc}")

big = build_toa_matrix(cfg.with_K(128)).matrix
sv = singular_value_profile(big)
print("singular values decay toward 0 (compactness):", ", ".join(f"{x:.3g}" for x in sv[::32]))
