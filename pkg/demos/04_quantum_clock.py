"""Two-level quantum clocks cut from the characteristic time operator.

In the state (e^{-iE_k t} phi_k - e^{-iE_l t} phi_l)/sqrt(2) the clock reads
<T> = sin(wt)/w and the uncertainty product is |cos wt|/2, touching the
bound 1/2 twice per period 2 pi/|w|.
"""
import math

import numpy as np

from ccr_forge import SystemConfig, build_system, characteristic_time_operator, clock_series, project_two_level, wrap_time

cfg = SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=16)
T = characteristic_time_operator(cfg).matrix
H = build_system(cfg).H

for pair in ((0, 1), (1, 2), (-1, 2)):
    c = project_two_level(T, H, *pair, basis=cfg.basis)
    s = clock_series(c, np.linspace(0, 3 * c.period, 1000))
    print(f"pair {pair}: omega = {c.omega:+.4f}, period = {c.period:.4f}, "
          f"dH = {s.delta_H[0]:.4f}, closed-form error {max(s.max_expectation_error(), s.max_product_error()):.1e}")

c = project_two_level(T, H, 0, 1, basis=cfg.basis)
t = 2.5 * c.period + 0.1
n, tau = wrap_time(t, c.omega)
print(f"t = {t:.4f} reads as tau = {tau:.4f} after n = {n} full periods")
for t in np.linspace(0, c.period, 9):
    s = clock_series(c, [t])
    print(f"  t = {t:7.4f}   <T> = {s.expect_numeric[0]:+.5f}   dT dH = {s.product_numeric[0]:.5f}")
