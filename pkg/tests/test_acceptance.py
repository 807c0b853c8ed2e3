"""Acceptance criteria 1-9, one test each.

Each test records a single PASS/FAIL line, printed in the terminal
summary under "acceptance criteria".
"""
import json
import math
import time
from pathlib import Path

import numpy as np
import pytest

from ccr_forge.arrival import collapse_series, mid_positive_state, time_reversal_mismatch, toa_spectrum
from ccr_forge.ccrlab import (
    bump_domain_sample,
    ccr_residual,
    commutator_defect,
    dense_domain_sample,
    is_monotone,
    pauli_falsifier,
)
from ccr_forge.cli import main
from ccr_forge.clock import clock_series, project_two_level, saturation_times
from ccr_forge.confined import SystemConfig, build_system
from ccr_forge.timeops import build_toa_matrix, characteristic_time_operator, toa_kernel

from conftest import ACCEPTANCE_LINES

pytestmark = pytest.mark.acceptance
CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def ref(K):
    return SystemConfig(l=1.0, mu=1.0, gamma=math.pi / 4, K=K)


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] C{number} {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_c1_dense_ccr():
    start = time.perf_counter()
    cfg = ref(64)
    T = characteristic_time_operator(cfg).matrix
    H = build_system(cfg).H
    worst = max(ccr_residual(T, H, dense_domain_sample(64, 32, seed)) for seed in range(50))
    elapsed = time.perf_counter() - start
    record(1, "exact dense-category CCR", worst <= 1e-12 and elapsed < 5.0,
           f"max residual {worst:.2e} over 50 vectors (<= 1e-12), {elapsed:.2f} s (< 5 s)")


def test_c2_commutator_defect():
    parts = []
    ok = True
    for K in (8, 32, 64):
        cfg = ref(K)
        d = commutator_defect(characteristic_time_operator(cfg).matrix, build_system(cfg).H).defect
        ok &= d["max_entry_error"] <= 1e-12 and d["norm_rel_error"] <= 1e-10
        parts.append(f"K={K} entry {d['max_entry_error']:.1e} norm {d['norm']:.12g}/{d['N']}")
    record(2, "commutator defect = -iJ, norm N", ok, "; ".join(parts))


def test_c3_closed_ccr_convergence():
    start = time.perf_counter()
    res = []
    for K in (32, 64, 128):
        cfg = ref(K)
        T = build_toa_matrix(cfg, "toa_product").matrix
        res.append(ccr_residual(T, build_system(cfg).H, bump_domain_sample(4, cfg, quad_order=64)))
    elapsed = time.perf_counter() - start
    ok = is_monotone(res, 1.2) and res[-1] <= 1e-3 and elapsed < 60.0
    record(3, "closed-category CCR convergence", ok,
           "residuals " + ", ".join(f"{r:.2e}" for r in res) + f" (final <= 1e-3), {elapsed:.2f} s")


def test_c4_cross_construction():
    cfg = ref(8)
    kern = build_toa_matrix(cfg, "toa_kernel", 64).matrix
    prod = build_toa_matrix(cfg, "toa_product").matrix
    diff = float(np.max(np.abs(kern - prod)))
    i, j = cfg.basis.index(0), cfg.basis.index(1)
    hand = 12j / (5 * math.pi**2)
    hand_err = max(abs(prod[i, j] - hand), abs(kern[i, j] - hand))
    record(4, "kernel vs product agreement", diff <= 1e-8 and hand_err <= 1e-8,
           f"max |diff| {diff:.2e}; T[0][1] = {prod[i, j].imag:.10f}i vs 12i/(5 pi^2), err {hand_err:.1e}")


def test_c5_clock():
    cfg = ref(64)
    T = characteristic_time_operator(cfg).matrix
    H = build_system(cfg).H
    worst = worst_sat = 0.0
    for pair in ((0, 1), (1, 2), (-1, 2)):
        c = project_two_level(T, H, *pair, basis=cfg.basis)
        s = clock_series(c, np.linspace(0.0, 3 * c.period, 1000))
        worst = max(worst, s.max_expectation_error(), s.max_product_error())
        sat = clock_series(c, saturation_times(c.omega, 3))
        worst_sat = max(worst_sat, float(np.max(np.abs(sat.product_numeric - 0.5))))
    record(5, "clock closed forms", worst <= 1e-10 and worst_sat <= 1e-10,
           f"max closed-form error {worst:.1e}; saturation error {worst_sat:.1e}")


def test_c6_pauli_falsifier():
    cfg = ref(64)
    T = characteristic_time_operator(cfg).matrix
    H = build_system(cfg).H
    rep = pauli_falsifier(T, H, 1.0, cfg.basis.index(0))
    ok = (rep.max_imag_eigenvalue <= 1e-12
          and rep.spectrum_shift <= 1e-12 * float(np.max(np.diag(H).real))
          and rep.n_above_threshold >= 2)
    record(6, "energy-shift falsifier", ok,
           f"max |Im eig T_c| {rep.max_imag_eigenvalue:.1e}; H spectrum shift {rep.spectrum_shift:.1e}; "
           f"{rep.n_above_threshold} overlaps > 1e-3")


def test_c7_kernel_symmetries():
    cfg = ref(6)
    rng = np.random.default_rng(7)
    q, q2 = rng.uniform(-1, 1, (2, 10_000))
    k = toa_kernel(q, q2, cfg)
    herm = float(np.max(np.abs(toa_kernel(q2, q, cfg) - k.conj())))
    refl = float(np.max(np.abs(toa_kernel(-q, -q2, cfg) + k.conj())))
    flip = cfg.with_gamma(-cfg.gamma)
    gker = float(np.max(np.abs(toa_kernel(q, q2, flip) + k.conj())))
    # matrix level: the -gamma basis is phi_k^{-gamma} = conj(phi_{-k}^{gamma}), so labels flip
    Tp = build_toa_matrix(cfg, "toa_kernel", 64).matrix
    Tm = build_toa_matrix(flip, "toa_kernel", 64).matrix
    gmat = float(np.max(np.abs(Tm + Tp[::-1, ::-1].conj())))
    ok = herm <= 1e-13 and refl <= 1e-13 and gker <= 1e-13 and gmat <= 1e-10
    record(7, "kernel symmetries", ok,
           f"hermitian {herm:.1e}, reflection {refl:.1e}, gamma-reversal kernel {gker:.1e} / matrix K=6 {gmat:.1e}")


def test_c8_arrival_collapse():
    cfg = ref(64)
    states = toa_spectrum(build_toa_matrix(cfg, "toa_product", arrival=True).matrix)
    psi = mid_positive_state(states)
    partner = min(states, key=lambda st: abs(st.tau + psi.tau))
    t = np.linspace(0.0, 2.0 * psi.tau, 401)
    fwd = collapse_series(psi, cfg, t, w=0.25)
    bwd = collapse_series(partner, cfg, -t, w=0.25)
    mismatch = time_reversal_mismatch(fwd, bwd)
    drift = max(fwd.max_probability_drift(), bwd.max_probability_drift())
    ok = fwd.peak_mass > fwd.mass_w[0] and mismatch <= 1e-8 and drift <= 1e-8
    record(8, "arrival collapse", ok,
           f"tau {psi.tau:.4e}: mass {fwd.mass_w[0]:.3f} -> {fwd.peak_mass:.3f} at t {fwd.peak_time:.4e}; "
           f"reversal {mismatch:.1e}; probability drift {drift:.1e}")


def test_c9_determinism(tmp_path):
    configs = sorted(CONFIGS.glob("*.json"))
    codes = []
    for rnd in ("a", "b"):
        for cfg in configs:
            codes.append(main(["run", str(cfg), "--out", str(tmp_path / rnd / cfg.stem)]))
    differing = []
    n_files = 0
    for cfg in configs:
        a, b = tmp_path / "a" / cfg.stem, tmp_path / "b" / cfg.stem
        for f in sorted(p.name for p in a.iterdir() if p.suffix in (".json", ".csv") and p.name != "timing.json"):
            n_files += 1
            if (a / f).read_bytes() != (b / f).read_bytes():
                differing.append(f"{cfg.stem}/{f}")
        json.loads((a / "report.json").read_text())
    ok = not differing and all(c == 0 for c in codes) and len(configs) == 7
    record(9, "determinism", ok,
           f"{len(configs)} experiments run twice, {n_files} report/CSV files compared, "
           f"{len(differing)} differ, exit codes {sorted(set(codes))}")
