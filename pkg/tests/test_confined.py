import numpy as np
import pytest

from ccr_forge.confined import (
    BasisIndexMap,
    DegenerateSpectrumError,
    SystemConfig,
    basis_function,
    build_system,
    check_nondegenerate,
    constant_coefficients,
    position_matrix,
    spectrum_table,
)
from ccr_forge.numkernel import gauss_legendre


def test_config_validation():
    with pytest.raises(ValueError):
        SystemConfig(gamma=np.pi)
    with pytest.raises(ValueError):
        SystemConfig(l=0.0)
    with pytest.raises(ValueError):
        SystemConfig(mu=-1.0)
    with pytest.raises(ValueError):
        SystemConfig(K=0)
    assert SystemConfig(K=5).N == 11


def test_index_map_round_trip():
    m = BasisIndexMap(7)
    for k in range(-7, 8):
        assert m.label(m.index(k)) == k
    with pytest.raises(IndexError):
        m.index(8)


def test_reference_ground_state(quarter):
    spec = spectrum_table(quarter)
    i = quarter.basis.index(0)
    assert spec.p[i] == pytest.approx(np.pi / 4, abs=1e-15)
    assert spec.E[i] == pytest.approx(np.pi**2 / 32, abs=1e-15)
    assert spec.E[i] == pytest.approx(0.3084251, abs=1e-7)


def test_spectrum_formulas():
    cfg = SystemConfig(l=2.5, mu=0.7, gamma=-1.1, K=10)
    spec = spectrum_table(cfg)
    assert np.array_equal(spec.p, (cfg.gamma + spec.k * np.pi) / cfg.l)
    assert np.array_equal(spec.E, spec.p**2 / (2 * cfg.mu))
    assert np.all(spec.E >= 0) and spec.min_gap() > 0


def test_operators_hermitian_and_H_from_P(quarter):
    s = build_system(quarter)
    for M in (s.H, s.P, s.Q):
        assert np.array_equal(M, M.conj().T)
    assert np.array_equal(s.H, s.P @ s.P / (2 * quarter.mu))
    assert np.all(np.diag(s.H).real > 0)


def test_position_matrix_values(quarter):
    Q = position_matrix(quarter)
    i = quarter.basis.index(0)
    assert Q[i, i] == 0
    assert Q[i, i + 1] == pytest.approx(1j / np.pi, abs=1e-16)
    assert abs(Q[i, i + 1] - 0.3183099j) < 1e-7


def test_position_matrix_independent_of_gamma():
    a = position_matrix(SystemConfig(gamma=np.pi / 4, K=6))
    b = position_matrix(SystemConfig(gamma=0.3, K=6))
    assert np.max(np.abs(a - b)) <= 1e-13


def test_position_matrix_against_quadrature():
    cfg = SystemConfig(l=1.3, gamma=0.4, K=6)
    rule = gauss_legendre(64, -cfg.l, cfg.l)
    q = rule.nodes
    labels = cfg.basis.labels
    phi = np.array([basis_function(k, q, cfg) for k in labels])
    oracle = (phi.conj() * rule.weights * q) @ phi.T
    assert np.max(np.abs(oracle - position_matrix(cfg))) <= 1e-10


def test_basis_function_values(quarter):
    assert basis_function(0, 0.0, SystemConfig(l=1.0)) == pytest.approx(1 / np.sqrt(2), abs=1e-16)
    q = np.linspace(-1, 1, 7)
    for k in (-3, 0, 4):
        assert np.allclose(np.abs(basis_function(k, q, quarter)), 1 / np.sqrt(2), atol=1e-16)
        ratio = basis_function(k, -1.0, quarter) / basis_function(k, 1.0, quarter)
        assert abs(ratio - np.exp(-2j * quarter.gamma)) < 1e-14
    with pytest.raises(ValueError):
        basis_function(0, 1.5, quarter)


def test_basis_orthonormal_by_quadrature(quarter):
    rule = gauss_legendre(64, -1.0, 1.0)
    f0 = basis_function(0, rule.nodes, quarter)
    f1 = basis_function(1, rule.nodes, quarter)
    assert abs(np.sum(rule.weights * f0.conj() * f1)) < 1e-12
    assert abs(np.sum(rule.weights * np.abs(f0) ** 2) - 1) < 1e-13


def test_constant_coefficients(quarter):
    c = constant_coefficients(quarter)
    i = quarter.basis.index(0)
    assert c[i].real == pytest.approx(4 / np.pi, abs=1e-15)
    assert abs(c[i] - 1.2732395) < 1e-7
    rule = gauss_legendre(64, -1.0, 1.0)
    oracle = [np.sum(rule.weights * basis_function(k, rule.nodes, quarter).conj()) for k in quarter.basis.labels]
    assert np.max(np.abs(np.array(oracle) - c)) < 1e-13
    # |c_k| ~ 1/|k|
    big = constant_coefficients(quarter.with_K(400))
    assert abs(big[-1]) * 400 == pytest.approx(np.sqrt(2) * np.sin(np.pi / 4) / np.pi, rel=1e-3)


def test_constant_coefficients_parseval():
    # ||1||^2 = 2l
    cfg = SystemConfig(l=1.5, gamma=0.9, K=8)
    errs = [abs(np.sum(np.abs(constant_coefficients(cfg.with_K(K))) ** 2) - 2 * cfg.l) for K in (8, 64, 512)]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] < 2e-3


def test_constant_coefficients_reject_zero_gamma():
    with pytest.raises(ValueError, match="gamma = 0"):
        constant_coefficients(SystemConfig(gamma=0.0))


@pytest.mark.parametrize("gamma", [np.pi / 2, -np.pi / 2, 0.0])
def test_degenerate_spectra_rejected(gamma):
    spec = spectrum_table(SystemConfig(gamma=gamma, K=4))
    with pytest.raises(DegenerateSpectrumError, match=r"k=-?\d+ and k=-?\d+"):
        check_nondegenerate(spec.E, labels=spec.k)


def test_half_pi_names_pair():
    spec = spectrum_table(SystemConfig(gamma=np.pi / 2, K=4))
    with pytest.raises(DegenerateSpectrumError, match=r"k=-\d and k=-?\d"):
        check_nondegenerate(spec.E, labels=spec.k)
