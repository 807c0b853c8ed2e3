"""Two-level quantum clocks cut out of the characteristic time operator.

Compressing T_c and H onto span{phi_k, phi_l} gives

    T_kl = (i / w) (|k><l| - |l><k|),   H_kl = diag(E_k, E_l),   w = E_k - E_l.

In the state (e^{-i E_k t} phi_k - e^{-i E_l t} phi_l)/sqrt(2)

    <T_kl>(t) = sin(w t) / w,      dT dH = |cos(w t)| / 2,

so the clock reads time modulo 2 pi / |w| and saturates the uncertainty
bound whenever cos(w t) = +-1.
"""
from dataclasses import dataclass

import numpy as np

from .numkernel import check_hermitian, hermitian_eigen, unitary_evolution


@dataclass(frozen=True)
class TwoLevelClock:
    k: int
    l: int
    omega: float
    T_kl: np.ndarray
    H_kl: np.ndarray

    @property
    def energies(self):
        return np.real(np.diag(self.H_kl))

    @property
    def period(self):
        return 2.0 * np.pi / abs(self.omega)


@dataclass(frozen=True)
class ClockSeries:
    t: np.ndarray
    expect_closed: np.ndarray
    expect_numeric: np.ndarray
    product_closed: np.ndarray
    product_numeric: np.ndarray
    delta_H: np.ndarray

    def max_expectation_error(self):
        return float(np.max(np.abs(self.expect_numeric - self.expect_closed)))

    def max_product_error(self):
        return float(np.max(np.abs(self.product_numeric - self.product_closed)))


def project_two_level(T, H, k, l, basis=None):
    """Compress T and H onto the energy eigenvectors k and l.

    ``k`` and ``l`` are storage indices, or momentum labels when a
    ``BasisIndexMap`` is given as ``basis``.
    """
    T = check_hermitian(T)
    H = check_hermitian(H)
    if k == l:
        raise ValueError("a two-level clock needs two distinct levels")
    i, j = (basis.index(k), basis.index(l)) if basis is not None else (int(k), int(l))
    idx = [i, j]
    H_kl = H[np.ix_(idx, idx)]
    omega = float(np.real(H_kl[0, 0] - H_kl[1, 1]))
    if omega == 0.0:
        raise ValueError(f"levels {k} and {l} are degenerate")
    return TwoLevelClock(int(k), int(l), omega, T[np.ix_(idx, idx)], H_kl)


def closed_form_operator(omega):
    return (1j / omega) * np.array([[0.0, 1.0], [-1.0, 0.0]])


def clock_state(clock, t):
    """The evolved zero-sum state (e^{-i E_k t}, -e^{-i E_l t}) / sqrt(2)."""
    Ek, El = clock.energies
    return np.array([np.exp(-1j * Ek * t), -np.exp(-1j * El * t)]) / np.sqrt(2.0)


def _spread(A, psi):
    mean = np.vdot(psi, A @ psi).real
    second = np.vdot(A @ psi, A @ psi).real
    return mean, np.sqrt(max(second - mean * mean, 0.0))


def clock_series(clock, t_grid):
    """Closed-form and numerically evolved expectation and uncertainty product."""
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    w = clock.omega
    expect_closed = np.sin(w * t) / w
    product_closed = 0.5 * np.abs(np.cos(w * t))
    psi0 = clock_state(clock, 0.0)
    decomp = hermitian_eigen(clock.H_kl)
    expect = np.empty_like(t)
    product = np.empty_like(t)
    dH = np.empty_like(t)
    for n, tn in enumerate(t):
        psi = unitary_evolution(clock.H_kl, tn, decomp) @ psi0
        expect[n], dT = _spread(clock.T_kl, psi)
        _, dH[n] = _spread(clock.H_kl, psi)
        product[n] = dT * dH[n]
    return ClockSeries(t, expect_closed, expect, product_closed, product, dH)


def saturation_times(omega, periods=3):
    """Times in [0, periods * 2 pi/|w|] where cos(w t) = +-1."""
    step = np.pi / abs(omega)
    return step * np.arange(0, 2 * int(periods) + 1)


def wrap_time(t, omega):
    """Split t = tau + n * period with period = 2 pi / |omega| and 0 <= tau < period."""
    if omega == 0:
        raise ValueError("omega must be nonzero to define a clock period")
    period = 2.0 * np.pi / abs(omega)
    n = int(np.floor(t / period))
    tau = t - n * period
    # rounding can leave tau a hair outside [0, period)
    if tau >= period:
        n, tau = n + 1, tau - period
    elif tau < 0:
        n, tau = n - 1, tau + period
    return n, tau
