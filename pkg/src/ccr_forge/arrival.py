"""Eigenstates of the confined time-of-arrival operator and their dynamics.

An eigenstate of T_gamma = -T^gamma with eigenvalue tau > 0 should, when
evolved under H_gamma, concentrate around the origin near t = tau. The
concentration is measured as the probability inside |q| <= w.

In the momentum basis T^gamma is purely imaginary, so complex conjugation
of coefficients (the map psi(q) -> conj(psi(-q))) sends the tau eigenstate
to the -tau one and reverses the direction of time.
"""
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .confined import basis_matrix, build_system
from .constants import TOL
from .numkernel import hermitian_eigen, unitary_evolution

DEFAULT_GRID_POINTS = 513


@dataclass(frozen=True)
class ArrivalEigenstate:
    tau: float
    coefficients: np.ndarray
    residual: float
    arrival: bool = True   # eigenstate of T_gamma = -T^gamma

    def partner(self):
        """The time-reversed state: conjugate coefficients, eigenvalue -tau."""
        return ArrivalEigenstate(-self.tau, self.coefficients.conj(), self.residual, self.arrival)


@dataclass(frozen=True)
class CollapseSeries:
    t: np.ndarray
    q: np.ndarray
    w: float
    mass_w: np.ndarray
    total: np.ndarray
    q_mean: np.ndarray
    density: np.ndarray   # shape (len(t), len(q))

    @property
    def peak_index(self):
        return int(np.argmax(self.mass_w))

    @property
    def peak_time(self):
        return float(self.t[self.peak_index])

    @property
    def peak_mass(self):
        return float(self.mass_w[self.peak_index])

    @property
    def peak_q_mean(self):
        return float(self.q_mean[self.peak_index])

    def max_probability_drift(self):
        return float(np.max(np.abs(self.total - 1.0)))


def toa_spectrum(T_gamma, arrival=True, tol=TOL.arrival_eigen_residual):
    """Full eigensystem of a Hermitian arrival-operator matrix, ascending."""
    decomp = hermitian_eigen(T_gamma)
    states = []
    for tau, v in zip(decomp.values, decomp.vectors.T):
        res = float(np.linalg.norm(T_gamma @ v - tau * v))
        if res > tol:
            raise ArithmeticError(f"eigenpair tau={tau:.6g} has residual {res:.3e} > {tol:g}")
        states.append(ArrivalEigenstate(float(tau), v, res, arrival))
    return states


def spectral_asymmetry(states):
    """max |tau_i + tau_{N-1-i}|: zero for a spectrum symmetric about 0."""
    taus = np.array([s.tau for s in states])
    return float(np.max(np.abs(taus + taus[::-1])))


def mid_positive_state(states, rel_floor=1e-9):
    """Median state among those with tau clearly above zero."""
    taus = np.array([s.tau for s in states])
    floor = rel_floor * np.max(np.abs(taus))
    positive = [s for s in states if s.tau > floor]
    if not positive:
        raise ValueError("no positive-eigenvalue states")
    return positive[len(positive) // 2]


def position_grid(cfg, grid_points=DEFAULT_GRID_POINTS):
    if grid_points < 3 or grid_points % 2 == 0:
        raise ValueError("Simpson integration needs an odd number (>= 3) of grid points")
    return np.linspace(-cfg.l, cfg.l, int(grid_points))


def collapse_series(psi, cfg, t_grid, w=None, grid_points=DEFAULT_GRID_POINTS):
    """Evolve ``psi`` under H_gamma and track the mass inside |q| <= w.

    Integrals use composite Simpson on a uniform grid; the inner window is
    the grid slice |q| <= w.
    """
    if w is None:
        w = cfg.l / 4.0
    if not 0.0 < w < cfg.l:
        raise ValueError(f"window half-width must satisfy 0 < w < l={cfg.l}, got {w}")
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    a = psi.coefficients if isinstance(psi, ArrivalEigenstate) else np.asarray(psi, dtype=complex)
    q = position_grid(cfg, grid_points)
    inner = np.abs(q) <= w * (1.0 + 1e-12)
    H = build_system(cfg).H
    decomp = hermitian_eigen(H)
    states = np.array([unitary_evolution(H, tn, decomp) @ a for tn in t])
    amplitudes = states @ basis_matrix(cfg, q).T
    rho = np.abs(amplitudes) ** 2
    total = simpson(rho, x=q, axis=1)
    mass = simpson(rho[:, inner], x=q[inner], axis=1)
    q_mean = simpson(q * rho, x=q, axis=1)
    return CollapseSeries(t, q, float(w), mass, total, q_mean, rho)


def time_reversal_mismatch(forward, backward):
    """Compare a +tau series on t with its partner's series on -t.

    Returns the largest deviation in mass_w and in mirrored density; the
    partner's density at -t is the forward density reflected q -> -q.
    """
    if not np.allclose(forward.t, -backward.t, rtol=0, atol=0):
        raise ValueError("backward series must be sampled at the negated forward times")
    mass = float(np.max(np.abs(forward.mass_w - backward.mass_w)))
    density = float(np.max(np.abs(forward.density - backward.density[:, ::-1])))
    return max(mass, density)
