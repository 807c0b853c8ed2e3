"""Free particle confined to [-l, l] with a twisted boundary condition.

The momentum operator p_gamma = -i d/dq with psi(-l) = exp(-2i gamma) psi(l)
has eigenfunctions

    phi_k(q) = (2l)^(-1/2) exp(i (gamma + k pi) q / l),   k in Z,

with eigenvalues p_k = (gamma + k pi)/l, and the purely kinetic Hamiltonian
has E_k = p_k^2 / (2 mu). Units have hbar = 1.

Everything in this package is expressed in this momentum eigenbasis,
truncated symmetrically to k in {-K, ..., K}.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import TOL


class DegenerateSpectrumError(ValueError):
    """Two energies coincide (within tolerance); the time-operator build is undefined."""


@dataclass(frozen=True)
class SystemConfig:
    l: float = 1.0
    mu: float = 1.0
    gamma: float = np.pi / 4
    K: int = 16

    def __post_init__(self):
        if not np.isfinite(self.l) or self.l <= 0:
            raise ValueError(f"box half-length l must be > 0, got {self.l}")
        if not np.isfinite(self.mu) or self.mu <= 0:
            raise ValueError(f"mass mu must be > 0, got {self.mu}")
        if not np.isfinite(self.gamma) or abs(self.gamma) >= np.pi:
            raise ValueError(f"boundary phase must satisfy |gamma| < pi, got {self.gamma}")
        if int(self.K) != self.K or self.K < 1:
            raise ValueError(f"truncation K must be a positive integer, got {self.K}")
        object.__setattr__(self, "K", int(self.K))

    @property
    def N(self):
        return 2 * self.K + 1

    @property
    def basis(self):
        return BasisIndexMap(self.K)

    def with_K(self, K):
        return SystemConfig(self.l, self.mu, self.gamma, K)

    def with_gamma(self, gamma):
        return SystemConfig(self.l, self.mu, gamma, self.K)

    def require_nonzero_gamma(self, what="this construction"):
        if self.gamma == 0.0:
            raise ValueError(
                f"gamma = 0 is not allowed for {what}: the momentum has a zero "
                "eigenvalue at k = 0 (no inverse momentum, sin(gamma) = 0)"
            )


@dataclass(frozen=True)
class BasisIndexMap:
    """Bijection between momentum labels k in [-K, K] and storage indices 0..2K."""

    K: int

    @property
    def labels(self):
        return np.arange(-self.K, self.K + 1)

    def index(self, k):
        if not -self.K <= k <= self.K:
            raise IndexError(f"label k={k} outside truncation [-{self.K}, {self.K}]")
        return int(k) + self.K

    def label(self, i):
        if not 0 <= i <= 2 * self.K:
            raise IndexError(f"storage index {i} outside [0, {2 * self.K}]")
        return int(i) - self.K


@dataclass(frozen=True)
class SpectrumTable:
    k: np.ndarray
    p: np.ndarray
    E: np.ndarray

    def min_gap(self):
        gap, _ = closest_pair(self.E)
        return gap


class ConfinedSystem(NamedTuple):
    spectrum: SpectrumTable
    H: np.ndarray
    P: np.ndarray
    Q: np.ndarray


def momenta(cfg):
    return (cfg.gamma + np.pi * cfg.basis.labels) / cfg.l


def spectrum_table(cfg):
    p = momenta(cfg)
    return SpectrumTable(cfg.basis.labels, p, p * p / (2.0 * cfg.mu))


def closest_pair(values):
    """Smallest |values[i] - values[j]| over i != j and the index pair (i < j)."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        return np.inf, None
    order = np.argsort(values, kind="stable")
    diffs = np.diff(values[order])
    m = int(np.argmin(diffs))
    i, j = sorted((int(order[m]), int(order[m + 1])))
    return float(diffs[m]), (i, j)


def check_nondegenerate(energies, labels=None, tol=TOL.degeneracy):
    """Reject spectra with a gap below ``tol * max|E|``, naming the offending pair."""
    E = np.asarray(energies, dtype=float)
    gap, pair = closest_pair(E)
    scale = float(np.max(np.abs(E))) if E.size else 0.0
    if pair is not None and gap <= tol * scale:
        i, j = pair
        if labels is not None:
            who = f"k={labels[i]} and k={labels[j]}"
        else:
            who = f"indices {i} and {j}"
        raise DegenerateSpectrumError(
            f"degenerate spectrum: E[{who}] = {E[i]!r} vs {E[j]!r} "
            f"(gap {gap:.3e} <= {tol:g} * max|E|)"
        )


def position_matrix(cfg):
    """Matrix of the position operator q in the momentum eigenbasis.

    <phi_k| q |phi_k'> = -i l (-1)^n / (pi n), n = k' - k, zero on the
    diagonal; gamma cancels in every element.
    """
    k = cfg.basis.labels
    n = k[None, :] - k[:, None]
    safe = np.where(n == 0, 1, n)
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    Q = np.where(n == 0, 0.0, -1j * cfg.l * sign / (np.pi * safe))
    return Q.astype(complex)


def build_system(cfg):
    """Momentum, Hamiltonian and position matrices in the momentum eigenbasis."""
    spec = spectrum_table(cfg)
    P = np.diag(spec.p).astype(complex)
    H = np.diag(spec.p * spec.p / (2.0 * cfg.mu)).astype(complex)
    return ConfinedSystem(spec, H, P, position_matrix(cfg))


def basis_function(k, q, cfg):
    q = np.asarray(q, dtype=float)
    if np.any(np.abs(q) > cfg.l):
        raise ValueError(f"position outside the box [-{cfg.l}, {cfg.l}]")
    return np.exp(1j * (cfg.gamma + k * np.pi) * q / cfg.l) / np.sqrt(2.0 * cfg.l)


def basis_matrix(cfg, q):
    """Rows are positions, columns basis functions: B[i, j] = phi_{k_j}(q_i)."""
    q = np.asarray(q, dtype=float)
    return np.exp(1j * np.outer(q, momenta(cfg))) / np.sqrt(2.0 * cfg.l)


def constant_coefficients(cfg):
    """Coefficients c_k = <phi_k, 1> of the constant function 1 (unnormalized).

    c_k = sqrt(2l) (-1)^k sin(gamma) / (gamma + k pi).
    """
    cfg.require_nonzero_gamma("the constant-function expansion")
    k = cfg.basis.labels
    sign = np.where(k % 2 == 0, 1.0, -1.0)
    return (np.sqrt(2.0 * cfg.l) * sign * np.sin(cfg.gamma) / (cfg.gamma + k * np.pi)).astype(complex)


def synthesize(coefficients, cfg, q):
    """Evaluate sum_k a_k phi_k(q) on the given positions."""
    return basis_matrix(cfg, q) @ np.asarray(coefficients, dtype=complex)
