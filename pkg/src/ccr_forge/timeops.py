"""Time operators for the confined particle.

Two constructions, both Hermitian matrices in the momentum eigenbasis:

* the characteristic time operator, T[k, k'] = i / (E_k - E_k') off the
  diagonal and 0 on it, defined for any nondegenerate discrete spectrum;
* the quantized passage time T^gamma, either from its integral kernel

      K(q, q') = mu (q + q') / (4 sin gamma)
                 * (e^{i gamma} H(q - q') + e^{-i gamma} H(q' - q))

  by Galerkin projection, or from the symmetrized product
  (mu/2) (Q P^-1 + P^-1 Q). The time-of-arrival operator at the origin is
  T_gamma = -T^gamma.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .confined import SystemConfig, build_system, check_nondegenerate, momenta
from .constants import TOL
from .numkernel import NotHermitianError, check_hermitian, gauss_legendre

CONSTRUCTIONS = ("characteristic", "toa_kernel", "toa_product")
MIN_KERNEL_ORDER = 8


class QuadratureResolutionError(ArithmeticError):
    """The kernel quadrature is too coarse for the requested truncation."""


@dataclass(frozen=True)
class TimeOperatorBuild:
    matrix: np.ndarray
    construction: str
    config: Optional[SystemConfig] = None
    quad_order: Optional[int] = None
    arrival: bool = False   # True: matrix is T_gamma = -T^gamma

    @property
    def sign_convention(self):
        if self.construction == "characteristic":
            return "T_c (characteristic)"
        return "T_gamma = -T^gamma (arrival)" if self.arrival else "T^gamma (passage time)"


def build_characteristic_time(energies, labels=None):
    """Characteristic time operator of a nondegenerate spectrum, in its eigenbasis."""
    E = np.asarray(energies, dtype=float)
    if E.ndim != 1 or E.size < 2:
        raise ValueError("need a one-dimensional list of at least two energies")
    check_nondegenerate(E, labels)
    diff = E[:, None] - E[None, :]
    np.fill_diagonal(diff, 1.0)
    T = 1j / diff
    np.fill_diagonal(T, 0.0)
    return T


def characteristic_time_operator(cfg):
    spec = build_system(cfg).spectrum
    T = build_characteristic_time(spec.E, labels=spec.k)
    return TimeOperatorBuild(T, "characteristic", cfg)


def heaviside(x):
    """Unit step with H(0) = 1/2."""
    return np.heaviside(x, 0.5)


def toa_kernel(q, q2, cfg):
    """Kernel of the quantized passage time T^gamma at (q, q2); vectorized."""
    cfg.require_nonzero_gamma("the time-of-arrival kernel")
    q = np.asarray(q, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    if np.any(np.abs(q) > cfg.l) or np.any(np.abs(q2) > cfg.l):
        raise ValueError(f"kernel arguments must lie in [-{cfg.l}, {cfg.l}]")
    g = cfg.gamma
    pref = cfg.mu * (q + q2) / (4.0 * np.sin(g))
    return pref * (np.exp(1j * g) * heaviside(q - q2) + np.exp(-1j * g) * heaviside(q2 - q))


def _triangle_rules(order, l):
    """Nodes/weights on the two triangles q' < q and q' > q of [-l, l]^2.

    Outer Gauss-Legendre in q; inner Gauss-Legendre in q' mapped onto
    (-l, q) or (q, l). The kernel is smooth on each closed triangle, so the
    jump along the diagonal never sits inside a rule.
    """
    outer = gauss_legendre(order, -l, l)
    base = gauss_legendre(order)
    x, w = base.nodes, base.weights
    rules = []
    for lo, hi in ((np.full(order, -l), outer.nodes), (outer.nodes, np.full(order, l))):
        half = 0.5 * (hi - lo)
        qp = half[:, None] * x[None, :] + (0.5 * (hi + lo))[:, None]
        wt = outer.weights[:, None] * half[:, None] * w[None, :]
        qq = np.broadcast_to(outer.nodes[:, None], qp.shape)
        rules.append((qq.ravel(), qp.ravel(), wt.ravel()))
    return rules


def toa_kernel_matrix(cfg, quad_order):
    """Galerkin matrix <phi_k | T^gamma | phi_k'> by triangle-split quadrature."""
    cfg.require_nonzero_gamma("the time-of-arrival operator")
    if int(quad_order) != quad_order or quad_order < MIN_KERNEL_ORDER:
        raise ValueError(
            f"quad_order must be an integer >= {MIN_KERNEL_ORDER} for the kernel construction, got {quad_order}"
        )
    p = momenta(cfg)
    T = np.zeros((cfg.N, cfg.N), dtype=complex)
    for qq, qp, wt in _triangle_rules(int(quad_order), cfg.l):
        weight = wt * toa_kernel(qq, qp, cfg)
        left = np.exp(-1j * np.outer(p, qq))
        right = np.exp(1j * np.outer(qp, p))
        T += (left * weight) @ right
    return T / (2.0 * cfg.l)


def toa_product_matrix(cfg):
    """(mu/2)(Q P^-1 + P^-1 Q) in the momentum eigenbasis; exact per element."""
    cfg.require_nonzero_gamma("the time-of-arrival operator")
    Q = build_system(cfg).Q
    inv_p = 1.0 / momenta(cfg)
    return 0.5 * cfg.mu * (Q * inv_p[None, :] + inv_p[:, None] * Q)


def build_toa_matrix(cfg, method="toa_product", quad_order=64, arrival=False):
    """Build T^gamma (or T_gamma = -T^gamma when ``arrival``) by the given method."""
    if method == "toa_product":
        T = toa_product_matrix(cfg)
        order = None
    elif method == "toa_kernel":
        T = toa_kernel_matrix(cfg, quad_order)
        order = int(quad_order)
    else:
        raise ValueError(f"unknown construction {method!r}; expected 'toa_kernel' or 'toa_product'")
    if arrival:
        T = -T
    try:
        check_hermitian(T, TOL.built_hermitian)
    except NotHermitianError as exc:
        if method != "toa_kernel":
            raise
        raise QuadratureResolutionError(
            f"kernel quadrature of order {quad_order} under-resolves K={cfg.K} ({exc}); "
            "increase quad_order"
        ) from None
    return TimeOperatorBuild(T, method, cfg, order, bool(arrival))


def singular_value_profile(T):
    """Singular values, descending. Compactness shows as clustering toward 0."""
    return np.linalg.svd(np.asarray(T), compute_uv=False)
