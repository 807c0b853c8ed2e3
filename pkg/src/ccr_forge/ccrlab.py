"""Canonical domains, commutator residuals and the energy-shift falsifier.

In truncation the characteristic pair obeys the exact identity

    [T_c, H] = i (I - J),      J = all-ones matrix,

so the CCR holds exactly on zero-sum coefficient vectors and fails by a
rank-one defect everywhere else. The passage-time pair only converges to
the CCR on functions with zero mean that vanish, with their derivative,
at the walls; those are sampled by the bump family d/dq (q^2 - l^2)^m.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numpy.polynomial import polynomial as poly

from .confined import constant_coefficients, momenta
from .constants import TOL
from .numkernel import check_hermitian, composite_gauss_legendre, unitary_evolution
from .timeops import build_characteristic_time

DOMAIN_TAGS = ("dense_zero_sum", "closed_bump", "none")


@dataclass(frozen=True)
class DomainVector:
    coefficients: np.ndarray
    domain_tag: str = "none"
    K: Optional[int] = None

    def __post_init__(self):
        if self.domain_tag not in DOMAIN_TAGS:
            raise ValueError(f"unknown domain tag {self.domain_tag!r}")
        a = np.asarray(self.coefficients, dtype=complex)
        object.__setattr__(self, "coefficients", a)
        if self.K is None:
            object.__setattr__(self, "K", (a.size - 1) // 2)
        if a.size != 2 * self.K + 1:
            raise ValueError(f"{a.size} coefficients do not fit truncation K={self.K}")

    @property
    def norm(self):
        return float(np.linalg.norm(self.coefficients))

    def domain_defect(self, cfg=None):
        """Relative violation of the defining linear condition of the tagged domain."""
        a = self.coefficients
        if self.domain_tag == "dense_zero_sum":
            return abs(a.sum()) / self.norm
        if self.domain_tag == "closed_bump":
            c = constant_coefficients(cfg)
            return abs(np.vdot(c, a)) / (self.norm * np.linalg.norm(c))
        return 0.0


@dataclass
class CommutatorReport:
    label: str
    residuals: list = field(default_factory=list)
    defect: dict = field(default_factory=dict)
    series: list = field(default_factory=list)   # (K, residual) pairs
    verdict: Optional[str] = None

    def as_dict(self):
        return {
            "label": self.label,
            "residuals": [float(r) for r in self.residuals],
            "defect": self.defect,
            "series": [[int(K), float(r)] for K, r in self.series],
            "verdict": self.verdict,
        }


def commutator(A, B):
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape or A.ndim != 2:
        raise ValueError(f"commutator needs equal square shapes, got {A.shape} and {B.shape}")
    return A @ B - B @ A


def basis_vector(K, k):
    e = np.zeros(2 * K + 1, dtype=complex)
    e[k + K] = 1.0
    return e


def dense_domain_sample(K, support, seed):
    """Random normalized zero-sum vector supported on |k| <= support."""
    if support < 1 or support > K:
        raise ValueError(f"support must be in [1, K={K}], got {support}")
    rng = np.random.default_rng(seed)
    n = 2 * support + 1
    x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x[-1] = -x[:-1].sum()
    a = np.zeros(2 * K + 1, dtype=complex)
    a[K - support:K + support + 1] = x / np.linalg.norm(x)
    return DomainVector(a, "dense_zero_sum", K)


def clock_pair_vector(K, k, l):
    """(e_k - e_l)/sqrt(2): zero-sum, hence in the dense canonical domain."""
    if k == l:
        raise ValueError("clock pair needs two distinct labels")
    a = (basis_vector(K, k) - basis_vector(K, l)) / np.sqrt(2.0)
    return DomainVector(a, "dense_zero_sum", K)


def bump_function(m, l):
    """Power-series coefficients of d/dq (q^2 - l^2)^m."""
    if int(m) != m or m < 2:
        raise ValueError(f"bump order m must be an integer >= 2, got {m}")
    return poly.polyder(poly.polypow([-l * l, 0.0, 1.0], int(m)))


def bump_panels(K, quad_order):
    # about quad_order/4 nodes per oscillation period of the highest mode
    return max(1, int(np.ceil(4.0 * (K + 1) / quad_order)))


def bump_coefficients(m, cfg, quad_order=64):
    """<phi_k, bump> for |k| <= K by composite Gauss-Legendre quadrature."""
    coeffs = bump_function(m, cfg.l)
    rule = composite_gauss_legendre(quad_order, -cfg.l, cfg.l, bump_panels(cfg.K, quad_order))
    f = poly.polyval(rule.nodes, coeffs)
    phase = np.exp(-1j * np.outer(momenta(cfg), rule.nodes)) / np.sqrt(2.0 * cfg.l)
    return phase @ (rule.weights * f)


def bump_domain_sample(m, cfg, quad_order=64):
    """Normalized, truncated coefficient vector of the bump d/dq (q^2 - l^2)^m.

    The truncated vector is made exactly orthogonal to the truncated
    constant-function coefficients: the function itself has zero mean, but
    dropping the |k| > K tail leaves a small overlap otherwise.
    """
    cfg.require_nonzero_gamma("the closed canonical domain")
    a = bump_coefficients(m, cfg, quad_order)
    c = constant_coefficients(cfg)
    a = a - c * (np.vdot(c, a) / np.vdot(c, c))
    return DomainVector(a / np.linalg.norm(a), "closed_bump", cfg.K)


def _vector(phi):
    return phi.coefficients if isinstance(phi, DomainVector) else np.asarray(phi, dtype=complex)


def ccr_residual(T, H, phi):
    """||[T, H] phi - i phi|| / ||phi||."""
    a = _vector(phi)
    norm = np.linalg.norm(a)
    if norm == 0.0:
        raise ValueError("residual undefined for the zero vector")
    if T.shape != H.shape or T.shape[0] != a.size:
        raise ValueError(f"dimension mismatch: T {T.shape}, H {H.shape}, vector {a.size}")
    # [T, H] a evaluated without forming the commutator matrix
    r = T @ (H @ a) - H @ (T @ a) - 1j * a
    return float(np.linalg.norm(r) / norm)


def commutator_defect(T_c, H, tol=TOL):
    """Check [T_c, H] - iI = -i J entrywise and summarize the defect.

    ``T_c`` must be the characteristic operator of ``diag(H)``.
    """
    H = check_hermitian(H)
    E = np.real(np.diag(H))
    if np.max(np.abs(H - np.diag(E))) > 0.0:
        raise ValueError("commutator_defect expects H diagonal in its eigenbasis")
    expected = build_characteristic_time(E)
    if T_c.shape != H.shape or np.max(np.abs(T_c - expected)) > tol.hermitian * (1.0 + np.max(np.abs(expected))):
        raise ValueError("T_c is not the characteristic time operator of diag(H)")
    N = H.shape[0]
    D = commutator(T_c, H) - 1j * np.eye(N)
    entry_err = float(np.max(np.abs(D + 1j)))
    sv = np.linalg.svd(D, compute_uv=False)
    norm = float(sv[0])
    second = float(sv[1]) if N > 1 else 0.0
    defect = {
        "N": N,
        "max_entry_error": entry_err,
        "norm": norm,
        "norm_rel_error": abs(norm - N) / N,
        "second_singular_value": second,
        "entries_ok": entry_err <= tol.defect_entry,
        "norm_ok": abs(norm - N) <= tol.defect_norm_rel * N,
        "rank_one": second <= tol.defect_rank_rel * N,
    }
    return CommutatorReport(label=f"(T_c, H) N={N}", defect=defect, verdict="dense")


def domain_normal(cfg, tag):
    """Vector spanning the orthogonal complement of the tagged domain in truncation."""
    if tag == "dense_zero_sum":
        return np.ones(cfg.N, dtype=complex)
    if tag == "closed_bump":
        return constant_coefficients(cfg)
    raise ValueError(f"no canonical domain for tag {tag!r}")


def classify_category(cfg, tag, K_list):
    """'dense' or 'closed', from how the complement's normal vector scales with K.

    The zero-sum condition is orthogonality to (1, 1, ...), whose norm
    grows like sqrt(N): no normalizable vector is orthogonal to the whole
    domain, which is therefore dense. The closed domain's normal is the
    constant function, whose coefficient norm converges to sqrt(2l).
    """
    Ks = sorted(set(int(K) for K in K_list))
    if len(Ks) < 2:
        raise ValueError("classification needs at least two truncations")
    norms = [np.linalg.norm(domain_normal(cfg.with_K(K), tag)) for K in Ks]
    ratio = norms[-1] / norms[0]
    unbounded = np.sqrt((2 * Ks[-1] + 1) / (2 * Ks[0] + 1))
    return "dense" if ratio > 1.0 + 0.5 * (unbounded - 1.0) else "closed"


def is_monotone(values, slack=TOL.monotone_slack):
    """True when each value is at most ``slack`` times the previous one."""
    return all(b <= slack * a for a, b in zip(values, values[1:]))


@dataclass
class PauliReport:
    epsilon: float
    eigenindex: int
    max_imag_eigenvalue: float
    overlaps: np.ndarray
    eigen_residual: float
    spectrum_before: np.ndarray
    spectrum_after: np.ndarray
    threshold: float

    @property
    def second_overlap(self):
        return float(np.sort(self.overlaps)[-2])

    @property
    def n_above_threshold(self):
        return int(np.sum(self.overlaps > self.threshold))

    @property
    def spectrum_shift(self):
        return float(np.max(np.abs(self.spectrum_after - self.spectrum_before)))

    def checks(self, tol=TOL):
        scale = max(1.0, float(np.max(np.abs(self.spectrum_before))))
        return {
            "t_spectrum_real": self.max_imag_eigenvalue <= tol.imag_eigenvalue,
            "h_spectrum_preserved": self.spectrum_shift <= tol.spectrum_preserved * scale,
            "h_bounded_below": float(self.spectrum_after.min()) >= float(self.spectrum_before.min())
            - tol.spectrum_preserved * scale,
            "overlap_spread": self.n_above_threshold >= 2,
            "not_an_eigenvector": self.eigen_residual > 0.0 if self.epsilon != 0 else True,
        }

    def as_dict(self, tol=TOL):
        order = np.argsort(self.overlaps)[::-1]
        return {
            "epsilon": self.epsilon,
            "eigenindex": self.eigenindex,
            "max_imag_eigenvalue": self.max_imag_eigenvalue,
            "largest_overlaps": [[int(i), float(self.overlaps[i])] for i in order[:5]],
            "second_overlap": self.second_overlap,
            "n_overlaps_above_threshold": self.n_above_threshold,
            "overlap_threshold": self.threshold,
            "eigen_residual": self.eigen_residual,
            "spectrum_shift": self.spectrum_shift,
            "spectrum_min_after": float(self.spectrum_after.min()),
            "checks": self.checks(tol),
        }


def pauli_falsifier(T, H, epsilon, k, tol=TOL):
    """Apply U = exp(-i epsilon T) to the k-th energy eigenvector and test for a shift.

    If T generated energy shifts, U phi_k would be an eigenvector of H with
    eigenvalue E_k + epsilon. ``k`` is a storage index into the energy basis.
    """
    T = check_hermitian(T)
    H = check_hermitian(H)
    E = np.real(np.diag(H))
    if np.max(np.abs(H - np.diag(E))) > 0.0:
        raise ValueError("pauli_falsifier expects H diagonal in its eigenbasis")
    N = H.shape[0]
    if not 0 <= k < N:
        raise IndexError(f"eigenindex {k} outside [0, {N})")
    # general (non-Hermitian) solver: an independent witness of a real spectrum
    max_imag = float(np.max(np.abs(np.linalg.eigvals(T).imag)))
    U = unitary_evolution(T, epsilon)
    psi = U[:, k]
    overlaps = np.abs(psi) ** 2
    residual = float(np.linalg.norm(H @ psi - (E[k] + epsilon) * psi))
    after = np.linalg.eigvalsh(U @ H @ U.conj().T)
    return PauliReport(float(epsilon), int(k), max_imag, overlaps, residual,
                       np.sort(E), np.sort(after), tol.overlap_threshold)
