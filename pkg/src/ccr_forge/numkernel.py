"""Dense complex linear algebra and quadrature used by every other module.

Matrices are plain ``numpy`` complex arrays. The functions here are pure:
identical inputs give bit-identical outputs on a given machine.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .constants import TOL


class NotHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not, within tolerance."""


class EigenDecomposition(NamedTuple):
    values: np.ndarray    # ascending, real
    vectors: np.ndarray   # orthonormal columns

    def reconstruct(self):
        V = self.vectors
        return (V * self.values) @ V.conj().T


@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int

    def integrate(self, f):
        """Apply the rule to a callable evaluated on the nodes (vectorized)."""
        return np.dot(self.weights, f(self.nodes))


def max_abs(M):
    return float(np.max(np.abs(M))) if np.size(M) else 0.0


def hermitian_defect(M):
    """Largest |M[i,j] - conj(M[j,i])| and the (i, j) where it occurs."""
    D = np.abs(M - M.conj().T)
    i, j = np.unravel_index(int(np.argmax(D)), D.shape)
    return float(D[i, j]), (int(i), int(j))


def check_hermitian(M, tol=TOL.hermitian):
    """Validate squareness and Hermiticity; returns M as a complex array.

    The bound is relative: ``tol * (1 + max|M|)``.
    """
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {M.shape}")
    bound = tol * (1.0 + max_abs(M))
    err, (i, j) = hermitian_defect(M)
    if err > bound:
        raise NotHermitianError(
            f"matrix is not Hermitian: |M[{i}][{j}] - conj(M[{j}][{i}])| = {err:.3e} "
            f"exceeds {bound:.3e}"
        )
    return M


def fix_phases(V):
    """Make the largest-magnitude component of every column real and positive."""
    V = np.array(V, dtype=complex)
    idx = np.argmax(np.abs(V), axis=0)
    lead = V[idx, np.arange(V.shape[1])]
    mag = np.abs(lead)
    # exp(-i angle) is exactly 1 for an already-real positive pivot
    V *= np.exp(-1j * np.angle(lead))
    # the pivot is now real up to rounding; pin it exactly
    V[idx, np.arange(V.shape[1])] = mag
    return V


def jacobi_eigh(M, tol=1e-15, max_sweeps=60):
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first rotates the phase of the pivot ``A[p, q]`` to make it
    real, then applies the classic real Jacobi rotation. Sweeps stop when
    the off-diagonal Frobenius norm falls below ``tol * ||A||_F``.
    Returns unsorted eigenvalues and the accumulated unitary.
    """
    A = np.array(M, dtype=complex)
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = np.linalg.norm(A)
    if scale == 0.0:
        return np.zeros(n), V
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                r = abs(apq)
                if r <= 1e-300:
                    continue
                cph = np.conj(apq) / r
                theta = (A[q, q].real - A[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                G = np.array([[c, s], [-s * cph, c * cph]])
                cols = [p, q]
                A[:, cols] = A[:, cols] @ G
                A[cols, :] = G.conj().T @ A[cols, :]
                A[p, q] = A[q, p] = 0.0
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                V[:, cols] = V[:, cols] @ G
    else:
        raise RuntimeError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    return np.diag(A).real.copy(), V


def hermitian_eigen(M, method="lapack", tol=TOL.hermitian):
    """Eigendecomposition of a Hermitian matrix with a fixed phase convention.

    ``method`` is ``"lapack"`` (numpy's ``eigh``) or ``"jacobi"`` (the
    in-house cyclic Jacobi solver). Either way eigenvalues come back
    ascending and each eigenvector has its largest-magnitude component
    real-positive.
    """
    M = check_hermitian(M, tol)
    if method == "lapack":
        vals, vecs = np.linalg.eigh(M)
    elif method == "jacobi":
        vals, vecs = jacobi_eigh(M)
    else:
        raise ValueError(f"unknown eigensolver method {method!r}")
    order = np.argsort(vals, kind="stable")
    return EigenDecomposition(np.asarray(vals[order], dtype=float), fix_phases(vecs[:, order]))


def unitary_evolution(M, t, decomposition=None):
    """Return U(t) = exp(-i M t) for Hermitian M via its eigendecomposition.

    A precomputed ``decomposition`` of M may be passed to avoid
    re-diagonalizing inside time loops.
    """
    if decomposition is None:
        decomposition = hermitian_eigen(M)
    V = decomposition.vectors
    return (V * np.exp(-1j * decomposition.values * t)) @ V.conj().T


def gauss_legendre(order, a=-1.0, b=1.0):
    if int(order) != order or order < 2:
        raise ValueError(f"quadrature order must be an integer >= 2, got {order!r}")
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    x, w = np.polynomial.legendre.leggauss(int(order))
    half = 0.5 * (b - a)
    return QuadratureRule(half * x + 0.5 * (a + b), half * w, int(order))


def composite_gauss_legendre(order, a, b, panels):
    """Gauss-Legendre of the given order on each of ``panels`` equal subintervals."""
    if panels < 1:
        raise ValueError("panels must be >= 1")
    base = gauss_legendre(order)
    edges = np.linspace(a, b, int(panels) + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (half[:, None] * base.nodes + mid[:, None]).ravel()
    weights = (half[:, None] * base.weights).ravel()
    return QuadratureRule(nodes, weights, int(order))
