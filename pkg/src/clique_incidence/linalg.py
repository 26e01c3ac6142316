"""
Dense numeric kernel: cyclic Jacobi eigensolver, rank and null space with
explicit tolerances, exact rational rank, Gram-Schmidt, PSD square roots
and zero-pattern extraction.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
import sympy
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import (
    ConvergenceError,
    IndefiniteMatrixError,
    LinearAlgebraError,
    NotSymmetricError,
    RankDeficientError,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymSpectrum:
    """Eigen-decomposition S = V diag(eigenvalues) Vᵀ, eigenvalues descending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    cluster_tolerance: float = DEFAULT_TOLERANCES.cluster
    sweeps: int = 0

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def as_symmetric(S: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Float copy of a square matrix, symmetrized after the asymmetry check."""
    A = np.array(S, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise LinearAlgebraError(f"Expected a square matrix, got shape {A.shape}")
    scale = 1.0 + (np.abs(A).max() if A.size else 0.0)
    asym = np.abs(A - A.T).max() if A.size else 0.0
    if asym > tol.symmetry * scale:
        raise NotSymmetricError(f"Matrix is not symmetric (max asymmetry {asym:.3g})")
    return (A + A.T) / 2.0


def sym_eigen(S: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> SymSpectrum:
    """
    Cyclic Jacobi eigendecomposition of a symmetric matrix.

    Sweeps visit pairs (p, q), p < q, in row order and stop once the
    off-diagonal Frobenius mass drops below ``tol.jacobi_offdiag·‖S‖_F``.

    Args:
        S: Square symmetric matrix
        tol: Tolerances to use

    Returns:
        SymSpectrum with eigenvalues sorted descending
    """
    A = as_symmetric(S, tol)
    n = A.shape[0]
    V = np.eye(n)
    fro = np.linalg.norm(A)
    threshold = tol.jacobi_offdiag * fro
    sweeps = 0

    while True:
        off = np.sqrt(2.0 * np.sum(np.triu(A, 1) ** 2)) if n > 1 else 0.0
        if off <= threshold:
            break
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceError(
                f"Jacobi did not converge in {tol.jacobi_max_sweeps} sweeps (off-diagonal mass {off:.3g})"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                R = np.array([[c, s], [-s, c]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ R
                A[idx, :] = R.T @ A[idx, :]
                A[p, q] = A[q, p] = 0.0
                V[:, idx] = V[:, idx] @ R
        sweeps += 1
        logger.debug(f"Jacobi sweep {sweeps}: off-diagonal mass {off:.3g}")

    eigenvalues = np.diag(A).copy()
    order = np.argsort(-eigenvalues, kind="stable")
    return SymSpectrum(
        eigenvalues=eigenvalues[order],
        eigenvectors=V[:, order],
        cluster_tolerance=tol.cluster,
        sweeps=sweeps,
    )


def eigenvalues(S: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    return sym_eigen(S, tol).eigenvalues


def spectrum_clusters(values: Sequence[float], cluster_tolerance: float = DEFAULT_TOLERANCES.cluster) -> List[Tuple[float, int]]:
    """
    Group sorted eigenvalues into (mean value, multiplicity) clusters.

    A gap larger than ``cluster_tolerance·(1 + max|λ|)`` starts a new cluster.
    """
    vals = sorted((float(v) for v in values), reverse=True)
    if not vals:
        return []
    gap = cluster_tolerance * (1.0 + max(abs(v) for v in vals))
    clusters: List[List[float]] = [[vals[0]]]
    for prev, cur in zip(vals, vals[1:]):
        if prev - cur > gap:
            clusters.append([cur])
        else:
            clusters[-1].append(cur)
    return [(float(np.mean(c)), len(c)) for c in clusters]


def distinct_count(spec: SymSpectrum) -> int:
    """q(A): number of eigenvalue clusters."""
    return len(spectrum_clusters(spec.eigenvalues, spec.cluster_tolerance))


def rank_and_nullspace(M: np.ndarray, tol: Optional[float] = None) -> Tuple[int, np.ndarray]:
    """
    Numerical rank and an orthonormal kernel basis from the SVD.

    Args:
        M: Rectangular matrix
        tol: Singular value threshold; defaults to max(rows, cols)·eps·σ_max

    Returns:
        Tuple of (rank, null_basis) with null_basis of shape (cols, nullity)
    """
    A = np.asarray(M, dtype=float)
    if A.ndim != 2:
        raise LinearAlgebraError(f"Expected a matrix, got shape {A.shape}")
    rows, cols = A.shape
    if rows == 0 or cols == 0:
        return 0, np.eye(cols)
    _, sigma, vt = np.linalg.svd(A, full_matrices=True)
    if tol is None or tol <= 0:
        tol = max(rows, cols) * np.finfo(float).eps * (sigma[0] if sigma.size else 0.0)
    rank = int(np.sum(sigma > tol))
    return rank, vt[rank:].T.copy()


def _to_qq(value):
    if isinstance(value, (bool, int, np.integer)):
        return QQ(int(value))
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, sympy.Basic):
        if not value.is_rational:
            raise LinearAlgebraError(f"Entry {value} is not rational")
        r = sympy.Rational(value)
        return QQ(int(r.p), int(r.q))
    if isinstance(value, (float, np.floating)):
        f = Fraction(float(value))
        return QQ(f.numerator, f.denominator)
    raise LinearAlgebraError(f"Cannot convert {value!r} to a rational")


def to_domain_matrix(M) -> DomainMatrix:
    """Exact rational copy of an integer, Fraction or rational sympy matrix."""
    if isinstance(M, sympy.MatrixBase):
        rows = [[M[i, j] for j in range(M.cols)] for i in range(M.rows)]
        shape = (M.rows, M.cols)
    else:
        arr = np.asarray(M, dtype=object)
        if arr.ndim != 2:
            raise LinearAlgebraError(f"Expected a matrix, got shape {arr.shape}")
        rows = arr.tolist()
        shape = arr.shape
    return DomainMatrix([[_to_qq(x) for x in row] for row in rows], shape, QQ)


def exact_rank(M) -> int:
    """Rank over the rationals by fraction-free elimination."""
    shape = (M.rows, M.cols) if isinstance(M, sympy.MatrixBase) else np.shape(M)
    if len(shape) == 2 and 0 in shape:
        return 0
    return int(to_domain_matrix(M).rank())


def is_integral(M: np.ndarray) -> bool:
    A = np.asarray(M)
    if np.issubdtype(A.dtype, np.integer) or A.dtype == bool:
        return True
    return bool(A.size == 0 or np.all(A == np.round(A)))


def gram_schmidt_columns(M: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Orthonormal basis of the column span, column order preserved.

    Modified Gram-Schmidt with one re-orthogonalization pass per column.
    """
    A = np.array(M, dtype=float)
    if A.ndim != 2:
        raise LinearAlgebraError(f"Expected a matrix, got shape {A.shape}")
    n, k = A.shape
    rank, _ = rank_and_nullspace(A)
    if rank < k:
        raise RankDeficientError(f"Gram-Schmidt needs full column rank, got rank {rank} < {k}")
    Q = np.zeros((n, k))
    for j in range(k):
        v = A[:, j].copy()
        for _ in range(2):
            for i in range(j):
                v -= (Q[:, i] @ v) * Q[:, i]
        Q[:, j] = v / np.linalg.norm(v)
    return Q


def psd_sqrt_factor(S: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Symmetric square root B of a PSD matrix, so that BᵀB = S.

    Round-off negative eigenvalues down to ``-tol.psd·‖S‖`` are clamped to 0.
    """
    spec = sym_eigen(S, tol)
    lam = spec.eigenvalues
    norm = float(np.max(np.abs(lam))) if lam.size else 0.0
    if lam.size and lam[-1] < -tol.psd * max(norm, 1.0):
        raise IndefiniteMatrixError(float(lam[-1]))
    root = np.sqrt(np.clip(lam, 0.0, None))
    V = spec.eigenvectors
    return (V * root) @ V.T


def pattern_of(M: np.ndarray, zero_tol: Optional[float] = None,
               tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Off-diagonal nonzero pattern of a symmetric matrix as a 0/1 matrix.

    Args:
        M: Square matrix
        zero_tol: Absolute threshold; defaults to ``tol.pattern_zero·(1 + ‖M‖_max)``
        tol: Tolerances to use

    Returns:
        Symmetric integer matrix with zero diagonal
    """
    A = np.asarray(M, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise LinearAlgebraError(f"Expected a square matrix, got shape {A.shape}")
    if zero_tol is None:
        zero_tol = tol.pattern_zero * (1.0 + (np.abs(A).max() if A.size else 0.0))
    sym = (A + A.T) / 2.0
    P = (np.abs(sym) > zero_tol).astype(np.int64)
    np.fill_diagonal(P, 0)
    return P
