"""
Numerical search for two-eigenvalue realizations by alternating projection
between rank-k orthogonal projections and matrices with the target's zero
pattern.
"""

import logging
from typing import List, Optional

import numpy as np

from .certificates import Q2Certificate, verify_certificate
from .config import DEFAULT_SEED, DEFAULT_TOLERANCES, Tolerances
from .errors import CertificateError, SearchFailedError
from .graph import Graph

logger = logging.getLogger(__name__)


def _pattern_start(target: Graph, rng: np.random.Generator) -> np.ndarray:
    n = target.n
    X = rng.standard_normal((n, n))
    X = (X + X.T) / 2.0
    off = (target.adjacency == 0) & ~np.eye(n, dtype=bool)
    X[off] = 0.0
    return X


def numeric_q2_search(target: Graph, k: int, seed: int = DEFAULT_SEED, start: Optional[np.ndarray] = None,
                      tol: Tolerances = DEFAULT_TOLERANCES, max_iterations: Optional[int] = None,
                      name: Optional[str] = None) -> Q2Certificate:
    """
    Look for a rank-k orthogonal projection P with the zero pattern of target.

    Each step projects onto rank-k projections (top-k eigenvectors), then
    onto the pattern set: non-edge entries are zeroed and edge entries
    smaller than ``tol.search_entry_floor`` are pushed out to ±floor.

    Args:
        target: Graph to realize
        k: Rank, 1 ≤ k ≤ n - 1
        seed: Seed for the random start
        start: Symmetric starting matrix; a random matrix with the target's
            pattern when None
        tol: Tolerances (residual, iteration cap, entry floor)
        max_iterations: Overrides ``tol.search_max_iterations``
        name: Certificate name

    Returns:
        Verified certificate with M = the top-k eigenvectors and c = 1

    Raises:
        SearchFailedError: no convergence, or the converged matrix failed
            verification
    """
    n = target.n
    if not 1 <= k <= n - 1:
        raise CertificateError(f"Search rank must satisfy 1 ≤ k ≤ n - 1, got k={k}, n={n}")
    iterations = tol.search_max_iterations if max_iterations is None else max_iterations
    if iterations < 1:
        raise CertificateError(f"Search needs at least one iteration, got {iterations}")
    rng = np.random.default_rng(seed)
    X = _pattern_start(target, rng) if start is None else np.array(start, dtype=float)
    if X.shape != (n, n):
        raise CertificateError(f"Start matrix has shape {X.shape}, expected {(n, n)}")

    edges = target.adjacency.astype(bool)
    off = ~edges & ~np.eye(n, dtype=bool)
    floor = tol.search_entry_floor
    trace: List[float] = []
    U = None
    converged = False

    for iteration in range(1, iterations + 1):
        _, vectors = np.linalg.eigh((X + X.T) / 2.0)
        U = vectors[:, -k:]
        P = U @ U.T
        pattern_residual = float(np.abs(P[off]).max()) if off.any() else 0.0

        Y = P.copy()
        Y[off] = 0.0
        small = edges & (np.abs(Y) < floor)
        Y[small] = np.where(Y[small] < 0, -floor, floor)
        idempotency_residual = float(np.abs(Y @ Y - Y).max())

        trace.append(max(pattern_residual, idempotency_residual))
        if pattern_residual < tol.search_residual and idempotency_residual < tol.search_residual:
            # the floored iterate is the projection we keep
            U = np.linalg.eigh(Y)[1][:, -k:]
            converged = True
            break
        X = Y
        if iteration % 500 == 0:
            logger.debug(f"Search k={k} seed={seed}: iteration {iteration}, residual {trace[-1]:.3g}")

    if not converged:
        raise SearchFailedError(
            f"Search for a rank-{k} realization of {target} did not converge in {iterations} iterations "
            f"(last residual {trace[-1]:.3g})",
            trace,
            len(trace),
        )

    cert = verify_certificate(name or f"search(k={k})", target, U, 1.0,
                              f"numeric-search(seed={seed})", tol)
    if not cert.verified:
        raise SearchFailedError(f"Search converged but the result failed verification: {cert.failure_reason}",
                                trace, len(trace))
    logger.info(f"Search found a rank-{k} realization of {target} after {len(trace)} iterations")
    return cert
