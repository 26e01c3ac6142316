"""
Closed-form two-eigenvalue constructions and Gram completion.

Each construction stacks row blocks M_1, M_2, ... whose columns are
pairwise orthogonal with equal norm c, so A = MMᵀ has spectrum
{c^[k], 0^[n-k]}; the graph realized is the zero pattern of A.
"""

import logging
from typing import Dict, List, Optional, Sequence

import numpy as np
import sympy
from scipy.stats import special_ortho_group

from .certificates import Q2Certificate, require_verified, verify_certificate
from .config import DEFAULT_SEED, DEFAULT_TOLERANCES, Tolerances
from .errors import CertificateError
from .graph import (
    Graph,
    cartesian_product,
    complete,
    complete_minus,
    empty,
    join,
    remove_perfect_matching,
)
from .linalg import pattern_of, psd_sqrt_factor, rank_and_nullspace, sym_eigen

logger = logging.getLogger(__name__)

# name -> vertex count (None: any n >= 7)
FIXED_CONSTRUCTIONS: Dict[str, Optional[int]] = {
    "spider": 7,
    "paw": 7,
    "k13_k3": 7,
    "bull_join": 8,
    "c5_join": 8,
    "triangle_square": 8,
    "k3_star": None,
}

# published names of the fixed constructions
CONSTRUCTION_ALIASES: Dict[str, str] = {
    "T1": "spider",
    "H2_n7": "paw",
    "K13_K3": "k13_k3",
    "C5_join": "c5_join",
    "fig414": "triangle_square",
    "K3_star": "k3_star",
}


def _from_exact(name: str, Me: sympy.Matrix, c, expected: Graph, provenance: str,
                tol: Tolerances) -> Q2Certificate:
    M = np.array(Me.evalf(30).tolist(), dtype=float)
    exact = tuple(tuple(str(x) for x in row) for row in Me.tolist())
    cert = verify_certificate(name, expected, M, float(c), provenance, tol, exact_entries=exact)
    return require_verified(cert, expected)


def _prism_blocks(s: int):
    J = sympy.ones(s, s)
    I = sympy.eye(s)
    return J - (s - 1) * I, J - I


def construct_prism(s: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Q2Certificate:
    """
    K_s□K_2 from M_1 = J - (s-1)I and M_2 = J - I, c = s² - 2s + 2.

    Copy x of K_s holds vertices x·s .. x·s + s - 1.
    """
    if s < 3:
        raise CertificateError(f"construct_prism needs s ≥ 3, got {s}")
    M1, M2 = _prism_blocks(s)
    target = cartesian_product(complete(2), complete(s))
    return _from_exact(f"prism({s})", M1.col_join(M2), s * s - 2 * s + 2, target, "construction:prism", tol)


def construct_prism_join(s: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Q2Certificate:
    """
    (K_s□K_2) ∨ sK_1 minus a perfect matching between the second K_s copy
    and the added vertices; M = [M_1; M_2; I], c = s² - 2s + 3.
    """
    if s < 3:
        raise CertificateError(f"construct_prism_join needs s ≥ 3, got {s}")
    M1, M2 = _prism_blocks(s)
    base = join(cartesian_product(complete(2), complete(s)), empty(s))
    target = remove_perfect_matching(base, range(s, 2 * s), range(2 * s, 3 * s))
    Me = M1.col_join(M2).col_join(sympy.eye(s))
    return _from_exact(f"prism_join({s})", Me, s * s - 2 * s + 3, target, "construction:prism_join", tol)


def construct_complete(n: int, tol: Tolerances = DEFAULT_TOLERANCES) -> Q2Certificate:
    """K_n realized by the rank-one projection (1/n)J."""
    if n < 2:
        raise CertificateError(f"construct_complete needs n ≥ 2, got {n}")
    Me = sympy.ones(n, 1) / sympy.sqrt(n)
    return _from_exact(f"complete({n})", Me, 1, complete(n), "construction:complete", tol)


def _orthonormal_columns(rows: Sequence[Sequence]) -> sympy.Matrix:
    M1 = sympy.Matrix(rows)
    columns = sympy.Matrix.orthogonalize(*[M1.col(j) for j in range(M1.cols)], normalize=True)
    return sympy.Matrix.hstack(*columns).applyfunc(sympy.radsimp)


def _spider() -> sympy.Matrix:
    return _orthonormal_columns([
        (1, -2, 2, 1), (2, -1, -2, 2), (2, 2, 1, 2), (1, 2, 2, 0),
        (-2, -1, 2, 0), (2, -2, 1, 0), (1, 0, 0, 0),
    ])


def _paw() -> sympy.Matrix:
    return _orthonormal_columns([
        (1, -2, 1), (2, -1, 2), (2, 2, 2), (1, 2, 0), (-2, -1, 0), (2, -2, 0), (1, 0, 0),
    ])


def _k13_k3() -> sympy.Matrix:
    r2 = sympy.sqrt(2)
    return sympy.Matrix([
        (1, 2, 2), (2, 1, -2), (2, -2, 1), (1, 1, 1), (1, -1, 1), (-r2, 0, r2), (0, r2, 0),
    ])


def _bull_join() -> sympy.Matrix:
    r2, r51 = sympy.sqrt(2), sympy.sqrt(51)
    z1 = (2 * r51 - 1) / 7
    z2 = (6 * r51 + 4) / 35
    z3 = -(2 * r51 + 13) / 35
    return sympy.Matrix([
        (1, 0, 0), (1, 0, 1), (1, 1, 0), (0, r2, 0), (0, 0, r2),
        (1, -1, z1), (-1, 2, z2), (2, 1, z3),
    ])


def _c5_join() -> sympy.Matrix:
    a, b = 1 / sympy.sqrt(3), 1 / sympy.sqrt(2)
    return sympy.Matrix([
        (1, 0, 0), (1, 1, 0), (-1, 1, 1), (0, -1, 1), (0, 0, 1),
        (a, 0, a), (a, b, a), (a, -b, a),
    ])


def _triangle_square() -> sympy.Matrix:
    r2, h = sympy.sqrt(2), sympy.sqrt(sympy.Rational(1, 2))
    return sympy.Matrix([
        (sympy.sqrt(sympy.Rational(15, 2)), 0, 0), (0, 1, 1), (0, 1, 1), (0, 1, 2),
        (0, -2, 1), (1, -1, 0), (1, 0, 1), (h, r2, -r2),
    ])


def _k3_star(n: int) -> sympy.Matrix:
    """
    Rows 0-2 realize the K_3 of the complement, row 3 the star centre, and
    leaf j sits at angle (j mod 3)·60° so each angle class adds 4/3 of a
    rank-two block; the blocks sum with the centre row to 2I.
    """
    rows: List[Sequence] = [(1, 2, 2), (2, 1, -2), (2, -2, 1), (-1, 0, 1)]
    leaves = n - 4
    class_sizes = [len(range(cls, leaves, 3)) for cls in range(3)]
    for j in range(leaves):
        cls = j % 3
        theta = sympy.pi * cls / 3
        w = sympy.sqrt(sympy.Rational(4, 3) / class_sizes[cls])
        s, c = sympy.sin(theta), sympy.cos(theta)
        rows.append((w * s / sympy.sqrt(2), w * c, w * s / sympy.sqrt(2)))
    return sympy.Matrix(rows).applyfunc(sympy.radsimp)


def _complement_of(n: int, edges) -> Graph:
    return complete_minus(Graph(n, tuple(edges)))


def construct_fixed(name: str, n: Optional[int] = None, tol: Tolerances = DEFAULT_TOLERANCES) -> Q2Certificate:
    """
    Build a named closed-form construction.

    Args:
        name: spider, paw, k13_k3, bull_join, c5_join, triangle_square or
            k3_star, or one of their published names in CONSTRUCTION_ALIASES
        n: Vertex count for k3_star (n ≥ 7)
        tol: Tolerances

    Returns:
        Verified certificate; its target is K_n minus the listed removed edges
    """
    name = CONSTRUCTION_ALIASES.get(name, name)
    if name == "spider":
        Me, c = _spider(), 1
        target = _complement_of(7, [(0, 3), (0, 6), (1, 5), (1, 6), (2, 4), (2, 6)])
    elif name == "paw":
        Me, c = _paw(), 1
        target = _complement_of(7, [(0, 2), (0, 6), (1, 6), (2, 6)])
    elif name == "k13_k3":
        Me, c = _k13_k3(), 13
        target = _complement_of(7, [(0, 1), (0, 2), (1, 2), (3, 5), (4, 5), (5, 6)])
    elif name == "bull_join":
        Me, c = _bull_join(), 9
        target = _complement_of(8, [(0, 3), (0, 4), (1, 3), (2, 4), (3, 4), (2, 5)])
    elif name == "c5_join":
        Me, c = _c5_join(), 4
        target = _complement_of(8, [(0, 3), (0, 4), (1, 2), (1, 4), (2, 3), (2, 5)])
    elif name == "triangle_square":
        Me, c = _triangle_square(), 10
        target = _complement_of(8, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 7), (2, 7), (3, 4)])
    elif name == "k3_star":
        if n is None or n < 7:
            raise CertificateError(f"k3_star needs n ≥ 7, got {n}")
        Me, c = _k3_star(n), 11
        target = _complement_of(n, [(0, 1), (0, 2), (1, 2)] + [(3, v) for v in range(4, n)])
        name = f"k3_star({n})"
    else:
        raise CertificateError(f"Unknown construction: {name}")
    return _from_exact(name, Me, c, target, f"construction:{name}", tol)


def _random_unit_in_complement(constraints: List[np.ndarray], dim: int,
                               rng: np.random.Generator) -> Optional[np.ndarray]:
    if constraints:
        _, basis = rank_and_nullspace(np.vstack(constraints))
    else:
        basis = np.eye(dim)
    if basis.shape[1] == 0:
        return None
    v = basis @ rng.standard_normal(basis.shape[1])
    return v / np.linalg.norm(v)


def _constrained_rotation(F: np.ndarray, M1: np.ndarray, pattern2: Graph, cross_pattern: np.ndarray,
                          rng: np.random.Generator) -> Optional[np.ndarray]:
    """
    Orthogonal U (n2×n2) drawn row by row; row i lies in the orthogonal
    complement of the earlier rows and of every direction that would make a
    required zero of M_2 = U[:, :r]·F nonzero.
    """
    n2, r = pattern2.n, F.shape[0]
    G = F @ F.T
    cross = F @ M1.T
    U = np.zeros((n2, n2))

    def pad(v: np.ndarray) -> np.ndarray:
        out = np.zeros(n2)
        out[:r] = v
        return out

    for i in range(n2):
        constraints = [U[j] for j in range(i)]
        constraints += [pad(G @ U[j, :r]) for j in range(i) if not pattern2.has_edge(i, j)]
        constraints += [pad(cross[:, a]) for a in range(M1.shape[0]) if not cross_pattern[a, i]]
        row = _random_unit_in_complement(constraints, n2, rng)
        if row is None:
            return None
        U[i] = row
    return U


def gram_complete(M1: np.ndarray, pattern2: Graph, cross_pattern: np.ndarray, c: Optional[float] = None,
                  seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """
    Find M_2 with M_1ᵀM_1 + M_2ᵀM_2 = cI, M_2M_2ᵀ realizing ``pattern2`` and
    M_1M_2ᵀ nonzero exactly where ``cross_pattern`` is 1.

    Args:
        M1: n1×k block
        pattern2: Graph on the n2 new rows
        cross_pattern: n1×n2 0/1 matrix of required nonzeros between blocks
        c: Gram constant; defaults to λ_max(M_1ᵀM_1)
        seed: Seed for the random rotations
        tol: Tolerances (``rotation_attempts`` bounds the draws)

    Returns:
        n2×k matrix M_2
    """
    M1 = np.asarray(M1, dtype=float)
    n1, k = M1.shape
    n2 = pattern2.n
    cross_pattern = np.asarray(cross_pattern)
    if cross_pattern.shape != (n1, n2):
        raise CertificateError(f"Cross pattern has shape {cross_pattern.shape}, expected {(n1, n2)}")
    base = M1.T @ M1
    if c is None:
        c = float(sym_eigen(base, tol).eigenvalues[0])
    S = c * np.eye(k) - base
    B = psd_sqrt_factor(S, tol)

    _, sigma, vt = np.linalg.svd(B)
    r = int(np.sum(sigma > tol.psd * max(1.0, float(sigma[0]) if sigma.size else 0.0)))
    if r > n2:
        raise CertificateError(f"cI - M_1ᵀM_1 has rank {r}, more than the {n2} rows to fill")
    F = sigma[:r, None] * vt[:r]

    rng = np.random.default_rng(seed)
    constrained = bool(np.any(cross_pattern == 0)) or pattern2.m < n2 * (n2 - 1) // 2
    best_residual = float("inf")
    for attempt in range(tol.rotation_attempts):
        if constrained:
            U = _constrained_rotation(F, M1, pattern2, cross_pattern, rng)
            if U is None:
                continue
        elif n2 >= 2:
            U = special_ortho_group.rvs(n2, random_state=rng)
        else:
            U = np.ones((1, 1))
        M2 = U[:, :r] @ F

        stacked = np.vstack([M1, M2])
        product = stacked @ stacked.T
        pattern = pattern_of(product, tol=tol)
        mismatches = int(np.sum(pattern[n1:, n1:] != pattern2.adjacency)) // 2
        mismatches += int(np.sum(pattern[:n1, n1:] != (cross_pattern != 0)))
        best_residual = min(best_residual, float(mismatches))
        if mismatches == 0:
            gram_error = float(np.abs(stacked.T @ stacked - c * np.eye(k)).max())
            if gram_error > tol.gram * (1.0 + abs(c)):
                raise CertificateError(f"Gram completion drifted by {gram_error:.3g}", gram_error)
            logger.info(f"Gram completion found M_2 after {attempt + 1} draw(s)")
            return M2
    raise CertificateError(
        f"Gram completion did not meet the patterns in {tol.rotation_attempts} draws "
        f"(best: {best_residual:.0f} mismatched entries)",
        best_residual,
    )


def construct_gram(name: str, M1: np.ndarray, target: Graph, c: Optional[float] = None,
                   seed: int = DEFAULT_SEED, tol: Tolerances = DEFAULT_TOLERANCES) -> Q2Certificate:
    """
    Complete the first n1 rows of a realization of ``target`` by Gram
    completion; the last target.n - n1 vertices receive the new rows.
    """
    M1 = np.asarray(M1, dtype=float)
    n1 = M1.shape[0]
    adj = target.adjacency
    pattern2 = Graph.from_adjacency(adj[n1:, n1:])
    M2 = gram_complete(M1, pattern2, adj[:n1, n1:], c, seed, tol)
    cert = verify_certificate(name, target, np.vstack([M1, M2]), c, f"gram-completion(seed={seed})", tol)
    return require_verified(cert)
