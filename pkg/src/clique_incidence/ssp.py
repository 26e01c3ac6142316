"""
Strong Spectral Property: kernel of X ↦ AX - XA on symmetric X supported on
the non-edges of A, and the supergraph claims it licenses.
"""

import logging
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import LinearAlgebraError, SspError
from .graph import Graph, complement, complete_minus
from .graph_io import to_graph6
from .isomorphism import is_subgraph_up_to_iso
from .linalg import (
    as_symmetric,
    distinct_count,
    exact_rank,
    is_integral,
    pattern_of,
    rank_and_nullspace,
    spectrum_clusters,
    sym_eigen,
)

if TYPE_CHECKING:
    from .certificates import Q2Certificate

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class SspResult:
    """
    Kernel of the SSP system for one matrix.

    ``witness`` is a nonzero symmetric X with A∘X = I∘X = [A, X] = 0 when the
    kernel is nontrivial. ``exact_kernel_dimension`` is the rational nullity
    when the matrix entries are rational; it overrides the floating rank,
    which is kept in ``floating_kernel_dimension``.
    """

    kernel_dimension: int
    free_variables: int
    constraint_rows: int
    witness: Optional[np.ndarray] = None
    residuals: Dict[str, float] = field(default_factory=dict)
    exact_kernel_dimension: Optional[int] = None
    floating_kernel_dimension: Optional[int] = None
    full_system: bool = False

    @property
    def has_ssp(self) -> bool:
        return self.kernel_dimension == 0

    @property
    def exact_agrees(self) -> Optional[bool]:
        if self.exact_kernel_dimension is None:
            return None
        floating = self.kernel_dimension if self.floating_kernel_dimension is None else self.floating_kernel_dimension
        return self.exact_kernel_dimension == floating

    def to_dict(self) -> Dict[str, Any]:
        return {
            "has_ssp": self.has_ssp,
            "kernel_dimension": self.kernel_dimension,
            "free_variables": self.free_variables,
            "constraint_rows": self.constraint_rows,
            "exact_kernel_dimension": self.exact_kernel_dimension,
            "floating_kernel_dimension": self.floating_kernel_dimension,
            "exact_agrees": self.exact_agrees,
            "full_system": self.full_system,
            "witness": None if self.witness is None else self.witness.tolist(),
            "residuals": dict(self.residuals),
        }


def _free_pairs(pattern: np.ndarray) -> List[Tuple[int, int]]:
    n = pattern.shape[0]
    return [(i, j) for i in range(n) for j in range(i + 1, n) if not pattern[i, j]]


def _constraint_matrix(A: np.ndarray, free: Sequence[Tuple[int, int]], full_system: bool) -> np.ndarray:
    """
    One column per free pair (i, j): the commutator [A, E_ij + E_ji], either
    its strictly upper triangle or all n² entries.

    Works on float and on object (rational) arrays alike.
    """
    n = A.shape[0]
    rows_idx = None if full_system else np.triu_indices(n, 1)
    columns = []
    for i, j in free:
        X = np.zeros((n, n), dtype=A.dtype)
        X[i, j] = X[j, i] = 1
        K = A.dot(X) - X.dot(A)
        columns.append(K.ravel() if full_system else K[rows_idx])
    height = n * n if full_system else n * (n - 1) // 2
    if not columns:
        return np.zeros((height, 0), dtype=A.dtype)
    return np.stack(columns, axis=1)


def _exact_values(A: np.ndarray, exact) -> Optional[np.ndarray]:
    """Object array of exact rationals, or None when A has irrational entries."""
    if exact is not None:
        values = np.array(sympy.Matrix(exact).tolist(), dtype=object)
        if not all(sympy.sympify(v).is_rational for v in values.ravel()):
            return None
        return np.vectorize(sympy.Rational, otypes=[object])(values)
    if is_integral(A):
        return np.vectorize(int, otypes=[object])(np.round(A))
    return None


def check_ssp(A: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES, pattern: Optional[np.ndarray] = None,
              exact=None, full_system: bool = False) -> SspResult:
    """
    Decide whether a symmetric matrix has the Strong Spectral Property.

    Args:
        A: Symmetric matrix
        tol: Tolerances; ``ssp_rank`` scales the singular value cut-off
        pattern: 0/1 adjacency of the graph A realizes; defaults to
            pattern_of(A). Exact constructions pass their exact pattern.
        exact: Optional sympy matrix with the exact entries of A; integer
            matrices are handled exactly without it
        full_system: Use all n² commutator entries instead of the strictly
            upper triangle

    Returns:
        SspResult, with the exact nullity whenever A is rational
    """
    S = as_symmetric(A, tol)
    n = S.shape[0]
    P = pattern_of(S, tol=tol) if pattern is None else np.asarray(pattern)
    if P.shape != S.shape:
        raise SspError(f"Pattern shape {P.shape} does not match matrix shape {S.shape}")
    free = _free_pairs(P)
    C = _constraint_matrix(S, free, full_system)

    if free:
        sigma_max = float(np.linalg.norm(C, 2)) if C.size else 0.0
        cutoff = max(max(C.shape) * np.finfo(float).eps, tol.ssp_rank) * sigma_max
        rank, null_basis = rank_and_nullspace(C, tol=cutoff)
    else:
        rank, null_basis = 0, np.zeros((0, 0))
    kernel = len(free) - rank

    witness = None
    residuals: Dict[str, float] = {}
    if kernel > 0:
        x = null_basis[:, 0]
        witness = np.zeros((n, n))
        for value, (i, j) in zip(x, free):
            witness[i, j] = witness[j, i] = value
        residuals = {
            "hadamard": float(np.abs(S * witness).max()),
            "diagonal": float(np.abs(np.diag(witness)).max()),
            "commutator": float(np.abs(S @ witness - witness @ S).max()),
        }
        limit = tol.ssp_residual * (1.0 + float(np.abs(S).max()))
        if residuals["commutator"] > limit:
            logger.warning(f"SSP witness commutator residual {residuals['commutator']:.3g} exceeds {limit:.3g}")

    floating_kernel = kernel
    exact_kernel = None
    values = _exact_values(S, exact)
    if values is not None:
        try:
            exact_kernel = len(free) - (exact_rank(_constraint_matrix(values, free, full_system)) if free else 0)
        except LinearAlgebraError as e:
            logger.debug(f"Exact SSP check skipped: {e}")
    if exact_kernel is not None and exact_kernel != kernel:
        logger.warning(f"SSP kernel dimension: floating {kernel}, exact {exact_kernel}; using exact")
        kernel = exact_kernel

    logger.debug(f"SSP check n={n}: {len(free)} free variables, kernel dimension {kernel}")
    return SspResult(
        kernel_dimension=kernel,
        free_variables=len(free),
        constraint_rows=C.shape[0],
        witness=witness if kernel > 0 else None,
        residuals=residuals if kernel > 0 else {},
        exact_kernel_dimension=exact_kernel,
        floating_kernel_dimension=floating_kernel,
        full_system=full_system,
    )


@dataclass(frozen=True)
class TransferClaim:
    """q(G) ≤ q(A) for a supergraph G of the graph H that an SSP matrix A realizes."""

    source: Graph
    target: Graph
    q_bound: int
    spectrum: Tuple[Tuple[float, int], ...]
    source_name: str = ""
    embedding: Optional[Tuple[Tuple[int, int], ...]] = None

    @property
    def statement(self) -> str:
        return (f"q({to_graph6(self.target)}) ≤ {self.q_bound}: supergraph of {to_graph6(self.source)} "
                f"whose realization has the Strong Spectral Property")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "source": to_graph6(self.source),
            "target": to_graph6(self.target),
            "q_bound": self.q_bound,
            "spectrum": [[value, mult] for value, mult in self.spectrum],
            "source_name": self.source_name,
            "embedding": None if self.embedding is None else [list(p) for p in self.embedding],
            "statement": self.statement,
        }


def supergraph_transfer(result: SspResult, A: np.ndarray, h: Graph, g: Graph,
                        tol: Tolerances = DEFAULT_TOLERANCES, source_name: str = "") -> TransferClaim:
    """
    Claim q(G) ≤ q(A) for a supergraph G of H on the same vertex set.

    Args:
        result: SSP result for A
        A: Matrix realizing H
        h: Graph realized by A
        g: Supergraph of h with the same labels
        tol: Tolerances
        source_name: Name of the construction A came from

    Returns:
        TransferClaim (a claim, not a matrix for G)
    """
    if not result.has_ssp:
        raise SspError(f"Matrix does not have SSP (kernel dimension {result.kernel_dimension})")
    if h.n != g.n:
        raise SspError(f"Vertex sets differ: {h.n} and {g.n} vertices")
    missing = h.edge_set - g.edge_set
    if missing:
        raise SspError(f"{g} is not a supergraph of {h}: missing {sorted(missing)[:5]}")
    if not np.array_equal(pattern_of(A, tol=tol), h.adjacency):
        raise SspError("Matrix pattern does not match the source graph")
    spectrum = sym_eigen(A, tol)
    clusters = tuple(spectrum_clusters(spectrum.eigenvalues, spectrum.cluster_tolerance))
    return TransferClaim(source=h, target=g, q_bound=distinct_count(spectrum),
                         spectrum=clusters, source_name=source_name)


def complement_claims(certificates: Sequence["Q2Certificate"], h: Graph,
                      tol: Tolerances = DEFAULT_TOLERANCES) -> List[TransferClaim]:
    """
    Claims for K_n \\ H from every SSP certificate whose removed edges contain
    a copy of H.

    If H embeds in the complement B of a certificate's target through φ, then
    K_n \\ φ(H) contains the target and inherits its spectrum.
    """
    claims = []
    for cert in certificates:
        if cert.target.n != h.n or not cert.ssp.has_ssp:
            continue
        removed = complement(cert.target)
        found, embedding = is_subgraph_up_to_iso(h, removed)
        if not found:
            continue
        image = Graph(h.n, tuple((embedding[u], embedding[v]) for u, v in h.edges))
        claim = supergraph_transfer(cert.ssp, cert.product, cert.target, complete_minus(image), tol, cert.name)
        claims.append(TransferClaim(
            source=claim.source,
            target=claim.target,
            q_bound=claim.q_bound,
            spectrum=claim.spectrum,
            source_name=cert.name,
            embedding=tuple(sorted(embedding.items())),
        ))
        logger.debug(f"{cert.name} covers K_{h.n} minus {h}")
    return claims
