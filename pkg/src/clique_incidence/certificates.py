"""
Two-eigenvalue certificates: a matrix M with MᵀM = cI whose product MMᵀ
realizes a target graph, verified invariant by invariant.
"""

import json
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import CertificateError
from .graph import Graph, relabel
from .graph_io import parse_graph, to_graph6
from .linalg import pattern_of, spectrum_clusters, sym_eigen
from .ssp import SspResult, check_ssp

logger = logging.getLogger(__name__)

VERIFIED = "verified"
FAILED = "failed"


@dataclass(frozen=True, eq=False)
class Q2Certificate:
    """
    Realization of ``target`` by A = MMᵀ with MᵀM = cI_k.

    A then has exactly the eigenvalues c (multiplicity k) and 0 (n - k).
    ``exact_entries`` holds sympy strings for matrices known in closed form.
    """

    name: str
    target: Graph
    M: np.ndarray
    c: float
    provenance: str
    spectrum: Tuple[Tuple[float, int], ...] = ()
    ssp: Optional[SspResult] = None
    status: str = FAILED
    failure_reason: str = ""
    exact_entries: Optional[Tuple[Tuple[str, ...], ...]] = None
    tolerances: Tolerances = field(default=DEFAULT_TOLERANCES, repr=False)

    @property
    def n(self) -> int:
        return self.M.shape[0]

    @property
    def k(self) -> int:
        return self.M.shape[1]

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    @property
    def product(self) -> np.ndarray:
        return self.M @ self.M.T

    def exact_matrix(self) -> Optional[sympy.Matrix]:
        if self.exact_entries is None:
            return None
        return sympy.Matrix([[sympy.sympify(x) for x in row] for row in self.exact_entries])

    def relabeled(self, perm: Sequence[int]) -> "Q2Certificate":
        """Certificate for relabel(target, perm): row v of M moves to row perm[v]."""
        perm = [int(p) for p in perm]
        if sorted(perm) != list(range(self.n)):
            raise CertificateError(f"Not a permutation of 0..{self.n - 1}: {perm}")
        M = np.empty_like(self.M)
        M[perm] = self.M
        exact = None
        if self.exact_entries is not None:
            rows: List[Tuple[str, ...]] = [()] * self.n
            for v, p in enumerate(perm):
                rows[p] = self.exact_entries[v]
            exact = tuple(rows)
        return verify_certificate(self.name, relabel(self.target, perm), M, self.c,
                                  self.provenance, self.tolerances, exact_entries=exact)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "target": to_graph6(self.target),
            "n": self.n,
            "k": self.k,
            "c": self.c,
            "M": self.M.tolist(),
            "exact_entries": None if self.exact_entries is None else [list(r) for r in self.exact_entries],
            "spectrum": [[value, mult] for value, mult in self.spectrum],
            "ssp": None if self.ssp is None else self.ssp.to_dict(),
            "status": self.status,
            "failure_reason": self.failure_reason,
            "provenance": self.provenance,
            "tolerances": self.tolerances.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Q2Certificate":
        """Load a certificate and verify it again from its matrix."""
        data = json.loads(text)
        try:
            tol = DEFAULT_TOLERANCES.with_overrides(data.get("tolerances", {}))
            exact = data.get("exact_entries")
            cert = verify_certificate(
                data["name"],
                parse_graph(data["target"], "graph6"),
                np.array(data["M"], dtype=float),
                float(data["c"]),
                data["provenance"],
                tol,
                exact_entries=None if exact is None else tuple(tuple(r) for r in exact),
            )
        except KeyError as e:
            raise CertificateError(f"Certificate file is missing field {e}") from e
        if data.get("status") == VERIFIED and not cert.verified:
            raise CertificateError(f"Stored certificate '{cert.name}' no longer verifies: {cert.failure_reason}")
        return cert


def _exact_product(exact_entries) -> Optional[sympy.Matrix]:
    Me = sympy.Matrix([[sympy.sympify(x) for x in row] for row in exact_entries])
    return (Me * Me.T).applyfunc(sympy.simplify)


def verify_certificate(name: str, target: Graph, M: np.ndarray, c: Optional[float], provenance: str,
                       tol: Tolerances = DEFAULT_TOLERANCES,
                       exact_entries: Optional[Tuple[Tuple[str, ...], ...]] = None,
                       with_ssp: bool = True) -> Q2Certificate:
    """
    Check a candidate certificate.

    Checks run in order and stop at the first failure: shape (1 ≤ k < n),
    MᵀM = cI, pattern of MMᵀ equal to the target, and exactly two
    eigenvalue clusters {c^[k], 0^[n-k]}. The SSP result is recorded but
    does not decide the status.

    Args:
        name: Certificate name
        target: Graph to realize
        M: n×k matrix
        c: Gram constant; the mean diagonal of MᵀM when None
        provenance: Where M came from
        tol: Tolerances
        exact_entries: sympy strings for M, used for an exact pattern and
            an exact SSP cross-check
        with_ssp: Whether to run the SSP check

    Returns:
        Q2Certificate with status 'verified' or 'failed'
    """
    M = np.array(M, dtype=float)
    fields = dict(name=name, target=target, provenance=provenance, tolerances=tol, exact_entries=exact_entries)

    def failed(reason: str, c_value: float = 0.0) -> Q2Certificate:
        logger.info(f"Certificate {name} failed: {reason}")
        return Q2Certificate(M=M, c=c_value, status=FAILED, failure_reason=reason, **fields)

    if M.ndim != 2:
        return failed(f"M must be a matrix, got shape {M.shape}")
    n, k = M.shape
    if not 1 <= k < n:
        return failed(f"need 1 ≤ k < n, got n={n}, k={k}")
    if target.n != n:
        return failed(f"target has {target.n} vertices, M has {n} rows")

    gram = M.T @ M
    c_value = float(np.mean(np.diag(gram))) if c is None else float(c)
    gram_error = float(np.abs(gram - c_value * np.eye(k)).max())
    if gram_error > tol.gram * (1.0 + abs(c_value)):
        return failed(f"MᵀM differs from {c_value:.12g}·I by {gram_error:.3g}", c_value)

    product = M @ M.T
    exact_product = _exact_product(exact_entries) if exact_entries is not None else None
    if exact_product is not None:
        pattern = np.array([[0 if i == j or exact_product[i, j] == 0 else 1 for j in range(n)]
                            for i in range(n)], dtype=np.int64)
        if not np.array_equal(pattern, pattern_of(product, tol=tol)):
            return failed("exact and floating zero patterns of MMᵀ differ", c_value)
    else:
        pattern = pattern_of(product, tol=tol)
    if not np.array_equal(pattern, target.adjacency):
        diff = np.argwhere(np.triu(pattern != target.adjacency, 1))
        return failed(f"pattern of MMᵀ differs from the target at {[tuple(map(int, p)) for p in diff[:5]]}",
                      c_value)

    spec = sym_eigen(product, tol)
    clusters = tuple(spectrum_clusters(spec.eigenvalues, spec.cluster_tolerance))
    expected = ((c_value, k), (0.0, n - k))
    scale = tol.cluster * (1.0 + abs(c_value))
    if len(clusters) != 2 or any(
        mult != emult or abs(value - evalue) > scale
        for (value, mult), (evalue, emult) in zip(clusters, expected)
    ):
        return failed(f"spectrum clusters {clusters} are not {{c^[{k}], 0^[{n - k}]}}", c_value)

    ssp = None
    if with_ssp:
        exact_for_ssp = exact_product if exact_product is not None and all(
            x.is_rational for x in exact_product) else None
        ssp = check_ssp(product, tol, pattern=target.adjacency, exact=exact_for_ssp)

    logger.info(f"Certificate {name} verified: n={n}, k={k}, c={c_value:.12g}")
    return Q2Certificate(M=M, c=c_value, spectrum=clusters, ssp=ssp, status=VERIFIED, **fields)


def require_verified(cert: Q2Certificate, expected: Optional[Graph] = None) -> Q2Certificate:
    """Raise CertificateError unless verified (and, if given, realizing ``expected``)."""
    if not cert.verified:
        raise CertificateError(f"Construction '{cert.name}' does not verify: {cert.failure_reason}")
    if expected is not None and cert.target != expected:
        raise CertificateError(f"Construction '{cert.name}' realizes {cert.target}, expected {expected}")
    return cert


def certificate_catalog(n: int, tol: Tolerances = DEFAULT_TOLERANCES, require_ssp: bool = True) -> List[Q2Certificate]:
    """
    Every exact construction on n vertices, optionally only those with SSP.

    Args:
        n: Vertex count
        tol: Tolerances
        require_ssp: Drop certificates whose matrix lacks SSP

    Returns:
        Verified certificates in a fixed order
    """
    from .constructions import (
        FIXED_CONSTRUCTIONS,
        construct_complete,
        construct_fixed,
        construct_prism,
        construct_prism_join,
    )

    catalog: List[Q2Certificate] = []
    if n >= 2:
        catalog.append(construct_complete(n, tol))
    if n % 2 == 0 and n // 2 >= 3:
        catalog.append(construct_prism(n // 2, tol))
    if n % 3 == 0 and n // 3 >= 3:
        catalog.append(construct_prism_join(n // 3, tol))
    for name, size in FIXED_CONSTRUCTIONS.items():
        if size == n or (size is None and n >= 7):
            catalog.append(construct_fixed(name, n if size is None else None, tol))

    if require_ssp:
        kept = [cert for cert in catalog if cert.ssp is not None and cert.ssp.has_ssp]
        for cert in catalog:
            if cert not in kept:
                logger.warning(f"Certificate {cert.name} lacks SSP; left out of the catalog")
        catalog = kept
    logger.info(f"Certificate catalog for n={n}: {[cert.name for cert in catalog]}")
    return catalog
