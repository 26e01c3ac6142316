"""
Eigenvalue, inertia and energy quantities of graphs and their clique
incidence matrices.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from .cliques import (
    PARTITION,
    CliqueCover,
    CliqueRegularity,
    classify_regularity,
    clique_partition_graph,
    clique_signless_laplacian,
    incidence,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .errors import CoverError, InconsistencyError
from .graph import Graph, independence_number, line_graph
from .linalg import exact_rank, rank_and_nullspace, sym_eigen

logger = logging.getLogger(__name__)


def signless_laplacian(g: Graph) -> np.ndarray:
    """Q(G) = D(G) + A(G)."""
    return np.diag(g.degrees) + g.adjacency


def inertia(values: Sequence[float], tol: Tolerances = DEFAULT_TOLERANCES) -> Tuple[int, int, int]:
    """(ν⁺, ν⁻, nullity) with zero threshold ``tol.inertia_zero·(1 + max|λ|)``."""
    vals = np.asarray(values, dtype=float)
    if vals.size == 0:
        return 0, 0, 0
    zero = tol.inertia_zero * (1.0 + np.abs(vals).max())
    positive = int(np.sum(vals > zero))
    negative = int(np.sum(vals < -zero))
    return positive, negative, int(vals.size) - positive - negative


def energy_from_spectrum(values: Sequence[float], tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    Energy of a trace-zero spectrum, cross-checked four ways.

    Σ|λ_i| must agree with twice the positive sum, twice the negative sum,
    and twice the best prefix sums from either end.
    """
    lam = np.sort(np.asarray(values, dtype=float))[::-1]
    n = lam.size
    if n == 0:
        return 0.0
    direct = float(np.abs(lam).sum())
    positive = 2.0 * float(lam[lam > 0].sum())
    negative = -2.0 * float(lam[lam < 0].sum())
    top_prefix = 2.0 * float(max(np.cumsum(lam).max(), 0.0))
    bottom_prefix = 2.0 * float(max(np.cumsum(-lam[::-1]).max(), 0.0))
    limit = tol.energy_agreement * n * (1.0 + float(np.abs(lam).max()))
    for name, value in (("positive part", positive), ("negative part", negative),
                        ("top prefix", top_prefix), ("bottom prefix", bottom_prefix)):
        if abs(value - direct) > limit:
            raise InconsistencyError(
                f"Energy via {name} is {value:.12g}, direct sum is {direct:.12g}"
            )
    return direct


def graph_energy(g: Graph, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """E(G) = Σ|λ_i(G)|."""
    return energy_from_spectrum(sym_eigen(g.adjacency, tol).eigenvalues, tol)


def matrix_energy(B: np.ndarray, kind: str = "singular_sum", tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """
    Energy of an arbitrary matrix.

    Args:
        B: Real matrix
        kind: 'singular_sum' (Σσ_i) or 'mean_deviation' (Σ|x_i - x̄| over the
            eigenvalues of a symmetric B, x̄ their mean)
        tol: Tolerances to use

    Returns:
        The energy
    """
    A = np.asarray(B, dtype=float)
    if kind == "singular_sum":
        if A.ndim != 2:
            raise ValueError(f"singular_sum needs a matrix, got shape {A.shape}")
        if A.size == 0:
            return 0.0
        return float(np.linalg.svd(A, compute_uv=False).sum())
    elif kind == "mean_deviation":
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"mean_deviation needs a square symmetric matrix, got shape {A.shape}")
        if A.size == 0:
            return 0.0
        lam = sym_eigen(A, tol).eigenvalues
        return float(np.abs(lam - lam.mean()).sum())
    raise ValueError(f"Unknown energy kind: {kind}")


def tau_index(qf_values: Sequence[float], tbar: float, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """
    Largest τ with λ_τ(Q_F) > t̄; values within ``tol.tau_tie`` of t̄ are not counted.

    Also confirms Σ|λ_i - t̄| = 2Σ_{i≤τ}λ_i - 2τt̄.
    """
    lam = np.sort(np.asarray(qf_values, dtype=float))[::-1]
    tau = int(np.sum(lam > tbar + tol.tau_tie))
    direct = float(np.abs(lam - tbar).sum())
    formula = 2.0 * float(lam[:tau].sum()) - 2.0 * tau * tbar
    if abs(direct - formula) > tol.energy_agreement * max(lam.size, 1) * (1.0 + abs(tbar)):
        raise InconsistencyError(
            f"Clique Laplacian energy {direct:.12g} disagrees with the τ formula {formula:.12g}"
        )
    return tau


@dataclass(frozen=True)
class IncidenceEnergies:
    ie: float
    ie_f: float
    sqrt_t_bound: float

    def to_dict(self) -> Dict[str, float]:
        return {"IE": self.ie, "IE_F": self.ie_f, "sqrt_t_bound": self.sqrt_t_bound}


def _require_partition(cover: CliqueCover) -> None:
    if cover.kind != PARTITION:
        raise CoverError(f"Expected a clique partition, got a {cover.kind}")


def incidence_energies(g: Graph, cover: CliqueCover, tol: Tolerances = DEFAULT_TOLERANCES) -> IncidenceEnergies:
    """IE = Σ√q_i and IE_F = Σ√λ_i(Q_F), with IE_F ≤ IE and IE_F ≤ Σ√t_i checked."""
    _require_partition(cover)
    q = sym_eigen(signless_laplacian(g), tol).eigenvalues
    qf_matrix, _ = clique_signless_laplacian(incidence(cover))
    qf = sym_eigen(qf_matrix, tol).eigenvalues
    return _incidence_energy_values(q, qf, cover.clique_degrees, tol)


def _incidence_energy_values(q: np.ndarray, qf: np.ndarray, t: np.ndarray, tol: Tolerances) -> IncidenceEnergies:
    ie = float(np.sqrt(np.clip(q, 0.0, None)).sum())
    ie_f = float(np.sqrt(np.clip(qf, 0.0, None)).sum())
    bound = float(np.sqrt(np.asarray(t, dtype=float)).sum())
    slack = tol.inequality_slack * (1.0 + ie)
    if ie_f > ie + slack:
        raise InconsistencyError(f"IE_F = {ie_f:.12g} exceeds IE = {ie:.12g}")
    if ie_f > bound + slack:
        raise InconsistencyError(f"IE_F = {ie_f:.12g} exceeds Σ√t = {bound:.12g}")
    return IncidenceEnergies(ie=ie, ie_f=ie_f, sqrt_t_bound=bound)


class SpectralContext:
    """
    Every spectrum and derived quantity of a graph with a clique partition,
    computed on first use and shared by the bound suite and the report.
    """

    def __init__(self, g: Graph, cover: CliqueCover, tol: Tolerances = DEFAULT_TOLERANCES):
        _require_partition(cover)
        if cover.graph != g:
            raise CoverError("Cover belongs to a different graph")
        self.g = g
        self.cover = cover
        self.tol = tol
        self.logger = logging.getLogger(__name__)

    @property
    def n(self) -> int:
        return self.g.n

    @property
    def k(self) -> int:
        return self.cover.k

    @property
    def m(self) -> int:
        return self.g.m

    @cached_property
    def incidence_matrix(self) -> np.ndarray:
        return incidence(self.cover).matrix

    @cached_property
    def qf_rf(self) -> Tuple[np.ndarray, np.ndarray]:
        return clique_signless_laplacian(incidence(self.cover))

    @cached_property
    def lam(self) -> np.ndarray:
        return sym_eigen(self.g.adjacency, self.tol).eigenvalues

    @cached_property
    def q(self) -> np.ndarray:
        return sym_eigen(signless_laplacian(self.g), self.tol).eigenvalues

    @cached_property
    def qf(self) -> np.ndarray:
        return sym_eigen(self.qf_rf[0], self.tol).eigenvalues

    @cached_property
    def rf(self) -> np.ndarray:
        return sym_eigen(self.qf_rf[1], self.tol).eigenvalues

    @cached_property
    def partition_graph(self) -> Graph:
        return clique_partition_graph(self.cover)

    @cached_property
    def lam_pg(self) -> np.ndarray:
        return sym_eigen(self.partition_graph.adjacency, self.tol).eigenvalues

    @cached_property
    def lam_lg(self) -> np.ndarray:
        return sym_eigen(line_graph(self.g).adjacency, self.tol).eigenvalues

    @cached_property
    def inertia(self) -> Tuple[int, int, int]:
        return inertia(self.lam, self.tol)

    @cached_property
    def inertia_pg(self) -> Tuple[int, int, int]:
        return inertia(self.lam_pg, self.tol)

    @cached_property
    def inertia_lg(self) -> Tuple[int, int, int]:
        return inertia(self.lam_lg, self.tol)

    @cached_property
    def rank(self) -> int:
        """rank(M_F), exact over the rationals and cross-checked against the SVD."""
        exact = exact_rank(self.incidence_matrix)
        numeric, _ = rank_and_nullspace(self.incidence_matrix)
        if exact != numeric:
            self.logger.warning(f"Incidence rank: exact {exact}, floating {numeric}")
        return exact

    @cached_property
    def regularity(self) -> CliqueRegularity:
        return classify_regularity(self.cover)

    @cached_property
    def alpha(self) -> int:
        return independence_number(self.g)

    @cached_property
    def t(self) -> np.ndarray:
        return self.cover.sorted_clique_degrees.astype(float)

    @cached_property
    def s(self) -> np.ndarray:
        return self.cover.sorted_sizes.astype(float)

    @cached_property
    def d(self) -> np.ndarray:
        return np.sort(self.g.degrees.astype(float))[::-1]

    @property
    def tbar(self) -> float:
        return self.cover.mean_clique_degree

    @cached_property
    def tau(self) -> int:
        return tau_index(self.qf, self.tbar, self.tol)

    @cached_property
    def energies(self) -> Dict[str, float]:
        n = self.n
        incid = _incidence_energy_values(self.q, self.qf, self.cover.clique_degrees, self.tol)
        rf_mean = float(self.rf.mean()) if self.k else 0.0
        return {
            "E(G)": energy_from_spectrum(self.lam, self.tol),
            "LE+": float(np.abs(self.q - (2.0 * self.m / n if n else 0.0)).sum()),
            "IE": incid.ie,
            "IE_F": incid.ie_f,
            "sqrt_t_bound": incid.sqrt_t_bound,
            "E(Q_F)": float(np.abs(self.qf - self.tbar).sum()),
            "E(R_F)": float(np.abs(self.rf - rf_mean).sum()),
            "E(P_G)": energy_from_spectrum(self.lam_pg, self.tol),
            "E(L_G)": energy_from_spectrum(self.lam_lg, self.tol),
        }

    def spectra_dict(self) -> Dict[str, Any]:
        return {
            "adjacency": [float(x) for x in self.lam],
            "signless_laplacian": [float(x) for x in self.q],
            "clique_signless_laplacian": [float(x) for x in self.qf],
            "clique_companion": [float(x) for x in self.rf],
            "partition_graph": [float(x) for x in self.lam_pg],
            "line_graph": [float(x) for x in self.lam_lg],
        }
