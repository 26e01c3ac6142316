"""
Clique Incidence Spectra

Vertex-clique incidence matrices of graphs, the spectral, inertia and energy
bounds they give, and verified certificates that a graph admits a symmetric
matrix with exactly two distinct eigenvalues.
"""

__version__ = "1.0.0"

from .graph import Graph, parse_family_spec
from .graph_io import GraphParser, parse_graph, to_graph6
from .cliques import CliqueCover, incidence, min_clique_partition, validate_cover
from .config import DEFAULT_SEED, DEFAULT_TOLERANCES, Tolerances
from .spectral import SpectralContext, incidence_energies
from .bounds import BoundRecord, bound_suite, scan_partitions, spectral_report
from .ssp import SspResult, check_ssp, supergraph_transfer
from .certificates import Q2Certificate, verify_certificate
from .constructions import construct_fixed, construct_prism, construct_prism_join, gram_complete
from .search import numeric_q2_search
from .conjecture import ConjectureVerifier, verify_conjecture

__all__ = [
    "Graph",
    "parse_family_spec",
    "GraphParser",
    "parse_graph",
    "to_graph6",
    "CliqueCover",
    "incidence",
    "min_clique_partition",
    "validate_cover",
    "DEFAULT_SEED",
    "DEFAULT_TOLERANCES",
    "Tolerances",
    "SpectralContext",
    "incidence_energies",
    "BoundRecord",
    "bound_suite",
    "scan_partitions",
    "spectral_report",
    "SspResult",
    "check_ssp",
    "supergraph_transfer",
    "Q2Certificate",
    "verify_certificate",
    "construct_fixed",
    "construct_prism",
    "construct_prism_join",
    "gram_complete",
    "numeric_q2_search",
    "ConjectureVerifier",
    "verify_conjecture",
]
