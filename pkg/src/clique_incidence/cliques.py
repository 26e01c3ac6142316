"""
Clique partitions and edge clique covers, their vertex-clique incidence
matrices, the products Q_F = MMᵀ and R_F = MᵀM, and the clique-partition
graph P_G.
"""

import json
import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .config import DEFAULT_SEED, DEFAULT_TOLERANCES, Tolerances
from .errors import CoverError, CoverViolation, SizeGuardError
from .graph import Graph
from .graph_io import parse_graph, to_graph6
from .linalg import pattern_of

logger = logging.getLogger(__name__)

PARTITION = "partition"
COVER = "cover"
EXACT_PARTITION_GUARD = 12

Clique = Tuple[int, ...]


@dataclass(frozen=True)
class CliqueCover:
    """
    Ordered cliques C_1..C_k of a graph, tagged as a partition or a cover.

    ``provenance`` records how the cliques were obtained (exact, greedy,
    edges, file, given).
    """

    graph: Graph
    cliques: Tuple[Clique, ...]
    kind: str = PARTITION
    provenance: str = "given"

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return len(self.cliques)

    @cached_property
    def clique_degrees(self) -> np.ndarray:
        """t_i: number of cliques containing vertex i."""
        t = np.zeros(self.n, dtype=np.int64)
        for clique in self.cliques:
            t[list(clique)] += 1
        t.setflags(write=False)
        return t

    @cached_property
    def sizes(self) -> np.ndarray:
        """s_j = |C_j|."""
        s = np.array([len(c) for c in self.cliques], dtype=np.int64)
        s.setflags(write=False)
        return s

    @property
    def sorted_clique_degrees(self) -> np.ndarray:
        return np.sort(self.clique_degrees)[::-1]

    @property
    def sorted_sizes(self) -> np.ndarray:
        return np.sort(self.sizes)[::-1]

    @property
    def mean_clique_degree(self) -> float:
        return float(self.clique_degrees.sum()) / self.n if self.n else 0.0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "provenance": self.provenance,
            "graph6": to_graph6(self.graph),
            "cliques": [list(c) for c in self.cliques],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def cover_from_json(text: str, graph: Optional[Graph] = None) -> CliqueCover:
    """
    Read a cover written by ``CliqueCover.to_json`` (or a bare list of cliques).

    Args:
        text: JSON text
        graph: Graph the cover belongs to; required when the JSON has no graph6

    Returns:
        Validated cover
    """
    data = json.loads(text)
    if isinstance(data, list):
        data = {"cliques": data}
    stored = data.get("graph6")
    if graph is None:
        if stored is None:
            raise CoverError("Cover file has no graph6 and no graph was given")
        graph = parse_graph(stored, "graph6")
    elif stored is not None and parse_graph(stored, "graph6") != graph:
        raise CoverError("Cover file was written for a different graph")
    return validate_cover(graph, data["cliques"], data.get("kind", PARTITION),
                          provenance=data.get("provenance", "file"))


def find_cover_violations(g: Graph, cliques: Sequence[Sequence[int]], kind: str) -> List[CoverViolation]:
    violations: List[CoverViolation] = []
    if kind not in (PARTITION, COVER):
        return [CoverViolation("unknown kind", detail=str(kind))]
    hits: Dict[Tuple[int, int], int] = {}
    for index, clique in enumerate(cliques):
        vs = [int(v) for v in clique]
        if len(set(vs)) < 2:
            violations.append(CoverViolation("trivial clique", index, detail="fewer than two vertices"))
            continue
        if len(set(vs)) != len(vs):
            violations.append(CoverViolation("repeated vertex", index))
        bad = [v for v in vs if not 0 <= v < g.n]
        if bad:
            violations.append(CoverViolation("vertex out of range", index, detail=str(bad)))
            continue
        for u, v in combinations(sorted(set(vs)), 2):
            if not g.has_edge(u, v):
                violations.append(CoverViolation("not a clique", index, (u, v)))
            else:
                hits[(u, v)] = hits.get((u, v), 0) + 1
    for e in g.edges:
        count = hits.get(e, 0)
        if count == 0:
            violations.append(CoverViolation("uncovered edge", edge=e))
        elif count > 1 and kind == PARTITION:
            violations.append(CoverViolation("doubly covered edge", edge=e, detail=f"{count} cliques"))
    return violations


def validate_cover(g: Graph, cliques: Sequence[Sequence[int]], kind: str = PARTITION,
                   provenance: str = "given") -> CliqueCover:
    """
    Check a list of vertex subsets against g and return the typed cover.

    Raises:
        CoverError: carrying every violation found
    """
    violations = find_cover_violations(g, cliques, kind)
    if violations:
        raise CoverError(f"Invalid clique {kind}", violations)
    normalized = tuple(tuple(sorted(int(v) for v in c)) for c in cliques)
    return CliqueCover(graph=g, cliques=normalized, kind=kind, provenance=provenance)


def edge_partition(g: Graph) -> CliqueCover:
    """F = E."""
    return CliqueCover(graph=g, cliques=tuple(g.edges), kind=PARTITION, provenance="edges")


class _UncoveredEdges:
    """Mutable view of the edges not yet assigned to a clique."""

    def __init__(self, g: Graph):
        self.n = g.n
        self.nbrs = [set(g.neighbors[v]) for v in range(g.n)]
        self.count = g.m

    def lowest(self) -> Tuple[int, int]:
        for u in range(self.n):
            higher = [w for w in self.nbrs[u] if w > u]
            if higher:
                return u, min(higher)
        raise IndexError("no uncovered edge")

    def cliques_through(self, u: int, v: int) -> List[Clique]:
        """Every clique of uncovered edges containing u and v, largest first."""
        found: List[Clique] = []

        def extend(chosen: List[int], candidates: List[int]) -> None:
            found.append(tuple(sorted(chosen)))
            for i, w in enumerate(candidates):
                rest = [x for x in candidates[i + 1:] if x in self.nbrs[w]]
                extend(chosen + [w], rest)

        extend([u, v], sorted(self.nbrs[u] & self.nbrs[v]))
        found.sort(key=lambda c: (-len(c), c))
        return found

    def remove(self, clique: Clique) -> None:
        for a, b in combinations(clique, 2):
            self.nbrs[a].discard(b)
            self.nbrs[b].discard(a)
        self.count -= len(clique) * (len(clique) - 1) // 2

    def restore(self, clique: Clique) -> None:
        for a, b in combinations(clique, 2):
            self.nbrs[a].add(b)
            self.nbrs[b].add(a)
        self.count += len(clique) * (len(clique) - 1) // 2

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in sorted(self.nbrs[u]) if w > u]

    def lower_bound(self) -> int:
        """Size of a greedy set of uncovered edges no two of which fit in one clique."""
        witness: List[Tuple[int, int]] = []
        for e in self.edges():
            if all(not self._compatible(e, f) for f in witness):
                witness.append(e)
        return len(witness)

    def _compatible(self, e: Tuple[int, int], f: Tuple[int, int]) -> bool:
        vs = sorted(set(e) | set(f))
        return all(b in self.nbrs[a] for a, b in combinations(vs, 2))


def enumerate_partitions(g: Graph, limit: Optional[int] = None) -> Iterator[Tuple[Clique, ...]]:
    """
    Yield every clique partition of g, each as a tuple of sorted cliques.

    Each partition is produced once: the lowest uncovered edge is always
    assigned first.
    """
    state = _UncoveredEdges(g)
    chosen: List[Clique] = []
    produced = 0

    def walk() -> Iterator[Tuple[Clique, ...]]:
        nonlocal produced
        if limit is not None and produced >= limit:
            return
        if state.count == 0:
            produced += 1
            yield tuple(chosen)
            return
        u, v = state.lowest()
        for clique in state.cliques_through(u, v):
            state.remove(clique)
            chosen.append(clique)
            yield from walk()
            chosen.pop()
            state.restore(clique)
            if limit is not None and produced >= limit:
                return

    yield from walk()


def _exact_partition(g: Graph) -> List[Clique]:
    state = _UncoveredEdges(g)
    best: List[Clique] = list(g.edges)
    chosen: List[Clique] = []

    def search() -> None:
        nonlocal best
        if state.count == 0:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + state.lower_bound() >= len(best):
            return
        u, v = state.lowest()
        for clique in state.cliques_through(u, v):
            state.remove(clique)
            chosen.append(clique)
            search()
            chosen.pop()
            state.restore(clique)

    search()
    return best


def _greedy_partition(g: Graph, seed: int) -> List[Clique]:
    rng = np.random.default_rng(seed)
    state = _UncoveredEdges(g)
    cliques: List[Clique] = []
    while state.count:
        edges = state.edges()
        u, v = edges[int(rng.integers(len(edges)))]
        clique = [u, v]
        candidates = sorted(state.nbrs[u] & state.nbrs[v])
        for w in rng.permutation(candidates) if candidates else []:
            w = int(w)
            if all(w in state.nbrs[x] for x in clique):
                clique.append(w)
        clique_t = tuple(sorted(clique))
        state.remove(clique_t)
        cliques.append(clique_t)
    return cliques


def min_clique_partition(g: Graph, mode: str = "exact", seed: int = DEFAULT_SEED) -> CliqueCover:
    """
    Clique partition of g.

    Args:
        g: Graph to partition
        mode: 'exact' (branch and bound, k = cp(G)), 'greedy' (seeded
            maximal cliques, not optimal) or 'edges' (F = E)
        seed: Seed for greedy mode

    Returns:
        CliqueCover whose provenance names the mode
    """
    if mode == "exact":
        if g.n > EXACT_PARTITION_GUARD:
            raise SizeGuardError("min_clique_partition (exact)", g.n, EXACT_PARTITION_GUARD)
        cliques = _exact_partition(g)
        provenance = "exact"
    elif mode == "greedy":
        cliques = _greedy_partition(g, seed)
        provenance = f"greedy(seed={seed})"
    elif mode == "edges":
        return edge_partition(g)
    else:
        raise ValueError(f"Unknown partition mode: {mode}")
    logger.info(f"{provenance} clique partition of {g}: {len(cliques)} cliques")
    return CliqueCover(graph=g, cliques=tuple(cliques), kind=PARTITION, provenance=provenance)


@dataclass(frozen=True, eq=False)
class IncidenceMatrix:
    """Vertex-clique incidence matrix with the cover it came from."""

    matrix: np.ndarray
    mode: str
    source: CliqueCover = field(repr=False)


def incidence(cover: CliqueCover, mode: str = "binary",
              weights: Union[None, np.ndarray, Mapping[Tuple[int, int], float]] = None,
              tol: Tolerances = DEFAULT_TOLERANCES) -> IncidenceMatrix:
    """
    Build the n×k incidence matrix of a cover.

    Args:
        cover: Clique cover
        mode: 'binary' for 0/1 entries, 'weighted' for real weights
        weights: n×k array or {(vertex, clique_index): weight}; required in
            weighted mode, every incidence pair must get a nonzero weight
        tol: Tolerances for the S(G) membership check

    Returns:
        IncidenceMatrix
    """
    n, k = cover.n, cover.k
    binary = np.zeros((n, k), dtype=np.int64)
    for j, clique in enumerate(cover.cliques):
        binary[list(clique), j] = 1
    if mode == "binary":
        return IncidenceMatrix(binary, "binary", cover)
    if mode != "weighted":
        raise ValueError(f"Unknown incidence mode: {mode}")
    if weights is None:
        raise CoverError("Weighted incidence needs weights")

    if isinstance(weights, Mapping):
        M = np.zeros((n, k))
        for (i, j), w in weights.items():
            M[i, j] = w
    else:
        M = np.array(weights, dtype=float)
        if M.shape != (n, k):
            raise CoverError(f"Weights have shape {M.shape}, expected {(n, k)}")

    violations = []
    for i in range(n):
        for j in range(k):
            if binary[i, j] and M[i, j] == 0:
                violations.append(CoverViolation("zero weight", j, detail=f"vertex {i}"))
            elif not binary[i, j] and M[i, j] != 0:
                violations.append(CoverViolation("weight outside clique", j, detail=f"vertex {i}"))
    if violations:
        raise CoverError("Invalid incidence weights", violations)

    pattern = pattern_of(M @ M.T, tol=tol)
    mismatched = [
        (i, j) for i in range(n) for j in range(i + 1, n)
        if pattern[i, j] != cover.graph.adjacency[i, j]
    ]
    if mismatched:
        raise CoverError(
            "Weighted incidence product is not in S(G)",
            [CoverViolation("pattern mismatch", edge=e) for e in mismatched],
        )
    return IncidenceMatrix(M, "weighted", cover)


def clique_signless_laplacian(inc: IncidenceMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """(Q_F, R_F) = (MMᵀ, MᵀM); integer arrays in binary mode."""
    M = inc.matrix
    return M @ M.T, M.T @ M


def clique_partition_graph(cover: CliqueCover) -> Graph:
    """P_G: cliques adjacent when they share a vertex."""
    sets = [set(c) for c in cover.cliques]
    edges = [(i, j) for i, j in combinations(range(cover.k), 2) if sets[i] & sets[j]]
    return Graph(cover.k, tuple(edges))


@dataclass(frozen=True)
class CliqueRegularity:
    t_regular: bool
    t: Optional[int]
    s_uniform: bool
    s: Optional[int]

    @property
    def st_regular(self) -> bool:
        return self.t_regular and self.s_uniform

    def to_dict(self) -> Dict[str, Any]:
        return {
            "t_regular": self.t_regular,
            "t": self.t,
            "s_uniform": self.s_uniform,
            "s": self.s,
            "st_regular": self.st_regular,
        }


def classify_regularity(cover: CliqueCover) -> CliqueRegularity:
    t = cover.clique_degrees
    s = cover.sizes
    t_regular = cover.n > 0 and bool(np.all(t == t[0]))
    s_uniform = cover.k > 0 and bool(np.all(s == s[0]))
    return CliqueRegularity(
        t_regular=t_regular,
        t=int(t[0]) if t_regular else None,
        s_uniform=s_uniform,
        s=int(s[0]) if s_uniform else None,
    )
