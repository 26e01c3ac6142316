"""
Immutable simple graphs, the named families and operations used throughout
the package, and the exact independence number.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx
import numpy as np

from .errors import GraphError, SizeGuardError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

INDEPENDENCE_GUARD = 40


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph on vertices 0..n-1.

    Edges are normalized to ``(u, v)`` with ``u < v`` and kept sorted, so two
    graphs are equal exactly when they have the same labeled edge set.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"Vertex count must be non-negative, got {self.n}")
        normalized = set()
        for edge in self.edges:
            u, v = (int(x) for x in edge)
            if u == v:
                raise GraphError(f"Self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"Edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in normalized:
                raise GraphError(f"Duplicate edge {e}")
            normalized.add(e)
        object.__setattr__(self, "edges", tuple(sorted(normalized)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense symmetric 0/1 adjacency matrix (read-only)."""
        a = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in self.edges:
            a[u, v] = 1
            a[v, u] = 1
        a.setflags(write=False)
        return a

    @cached_property
    def neighbors(self) -> Tuple[FrozenSet[int], ...]:
        adj: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    @cached_property
    def degrees(self) -> np.ndarray:
        d = self.adjacency.sum(axis=1).astype(np.int64)
        d.setflags(write=False)
        return d

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edge_set

    def with_edges(self, extra: Iterable[Edge]) -> "Graph":
        return Graph(self.n, self.edges + tuple(extra))

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    @classmethod
    def from_adjacency(cls, matrix: np.ndarray) -> "Graph":
        """Build a graph from the off-diagonal nonzero pattern of a square matrix."""
        a = np.asarray(matrix)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError(f"Adjacency must be square, got shape {a.shape}")
        n = a.shape[0]
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if a[i, j] != 0 or a[j, i] != 0]
        return cls(n, tuple(edges))

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> "Graph":
        nodes = sorted(g.nodes())
        index = {v: i for i, v in enumerate(nodes)}
        return cls(len(nodes), tuple((index[u], index[v]) for u, v in g.edges() if u != v))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# Named families

def complete(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"K_n needs n >= 1, got {n}")
    return Graph(n, tuple(combinations(range(n), 2)))


def empty(n: int) -> Graph:
    if n < 0:
        raise GraphError(f"Empty graph needs n >= 0, got {n}")
    return Graph(n, ())


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"C_n needs n >= 3, got {n}")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphError(f"P_n needs n >= 1, got {n}")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star(t: int) -> Graph:
    """K_{1,t} with center 0."""
    if t < 0:
        raise GraphError(f"Star needs t >= 0, got {t}")
    return Graph(t + 1, tuple((0, i) for i in range(1, t + 1)))


def complete_multipartite(*parts: int) -> Graph:
    """Complete multipartite graph with consecutive blocks of the given sizes."""
    if not parts or any(p < 1 for p in parts):
        raise GraphError(f"Part sizes must be positive, got {parts}")
    labels: List[int] = []
    for index, size in enumerate(parts):
        labels.extend([index] * size)
    n = len(labels)
    return Graph(n, tuple((u, v) for u, v in combinations(range(n), 2) if labels[u] != labels[v]))


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: List[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return Graph(offset, tuple(edges))


def join(g: Graph, h: Graph) -> Graph:
    """G ∨ H: disjoint union plus every edge between the two blocks."""
    base = disjoint_union(g, h)
    cross = [(u, g.n + v) for u in range(g.n) for v in range(h.n)]
    return base.with_edges(cross)


def cartesian_product(g: Graph, h: Graph) -> Graph:
    """G □ H with vertex (x, y) at index x·|V(H)| + y."""
    nh = h.n
    edges: List[Edge] = []
    for x in range(g.n):
        for y1, y2 in h.edges:
            edges.append((x * nh + y1, x * nh + y2))
    for x1, x2 in g.edges:
        for y in range(nh):
            edges.append((x1 * nh + y, x2 * nh + y))
    return Graph(g.n * nh, tuple(edges))


def complement(g: Graph) -> Graph:
    return Graph(g.n, tuple(e for e in combinations(range(g.n), 2) if e not in g.edge_set))


def line_graph(g: Graph) -> Graph:
    """L_G: vertex i is the i-th edge of ``g.edges``; adjacent when edges share an endpoint."""
    edges = g.edges
    adjacent = [
        (i, j)
        for i, j in combinations(range(len(edges)), 2)
        if set(edges[i]) & set(edges[j])
    ]
    return Graph(len(edges), tuple(adjacent))


def remove_edges(g: Graph, h: Graph) -> Graph:
    """G \\ H for H on the same vertex set; every edge of H must be in G."""
    if h.n != g.n:
        raise GraphError(f"Edge removal needs equal vertex sets, got {g.n} and {h.n}")
    missing = [e for e in h.edges if e not in g.edge_set]
    if missing:
        raise GraphError(f"Edges {missing} are not in the graph")
    return Graph(g.n, tuple(e for e in g.edges if e not in h.edge_set))


def complete_minus(h: Graph) -> Graph:
    """K_n \\ H."""
    return remove_edges(complete(h.n), h) if h.n else empty(0)


def remove_perfect_matching(g: Graph, side_a: Sequence[int], side_b: Sequence[int]) -> Graph:
    """Remove the edges side_a[i]–side_b[i]; the two sides must have equal size."""
    if len(side_a) != len(side_b):
        raise GraphError(f"Perfect matching needs sets of equal size, got {len(side_a)} and {len(side_b)}")
    if set(side_a) & set(side_b):
        raise GraphError("Matching sides must be disjoint")
    matching = Graph(g.n, tuple(zip(side_a, side_b)))
    return remove_edges(g, matching)


def random_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded G(n, p)."""
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Vertex v becomes perm[v]."""
    if sorted(perm) != list(range(g.n)):
        raise GraphError(f"Not a permutation of 0..{g.n - 1}: {list(perm)}")
    return Graph(g.n, tuple((perm[u], perm[v]) for u, v in g.edges))


def build_named(family: str, *params) -> Graph:
    """
    Build a graph from a family name and its parameters.

    Args:
        family: One of complete, empty, cycle, path, star, bipartite,
            multipartite, prism, gnp
        *params: Family-specific integer parameters (gnp takes n, p, seed)

    Returns:
        The graph with the standard vertex labeling
    """
    try:
        if family == "complete":
            return complete(int(params[0]))
        elif family == "empty":
            return empty(int(params[0]))
        elif family == "cycle":
            return cycle(int(params[0]))
        elif family == "path":
            return path(int(params[0]))
        elif family == "star":
            return star(int(params[0]))
        elif family == "bipartite":
            return complete_bipartite(int(params[0]), int(params[1]))
        elif family == "multipartite":
            return complete_multipartite(*(int(p) for p in params))
        elif family == "prism":
            return cartesian_product(complete(int(params[0])), complete(2))
        elif family == "gnp":
            return random_graph(int(params[0]), float(params[1]), int(params[2]))
    except (IndexError, TypeError) as e:
        raise GraphError(f"Missing or bad parameters for family '{family}': {params}") from e
    raise GraphError(f"Unknown graph family: {family}")


def parse_family_spec(spec: str) -> Graph:
    """Build a graph from ``name:p1,p2,...``."""
    name, _, raw = spec.partition(":")
    params = [p for p in raw.split(",") if p.strip()] if raw else []
    try:
        return build_named(name.strip(), *params)
    except ValueError as e:
        if isinstance(e, GraphError):
            raise
        raise GraphError(f"Bad family spec '{spec}': {e}") from e


def independence_number(g: Graph) -> int:
    """Exact α(G) as the clique number of the complement, by branch and bound."""
    if g.n > INDEPENDENCE_GUARD:
        raise SizeGuardError("independence_number", g.n, INDEPENDENCE_GUARD)
    full = (1 << g.n) - 1
    # complement neighbourhoods as bitmasks
    masks = []
    for v in range(g.n):
        nb = 0
        for u in g.neighbors[v]:
            nb |= 1 << u
        masks.append(full & ~nb & ~(1 << v))

    best = 0

    def expand(size: int, candidates: int) -> None:
        nonlocal best
        if candidates == 0:
            best = max(best, size)
            return
        while candidates:
            if size + candidates.bit_count() <= best:
                return
            v = candidates.bit_length() - 1
            expand(size + 1, candidates & masks[v])
            candidates &= ~(1 << v)

    expand(0, full)
    return best
