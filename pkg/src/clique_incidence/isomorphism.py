"""
Isomorphism utilities for small graphs: canonical forms, automorphism
counts, exhaustive enumeration up to isomorphism, and subgraph embedding.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .errors import SizeGuardError
from .graph import Graph, empty

logger = logging.getLogger(__name__)

ENUMERATION_GUARD_N = 8
ENUMERATION_GUARD_M = 8
EMBEDDING_GUARD = 10


@dataclass(frozen=True)
class CanonicalLabeling:
    """Result of the canonical-form search."""

    key: Tuple
    order: Tuple[int, ...]
    automorphisms: int

    def graph(self, g: Graph) -> Graph:
        """The canonical representative: position i holds vertex order[i]."""
        position = {v: i for i, v in enumerate(self.order)}
        return Graph(g.n, tuple((position[u], position[v]) for u, v in g.edges))


def _refined_colors(g: Graph) -> List[int]:
    """Colour refinement started from degrees; colours are isomorphism invariant."""
    colors = [int(d) for d in g.degrees]
    while True:
        signatures = [
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors[v])))
            for v in range(g.n)
        ]
        palette = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        refined = [palette[sig] for sig in signatures]
        if len(set(refined)) == len(set(colors)):
            return refined
        colors = refined


def canonical_labeling(g: Graph) -> CanonicalLabeling:
    """
    Minimum adjacency bit-string over all colour-respecting vertex orders.

    Positions are filled in colour order; the bits of column j (pairs (i, j),
    i < j) are fixed when position j is filled, so branches whose prefix
    already exceeds the best string are cut.
    """
    n = g.n
    adj = g.adjacency
    colors = _refined_colors(g)
    slots = sorted(colors)
    by_color: Dict[int, List[int]] = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)

    best: Optional[Tuple[int, ...]] = None
    best_order: Tuple[int, ...] = ()
    count = 0
    order: List[int] = []
    used = [False] * n

    def extend(bits: Tuple[int, ...]) -> None:
        nonlocal best, best_order, count
        j = len(order)
        if j == n:
            if best is None or bits < best:
                best, best_order, count = bits, tuple(order), 1
            elif bits == best:
                count += 1
            return
        for v in by_color[slots[j]]:
            if used[v]:
                continue
            new_bits = bits + tuple(int(adj[order[i], v]) for i in range(j))
            if best is not None and new_bits > best[:len(new_bits)]:
                continue
            used[v] = True
            order.append(v)
            extend(new_bits)
            order.pop()
            used[v] = False

    extend(())
    if best is None:
        best = ()
        count = 1
    return CanonicalLabeling(key=(n, tuple(slots), best), order=best_order, automorphisms=count)


def canonical_form(g: Graph) -> Tuple:
    return canonical_labeling(g).key


def canonical_graph(g: Graph) -> Graph:
    return canonical_labeling(g).graph(g)


def automorphism_count(g: Graph) -> int:
    return canonical_labeling(g).automorphisms


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_form(g) == canonical_form(h)


def enumerate_graphs(n: int, m: int) -> List[Graph]:
    """
    All graphs on n vertices with m edges, one canonical representative per
    isomorphism class, sorted by canonical form.

    Classes with m edges are grown from classes with m-1 edges by adding one
    non-edge; every m-edge graph has an (m-1)-edge subgraph, so none is missed.
    """
    if n > ENUMERATION_GUARD_N:
        raise SizeGuardError("enumerate_graphs (n)", n, ENUMERATION_GUARD_N)
    if m > ENUMERATION_GUARD_M:
        raise SizeGuardError("enumerate_graphs (m)", m, ENUMERATION_GUARD_M)
    if m < 0 or m > n * (n - 1) // 2:
        return []
    level: Dict[Tuple, Graph] = {}
    start = canonical_labeling(empty(n))
    level[start.key] = start.graph(empty(n))
    for size in range(1, m + 1):
        grown: Dict[Tuple, Graph] = {}
        for rep in level.values():
            for e in combinations(range(n), 2):
                if e in rep.edge_set:
                    continue
                candidate = rep.with_edges([e])
                labeling = canonical_labeling(candidate)
                if labeling.key not in grown:
                    grown[labeling.key] = labeling.graph(candidate)
        level = grown
        logger.debug(f"enumerate_graphs n={n}: {len(level)} classes with {size} edges")
    return [level[key] for key in sorted(level)]


def is_subgraph_up_to_iso(h: Graph, g: Graph) -> Tuple[bool, Optional[Dict[int, int]]]:
    """
    Decide whether h embeds in g (injective on vertices, edges to edges).

    Returns:
        Tuple of (found, embedding) where embedding maps vertices of h to
        vertices of g, or None when no embedding exists
    """
    if g.n > EMBEDDING_GUARD:
        raise SizeGuardError("is_subgraph_up_to_iso", g.n, EMBEDDING_GUARD)
    if h.n > g.n or h.m > g.m:
        return False, None
    order = sorted(range(h.n), key=lambda v: (-int(h.degrees[v]), v))
    g_deg = g.degrees
    mapping: Dict[int, int] = {}
    taken = [False] * g.n

    def place(index: int) -> bool:
        if index == len(order):
            return True
        v = order[index]
        for w in range(g.n):
            if taken[w] or g_deg[w] < h.degrees[v]:
                continue
            if all(g.has_edge(mapping[u], w) for u in h.neighbors[v] if u in mapping):
                mapping[v] = w
                taken[w] = True
                if place(index + 1):
                    return True
                del mapping[v]
                taken[w] = False
        return False

    if place(0):
        return True, dict(mapping)
    return False, None
