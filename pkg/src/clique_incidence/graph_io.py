"""
Graph text formats: graph6 and the ``n <count>`` edge-list format.
"""

import logging
from pathlib import Path
from typing import Any, Dict, List, Tuple

import numpy as np

from .errors import GraphParseError
from .graph import Graph

GRAPH6_HEADER = ">>graph6<<"
FORMATS = ("graph6", "edgelist")


class GraphParser:
    """Reads and writes graphs in graph6 and edge-list form."""

    def __init__(self):
        """Initialize the graph parser."""
        self.logger = logging.getLogger(__name__)

    def parse(self, text: str, fmt: str) -> Graph:
        """
        Parse graph text.

        Args:
            text: Graph text
            fmt: 'graph6' or 'edgelist'

        Returns:
            Parsed graph
        """
        if fmt == "graph6":
            return self.decode_graph6(text)
        elif fmt in ("edgelist", "edge-list"):
            return self.parse_edge_list(text)
        raise GraphParseError(f"Unknown graph format: {fmt}")

    def load(self, file_path: Path, fmt: str) -> Graph:
        """Load a graph from a file."""
        file_path = Path(file_path)
        try:
            text = file_path.read_text()
        except OSError as e:
            raise GraphParseError(f"Cannot read {file_path}: {e}") from e
        graph = self.parse(text, fmt)
        self.logger.info(f"Loaded {graph} from {file_path}")
        return graph

    def decode_graph6(self, text: str) -> Graph:
        data = text.strip()
        if data.startswith(GRAPH6_HEADER):
            data = data[len(GRAPH6_HEADER):]
        if not data:
            raise GraphParseError("Empty graph6 string", position=0)
        raw = data.encode("ascii", errors="replace")
        for pos, byte in enumerate(raw):
            if not 63 <= byte <= 126:
                raise GraphParseError(f"Invalid graph6 character {chr(byte)!r}", position=pos)
        values = [b - 63 for b in raw]

        # N(n)
        if values[0] != 63:
            n, pos = values[0], 1
        elif len(values) >= 4 and values[1] != 63:
            n, pos = _sextets_to_int(values[1:4]), 4
        elif len(values) >= 8:
            n, pos = _sextets_to_int(values[2:8]), 8
        else:
            raise GraphParseError("Truncated graph6 size field", position=len(values))

        bit_count = n * (n - 1) // 2
        needed = (bit_count + 5) // 6
        body = values[pos:]
        if len(body) != needed:
            raise GraphParseError(
                f"graph6 body has {len(body)} bytes, expected {needed} for n={n}",
                position=pos + min(len(body), needed),
            )

        bits: List[int] = []
        for value in body:
            bits.extend((value >> shift) & 1 for shift in range(5, -1, -1))
        if any(bits[bit_count:]):
            raise GraphParseError("Non-zero graph6 padding bits", position=len(values) - 1)

        edges = []
        k = 0
        for j in range(1, n):
            for i in range(j):
                if bits[k]:
                    edges.append((i, j))
                k += 1
        return Graph(n, tuple(edges))

    def encode_graph6(self, graph: Graph) -> str:
        n = graph.n
        if n <= 62:
            head = [n]
        elif n <= 258047:
            head = [63] + _int_to_sextets(n, 3)
        else:
            head = [63, 63] + _int_to_sextets(n, 6)
        bits = [
            1 if graph.has_edge(i, j) else 0
            for j in range(1, n)
            for i in range(j)
        ]
        bits.extend([0] * (-len(bits) % 6))
        body = [
            int("".join(str(b) for b in bits[k:k + 6]), 2)
            for k in range(0, len(bits), 6)
        ]
        return "".join(chr(v + 63) for v in head + body)

    def parse_edge_list(self, text: str) -> Graph:
        n = None
        edges: List[Tuple[int, int]] = []
        seen = set()
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if n is None:
                if len(parts) != 2 or parts[0] != "n":
                    raise GraphParseError(f"Expected header 'n <count>', got {raw!r}", line=line_no)
                n = _parse_int(parts[1], line_no)
                if n < 0:
                    raise GraphParseError(f"Negative vertex count {n}", line=line_no)
                continue
            if len(parts) != 2:
                raise GraphParseError(f"Expected 'u v', got {raw!r}", line=line_no)
            u, v = _parse_int(parts[0], line_no), _parse_int(parts[1], line_no)
            for x in (u, v):
                if not 0 <= x < n:
                    raise GraphParseError(f"Vertex {x} out of range for n={n}", line=line_no)
            if u == v:
                raise GraphParseError(f"Self-loop at vertex {u}", line=line_no)
            e = (min(u, v), max(u, v))
            if e in seen:
                raise GraphParseError(f"Duplicate edge {e}", line=line_no)
            seen.add(e)
            edges.append(e)
        if n is None:
            raise GraphParseError("Missing header 'n <count>'", line=1)
        return Graph(n, tuple(edges))

    def to_edge_list(self, graph: Graph) -> str:
        lines = [f"n {graph.n}"] + [f"{u} {v}" for u, v in graph.edges]
        return "\n".join(lines) + "\n"

    def get_graph_info(self, graph: Graph) -> Dict[str, Any]:
        """
        Summary of a graph for reports.

        Args:
            graph: Graph to describe

        Returns:
            Dictionary containing graph information
        """
        degrees = graph.degrees
        return {
            "graph6": self.encode_graph6(graph),
            "n": graph.n,
            "m": graph.m,
            "degrees": [int(d) for d in degrees],
            "max_degree": int(degrees.max()) if graph.n else 0,
            "min_degree": int(degrees.min()) if graph.n else 0,
            "regular": bool(graph.n == 0 or np.all(degrees == degrees[0])),
        }


def _sextets_to_int(values: List[int]) -> int:
    result = 0
    for v in values:
        result = (result << 6) | v
    return result


def _int_to_sextets(value: int, count: int) -> List[int]:
    return [(value >> (6 * (count - 1 - i))) & 63 for i in range(count)]


def _parse_int(token: str, line_no: int) -> int:
    try:
        return int(token)
    except ValueError as e:
        raise GraphParseError(f"Not an integer: {token!r}", line=line_no) from e


_default_parser = GraphParser()


def parse_graph(text: str, fmt: str = "graph6") -> Graph:
    return _default_parser.parse(text, fmt)


def to_graph6(graph: Graph) -> str:
    return _default_parser.encode_graph6(graph)


def to_edge_list(graph: Graph) -> str:
    return _default_parser.to_edge_list(graph)
