"""Simple undirected graphs, product construction and edge-list text I/O.

Vertices are the integers 0..vertex_count-1 throughout.  Graphs are
immutable once built; every constructor validates that the result is
simple (no loops, no parallel edges).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import InvalidParameterError, ParseError


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph as a tuple of neighbour sets."""

    vertex_count: int
    adjacency: tuple[frozenset[int], ...]

    @property
    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (min, max) pairs in sorted order."""
        out = [
            (u, v)
            for u in range(self.vertex_count)
            for v in self.adjacency[u]
            if u < v
        ]
        out.sort()
        return out

    def vertices(self) -> range:
        return range(self.vertex_count)


def graph_from_edges(vertex_count: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a validated graph from an edge iterable.

    Rejects self-loops, duplicate edges (in either order) and endpoints
    outside 0..vertex_count-1.
    """
    if vertex_count < 0:
        raise InvalidParameterError(f"vertex count must be non-negative, got {vertex_count}")
    nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InvalidParameterError(
                f"edge ({u}, {v}) leaves the vertex range 0..{vertex_count - 1}"
            )
        if u == v:
            raise InvalidParameterError(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise InvalidParameterError(f"duplicate edge ({u}, {v})")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(vertex_count, tuple(frozenset(s) for s in nbrs))


def make_path(k: int) -> Graph:
    """Path on k >= 1 vertices, edges i-(i+1)."""
    if k < 1:
        raise InvalidParameterError(f"path needs at least 1 vertex, got {k}")
    return graph_from_edges(k, ((i, i + 1) for i in range(k - 1)))


def make_cycle(k: int) -> Graph:
    """Cycle on k >= 3 vertices."""
    if k < 3:
        raise InvalidParameterError(f"cycle needs at least 3 vertices, got {k}")
    return graph_from_edges(k, [(i, (i + 1) % k) for i in range(k)])


def make_clique(k: int) -> Graph:
    """Complete graph on k >= 1 vertices."""
    if k < 1:
        raise InvalidParameterError(f"clique needs at least 1 vertex, got {k}")
    return graph_from_edges(k, ((u, v) for u in range(k) for v in range(u + 1, k)))


def is_connected(g: Graph) -> bool:
    """Depth-first reachability from vertex 0; the empty graph counts."""
    if g.vertex_count == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for u in g.adjacency[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == g.vertex_count


@dataclass(frozen=True)
class ProductLabeling:
    """Coordinate map for a product graph: (i, j) <-> flat id i*n + j.

    m is the order of the left factor, n of the right factor.
    """

    m: int
    n: int

    def id(self, i: int, j: int) -> int:
        if not (0 <= i < self.m and 0 <= j < self.n):
            raise InvalidParameterError(f"coordinate ({i}, {j}) outside {self.m}x{self.n}")
        return i * self.n + j

    def pair(self, v: int) -> tuple[int, int]:
        if not 0 <= v < self.m * self.n:
            raise InvalidParameterError(f"vertex {v} outside 0..{self.m * self.n - 1}")
        return divmod(v, self.n)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        for i in range(self.m):
            for j in range(self.n):
                yield (i, j)


def cartesian_product(g: Graph, h: Graph) -> tuple[Graph, ProductLabeling]:
    """Cartesian product of two graphs.

    Vertex (i, j) is adjacent to (i', j) when i~i' in g and to (i, j')
    when j~j' in h.  Returns the product plus the coordinate labeling.
    """
    lab = ProductLabeling(g.vertex_count, h.vertex_count)
    edges: list[tuple[int, int]] = []
    for i in range(g.vertex_count):
        for j, j2 in h.edges():
            edges.append((lab.id(i, j), lab.id(i, j2)))
    for i, i2 in g.edges():
        for j in range(h.vertex_count):
            edges.append((lab.id(i, j), lab.id(i2, j)))
    return graph_from_edges(g.vertex_count * h.vertex_count, edges), lab


def _data_lines(text: str) -> Iterator[tuple[int, str]]:
    # strips comments ('#' to end of line) and blank lines, keeps 1-based numbers
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: a "p N" header, then one "u v" line per edge."""
    lines = _data_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing 'p <vertex_count>' header") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != "p":
        raise ParseError(no, f"expected 'p <vertex_count>', got {header!r}")
    try:
        vertex_count = int(parts[1])
    except ValueError:
        raise ParseError(no, f"vertex count {parts[1]!r} is not an integer") from None
    if vertex_count < 0:
        raise ParseError(no, f"vertex count must be non-negative, got {vertex_count}")

    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for no, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(no, f"non-integer endpoint in {line!r}") from None
        if u == v:
            raise ParseError(no, f"self-loop at vertex {u}")
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise ParseError(no, f"edge ({u}, {v}) leaves the vertex range")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(no, f"duplicate edge ({u}, {v})")
        seen.add(key)
        edges.append(key)
    return graph_from_edges(vertex_count, edges)


def serialize_edge_list(g: Graph) -> str:
    """Canonical text form: header plus (min, max)-sorted edge lines."""
    out = [f"p {g.vertex_count}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"
