"""Cleaning process semantics: configurations, sequences, orientations, traces.

The model: every vertex starts with a number of brushes; a vertex may be
cleaned only while it holds at least as many brushes as it has dirty
incident edges, and cleaning it sends exactly one brush along each dirty
edge (surplus brushes stay behind).  A vertex with no dirty incident
edges may always be cleaned, at zero cost.
"""

from __future__ import annotations

import graphlib
import heapq
from dataclasses import dataclass

from .errors import (
    InfeasibleStepError,
    InvalidInputError,
    InvalidOrientationError,
    InvalidSequenceError,
    ParseError,
)
from .graphs import Graph, _data_lines


@dataclass(frozen=True)
class BrushConfig:
    """Per-vertex brush counts."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise InvalidInputError("brush counts must be non-negative")

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, v: int) -> int:
        return self.counts[v]

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class CleaningSequence:
    """Order in which vertices are cleaned; a permutation or a prefix of one."""

    order: tuple[int, ...]

    def __post_init__(self):
        if len(set(self.order)) != len(self.order):
            raise InvalidSequenceError("cleaning sequence repeats a vertex")

    def __len__(self) -> int:
        return len(self.order)

    def __iter__(self):
        return iter(self.order)


@dataclass(frozen=True)
class Orientation:
    """A direction (tail, head) for every edge of a host graph."""

    vertex_count: int
    arcs: tuple[tuple[int, int], ...]

    def out_degrees(self) -> list[int]:
        out = [0] * self.vertex_count
        for tail, _ in self.arcs:
            out[tail] += 1
        return out

    def in_degrees(self) -> list[int]:
        out = [0] * self.vertex_count
        for _, head in self.arcs:
            out[head] += 1
        return out


@dataclass(frozen=True)
class CleaningStep:
    """One firing: which vertex cleaned, what it held, where brushes went."""

    vertex: int
    brushes_before: int
    cleaned_edges: tuple[tuple[int, int], ...]
    forwarded_to: tuple[int, ...]


@dataclass(frozen=True)
class CleaningTrace:
    steps: tuple[CleaningStep, ...]
    final_brushes: tuple[int, ...]

    @property
    def total_brushes(self) -> int:
        return sum(self.final_brushes)


def _check_sizes(g: Graph, w0: BrushConfig) -> None:
    if len(w0) != g.vertex_count:
        raise InvalidInputError(
            f"config covers {len(w0)} vertices, graph has {g.vertex_count}"
        )


def _check_complete(g: Graph, seq: CleaningSequence) -> None:
    if len(seq) != g.vertex_count or not all(
        0 <= v < g.vertex_count for v in seq.order
    ):
        raise InvalidSequenceError(
            f"sequence must visit each of the {g.vertex_count} vertices exactly once"
        )


def orientation_from_sequence(g: Graph, seq: CleaningSequence) -> Orientation:
    """Direct every edge from its earlier-cleaned endpoint to the later one."""
    _check_complete(g, seq)
    pos = {v: k for k, v in enumerate(seq.order)}
    arcs = tuple(
        (u, v) if pos[u] < pos[v] else (v, u) for u, v in g.edges()
    )
    return Orientation(g.vertex_count, arcs)


def verify_acyclic(o: Orientation) -> bool:
    """True when the oriented edges admit a topological order."""
    preds: dict[int, list[int]] = {v: [] for v in range(o.vertex_count)}
    for tail, head in o.arcs:
        preds[head].append(tail)
    try:
        list(graphlib.TopologicalSorter(preds).static_order())
    except graphlib.CycleError:
        return False
    return True


def brush_cost(g: Graph, o: Orientation) -> int:
    """Sum over vertices of max(0, outdegree - indegree)."""
    undirected = {(min(t, h), max(t, h)) for t, h in o.arcs}
    if len(undirected) != len(o.arcs) or undirected != set(g.edges()):
        raise InvalidOrientationError("orientation does not match the graph's edge set")
    outs, ins = o.out_degrees(), o.in_degrees()
    return sum(max(0, d_out - d_in) for d_out, d_in in zip(outs, ins))


def minimal_config_for_sequence(g: Graph, seq: CleaningSequence) -> BrushConfig:
    """Fewest brushes per vertex that let seq clean g.

    Equals max(0, outdegree - indegree) under the orientation induced
    by the sequence.
    """
    o = orientation_from_sequence(g, seq)
    outs, ins = o.out_degrees(), o.in_degrees()
    return BrushConfig(
        tuple(max(0, d_out - d_in) for d_out, d_in in zip(outs, ins))
    )


def simulate(g: Graph, w0: BrushConfig, seq: CleaningSequence) -> CleaningTrace:
    """Run the cleaning process along a complete sequence.

    Raises InfeasibleStepError at the first vertex fired with fewer
    brushes than dirty incident edges.
    """
    _check_sizes(g, w0)
    _check_complete(g, seq)
    brushes = list(w0.counts)
    cleaned = [False] * g.vertex_count
    steps: list[CleaningStep] = []
    for v in seq:
        dirty = sorted(u for u in g.adjacency[v] if not cleaned[u])
        if brushes[v] < len(dirty):
            raise InfeasibleStepError(v, brushes[v], len(dirty))
        for u in dirty:
            brushes[u] += 1
        before = brushes[v]
        brushes[v] -= len(dirty)
        cleaned[v] = True
        steps.append(
            CleaningStep(
                vertex=v,
                brushes_before=before,
                cleaned_edges=tuple((min(v, u), max(v, u)) for u in dirty),
                forwarded_to=tuple(dirty),
            )
        )
    return CleaningTrace(tuple(steps), tuple(brushes))


def can_clean(
    g: Graph, w0: BrushConfig
) -> tuple[bool, CleaningSequence | frozenset[int]]:
    """Decide whether some order cleans g from w0.

    Greedy saturation: once a vertex holds at least its dirty degree it
    stays satisfiable (brushes only arrive, dirty edges only disappear),
    so repeatedly firing any satisfiable vertex finds an order exactly
    when one exists.  Returns (True, sequence) or (False, stuck vertices).
    """
    _check_sizes(g, w0)
    n = g.vertex_count
    brushes = list(w0.counts)
    dirty_deg = [g.degree(v) for v in range(n)]
    cleaned = [False] * n
    order: list[int] = []
    ready = [v for v in range(n) if brushes[v] >= dirty_deg[v]]
    heapq.heapify(ready)  # lowest id first, deterministic
    queued = set(ready)
    while ready:
        v = heapq.heappop(ready)
        cleaned[v] = True
        order.append(v)
        for u in g.adjacency[v]:
            if not cleaned[u]:
                brushes[u] += 1
                dirty_deg[u] -= 1
                if brushes[u] >= dirty_deg[u] and u not in queued:
                    heapq.heappush(ready, u)
                    queued.add(u)
    if len(order) == n:
        return True, CleaningSequence(tuple(order))
    return False, frozenset(v for v in range(n) if not cleaned[v])


def parse_brush_config(text: str) -> BrushConfig:
    """Parse the config format: "b N" header, then "v count" lines."""
    lines = _data_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing 'b <vertex_count>' header") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != "b":
        raise ParseError(no, f"expected 'b <vertex_count>', got {header!r}")
    try:
        vertex_count = int(parts[1])
    except ValueError:
        raise ParseError(no, f"vertex count {parts[1]!r} is not an integer") from None
    if vertex_count < 0:
        raise ParseError(no, "vertex count must be non-negative")

    counts = [0] * vertex_count
    seen: set[int] = set()
    for no, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(no, f"expected 'vertex count', got {line!r}")
        try:
            v, c = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(no, f"non-integer field in {line!r}") from None
        if not 0 <= v < vertex_count:
            raise ParseError(no, f"vertex {v} outside 0..{vertex_count - 1}")
        if v in seen:
            raise ParseError(no, f"vertex {v} listed twice")
        if c < 0:
            raise ParseError(no, f"negative brush count at vertex {v}")
        seen.add(v)
        counts[v] = c
    return BrushConfig(tuple(counts))


def serialize_brush_config(w0: BrushConfig) -> str:
    out = [f"b {len(w0)}"]
    out.extend(f"{v} {c}" for v, c in enumerate(w0.counts) if c)
    return "\n".join(out) + "\n"


def parse_sequence(text: str) -> CleaningSequence:
    """Parse the sequence format: "s N" header, then whitespace-separated ids."""
    lines = _data_lines(text)
    try:
        no, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing 's <vertex_count>' header") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != "s":
        raise ParseError(no, f"expected 's <vertex_count>', got {header!r}")
    try:
        vertex_count = int(parts[1])
    except ValueError:
        raise ParseError(no, f"vertex count {parts[1]!r} is not an integer") from None
    if vertex_count < 0:
        raise ParseError(no, "vertex count must be non-negative")

    ids: list[int] = []
    for no, line in lines:
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(no, f"non-integer id {tok!r}") from None
            if not 0 <= v < vertex_count:
                raise ParseError(no, f"vertex {v} outside 0..{vertex_count - 1}")
            if v in ids:
                raise ParseError(no, f"vertex {v} repeated")
            ids.append(v)
    return CleaningSequence(tuple(ids))


def serialize_sequence(seq: CleaningSequence, vertex_count: int | None = None) -> str:
    n = len(seq) if vertex_count is None else vertex_count
    body = " ".join(str(v) for v in seq.order)
    return f"s {n}\n{body}\n" if body else f"s {n}\n"
