"""Exact brush-number solvers.

The number of brushes needed to clean a graph equals the minimum over
cleaning sequences of the sequence's minimal-config total, so both
solvers search the space of vertex orders.  The subset DP uses

    f(S) = min over v in S of f(S - v) + max(0, deg(v) - 2*|N(v) & (S - v)|)

with f(empty) = 0; f(V) is the answer.  The branch-and-bound explores
prefixes directly and is useful past the DP's memory reach.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .cleaning import CleaningSequence
from .errors import (
    InternalInconsistencyError,
    InvalidParameterError,
    ResourceLimitError,
    TooLargeError,
)
from .graphs import (
    Graph,
    cartesian_product,
    graph_from_edges,
    is_connected,
    make_clique,
    make_path,
)

DEFAULT_DP_CAP = 22

_INF = 1 << 28
_pc16_table: np.ndarray | None = None


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: CleaningSequence
    method: str
    states: int
    seconds: float
    complete: bool = True


def _pc16() -> np.ndarray:
    # 16-bit popcount lookup, built once by doubling
    global _pc16_table
    if _pc16_table is None:
        t = np.zeros(1, dtype=np.int32)
        while t.size < (1 << 16):
            t = np.concatenate([t, t + 1])
        _pc16_table = t
    return _pc16_table


def _adjacency_masks(g: Graph) -> tuple[list[int], list[int]]:
    masks = [sum(1 << u for u in g.adjacency[v]) for v in range(g.vertex_count)]
    degs = [g.degree(v) for v in range(g.vertex_count)]
    return masks, degs


def parity_lower_bound(g: Graph) -> int:
    """ceil(#odd-degree vertices / 2); every orientation leaves an odd
    vertex with out- and in-degree apart by at least one."""
    odd = sum(1 for v in range(g.vertex_count) if g.degree(v) % 2)
    return (odd + 1) // 2


def brush_number_dp(
    g: Graph,
    *,
    max_vertices: int = DEFAULT_DP_CAP,
    memory_limit_mb: int = 1024,
) -> SolveResult:
    """Exact brush number by subset DP with a reconstructed witness.

    Memory grows as 2^|V|; instances above max_vertices are refused.
    Witness reconstruction breaks ties toward the lowest vertex id.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise TooLargeError(f"{n} vertices exceed the DP cap of {max_vertices}")
    est_mb = ((1 << n) * 28) // (1024 * 1024)
    if est_mb > memory_limit_mb:
        raise ResourceLimitError(
            f"DP on {n} vertices needs about {est_mb} MB, limit is {memory_limit_mb} MB"
        )
    start = time.perf_counter()
    if n == 0:
        return SolveResult(0, CleaningSequence(()), "dp", 1, time.perf_counter() - start)

    masks, degs = _adjacency_masks(g)
    size = 1 << n
    pc = _pc16()
    ids = np.arange(size, dtype=np.int32)
    popcnt = pc[ids & 0xFFFF] + pc[ids >> 16]
    del ids
    order = np.argsort(popcnt, kind="stable").astype(np.int32)
    bounds = np.searchsorted(popcnt[order], np.arange(n + 2))
    del popcnt

    f = np.full(size, _INF, dtype=np.int32)
    f[0] = 0
    for k in range(1, n + 1):
        layer = order[bounds[k] : bounds[k + 1]]
        for v in range(n):
            bit = 1 << v
            mine = layer[(layer & bit) != 0]
            if mine.size == 0:
                continue
            prev = mine ^ bit
            inter = prev & masks[v]
            cost = degs[v] - 2 * (pc[inter & 0xFFFF] + pc[inter >> 16])
            np.maximum(cost, 0, out=cost)
            f[mine] = np.minimum(f[mine], f[prev] + cost)

    value = int(f[size - 1])
    seq = [0] * n
    s = size - 1
    for pos in range(n - 1, -1, -1):
        here = int(f[s])
        for v in range(n):
            if s >> v & 1:
                prev_s = s ^ (1 << v)
                step = degs[v] - 2 * (masks[v] & prev_s).bit_count()
                if here == int(f[prev_s]) + max(0, step):
                    seq[pos] = v
                    s = prev_s
                    break
        else:
            raise InternalInconsistencyError("DP table admits no predecessor")
    return SolveResult(
        value, CleaningSequence(tuple(seq)), "dp", size, time.perf_counter() - start
    )


def _greedy_order(n: int, masks: list[int], degs: list[int]) -> tuple[tuple[int, ...], int]:
    mask, cost = 0, 0
    seq: list[int] = []
    for _ in range(n):
        pick = None
        for v in range(n):
            if not mask >> v & 1:
                marg = degs[v] - 2 * (masks[v] & mask).bit_count()
                if marg < 0:
                    marg = 0
                if pick is None or marg < pick[0]:
                    pick = (marg, v)
        cost += pick[0]
        seq.append(pick[1])
        mask |= 1 << pick[1]
    return tuple(seq), cost


def brush_number_bnb(
    g: Graph,
    upper_hint: int | None = None,
    *,
    timeout: float | None = 60.0,
    memo_limit: int = 1_500_000,
) -> SolveResult:
    """Branch-and-bound over cleaning prefixes.

    Branches on the next-cleaned vertex, cheapest marginal cost first.
    A prefix is cut when its cost plus a parity bound on the remainder
    cannot beat the incumbent; a dominance table prunes re-visited
    vertex sets.  upper_hint, when given, must be a valid upper bound
    (a hint below the true value can make that value unreachable).  On
    timeout the best sequence found so far is returned with
    complete=False.
    """
    n = g.vertex_count
    start = time.perf_counter()
    deadline = None if timeout is None else time.monotonic() + timeout
    masks, degs = _adjacency_masks(g)
    best_seq, best_cost = _greedy_order(n, masks, degs)
    full = (1 << n) - 1
    odd_total = sum(d % 2 for d in degs)
    memo: dict[int, int] = {}
    path: list[int] = []
    states = 0
    timed_out = False

    def dfs(mask: int, cost: int, odd_rem: int, boundary: int) -> None:
        nonlocal best_cost, best_seq, states, timed_out
        states += 1
        if deadline is not None and states % 256 == 0 and time.monotonic() > deadline:
            timed_out = True
            return
        if mask == full:
            if cost < best_cost:
                best_cost, best_seq = cost, tuple(path)
            return
        seen = memo.get(mask)
        if seen is not None and seen <= cost:
            return
        if seen is not None or len(memo) < memo_limit:
            memo[mask] = cost
        lb = (odd_rem - boundary + 1) // 2
        projection = cost + (lb if lb > 0 else 0)
        cap = best_cost if upper_hint is None else min(best_cost, upper_hint + 1)
        if projection >= cap:
            return
        children = []
        for v in range(n):
            if not mask >> v & 1:
                inside = (masks[v] & mask).bit_count()
                marg = degs[v] - 2 * inside
                children.append((marg if marg > 0 else 0, v, inside))
        children.sort()
        for marg, v, inside in children:
            path.append(v)
            dfs(
                mask | (1 << v),
                cost + marg,
                odd_rem - (degs[v] & 1),
                boundary + degs[v] - 2 * inside,
            )
            path.pop()
            if timed_out:
                return

    dfs(0, 0, odd_total, 0)
    return SolveResult(
        best_cost,
        CleaningSequence(best_seq),
        "bnb",
        states,
        time.perf_counter() - start,
        complete=not timed_out,
    )


def brute_force_permutations(g: Graph, *, max_vertices: int = 9) -> SolveResult:
    """Exhaustive minimum over every cleaning order; reference oracle."""
    n = g.vertex_count
    if n > max_vertices:
        raise TooLargeError(f"{n} vertices exceed the brute-force cap of {max_vertices}")
    start = time.perf_counter()
    masks, degs = _adjacency_masks(g)
    full = (1 << n) - 1
    best_cost = _INF
    best_seq: tuple[int, ...] = ()
    path: list[int] = []
    states = 0

    def extend(mask: int, cost: int) -> None:
        nonlocal best_cost, best_seq, states
        states += 1
        if mask == full:
            if cost < best_cost:
                best_cost, best_seq = cost, tuple(path)
            return
        for v in range(n):
            if not mask >> v & 1:
                marg = degs[v] - 2 * (masks[v] & mask).bit_count()
                path.append(v)
                extend(mask | (1 << v), cost + (marg if marg > 0 else 0))
                path.pop()

    extend(0, 0)
    return SolveResult(
        best_cost,
        CleaningSequence(best_seq),
        "brute",
        states,
        time.perf_counter() - start,
    )


@dataclass(frozen=True)
class BoxConjectureReport:
    """Outcome of sweeping every labeled graph on m vertices against one
    fixed right factor: products of paths should sit at the bottom and
    products of cliques at the top.

    The sandwich is only claimed for connected left factors (a left
    factor with an isolated vertex sheds a full copy of the right factor
    and can undercut the path product), so min/max attainers and the
    violation list range over the connected graphs; `graphs_checked`
    still counts the whole enumeration."""

    m: int
    h_vertex_count: int
    path_value: int
    clique_value: int
    min_value: int
    max_value: int
    min_edges: tuple[tuple[int, int], ...]
    max_edges: tuple[tuple[int, int], ...]
    graphs_checked: int
    connected_checked: int
    violations: tuple[tuple[tuple[tuple[int, int], ...], int], ...]

    @property
    def holds(self) -> bool:
        return not self.violations


def check_box_conjecture(
    h: Graph, m: int, *, max_vertices: int = DEFAULT_DP_CAP
) -> BoxConjectureReport:
    """Exact sweep of all 2^(m(m-1)/2) labeled left factors on m vertices.

    Flags every graph whose product value leaves the closed interval
    [b(P_m x H), b(K_m x H)].  No isomorphism reduction is applied.
    """
    if not 2 <= m <= 5:
        raise InvalidParameterError(f"left-factor order must be 2..5, got {m}")
    if m * h.vertex_count > max_vertices:
        raise TooLargeError(
            f"products on {m * h.vertex_count} vertices exceed the DP cap of {max_vertices}"
        )
    path_value = brush_number_dp(
        cartesian_product(make_path(m), h)[0], max_vertices=max_vertices
    ).value
    clique_value = brush_number_dp(
        cartesian_product(make_clique(m), h)[0], max_vertices=max_vertices
    ).value

    pairs = list(combinations(range(m), 2))
    min_value, max_value = _INF, -1
    min_edges: tuple[tuple[int, int], ...] = ()
    max_edges: tuple[tuple[int, int], ...] = ()
    violations: list[tuple[tuple[tuple[int, int], ...], int]] = []
    connected_checked = 0
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        left = graph_from_edges(m, edges)
        if not is_connected(left):
            continue
        connected_checked += 1
        product, _ = cartesian_product(left, h)
        value = brush_number_dp(product, max_vertices=max_vertices).value
        if value < min_value:
            min_value, min_edges = value, edges
        if value > max_value:
            max_value, max_edges = value, edges
        if not path_value <= value <= clique_value:
            violations.append((edges, value))
    return BoxConjectureReport(
        m=m,
        h_vertex_count=h.vertex_count,
        path_value=path_value,
        clique_value=clique_value,
        min_value=min_value,
        max_value=max_value,
        min_edges=min_edges,
        max_edges=max_edges,
        graphs_checked=1 << len(pairs),
        connected_checked=connected_checked,
        violations=tuple(violations),
    )
