"""Closed-form brush configurations for graph families, plus the two
structural reductions: merging adjacent torus rows and deleting a clique
layer from a clique-path product.

Conventions.  Torus C_m x C_n: row index i from the left cycle, column
index j from the right cycle, flat id i*n + j.  Clique-path product
K_m x P_n: clique index i, path index j, same flat id rule.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator

from .cleaning import (
    BrushConfig,
    CleaningSequence,
    can_clean,
    minimal_config_for_sequence,
    simulate,
)
from .errors import (
    InfeasibleStepError,
    InternalInconsistencyError,
    InvalidClassificationError,
    InvalidInputError,
    InvalidParameterError,
    PreconditionViolationError,
)
from .graphs import Graph, ProductLabeling, cartesian_product, make_clique, make_cycle, make_path
from .solver import brush_number_dp


# ---------------------------------------------------------------- families

def path_config(k: int) -> BrushConfig:
    """One brush at the left endpoint; total 1."""
    if k < 1:
        raise InvalidParameterError(f"path needs at least 1 vertex, got {k}")
    return BrushConfig((1,) + (0,) * (k - 1))


def path_sequence(k: int) -> CleaningSequence:
    return CleaningSequence(tuple(range(k)))


def cycle_config(k: int) -> BrushConfig:
    """Two brushes at vertex 0; total 2."""
    if k < 3:
        raise InvalidParameterError(f"cycle needs at least 3 vertices, got {k}")
    return BrushConfig((2,) + (0,) * (k - 1))


def cycle_sequence(k: int) -> CleaningSequence:
    return CleaningSequence(tuple(range(k)))


def clique_config(m: int) -> BrushConfig:
    """Vertex i holds max(0, m - 1 - 2i); total floor(m^2/4)."""
    if m < 1:
        raise InvalidParameterError(f"clique needs at least 1 vertex, got {m}")
    return BrushConfig(tuple(max(0, m - 1 - 2 * i) for i in range(m)))


def clique_sequence(m: int) -> CleaningSequence:
    return CleaningSequence(tuple(range(m)))


def torus_brush_number(m: int, n: int) -> int:
    """2(m + n - 2) for the torus C_m x C_n, m, n >= 3."""
    _check_torus_dims(m, n)
    return 2 * (m + n - 2)


def torus_config(m: int, n: int) -> BrushConfig:
    """Brush-heavy corner layout: 4 at (0,0), 2 along the rest of row 0
    and column 0 except their far ends, 0 elsewhere."""
    _check_torus_dims(m, n)
    counts = [0] * (m * n)
    counts[0] = 4
    for j in range(1, n - 1):
        counts[j] = 2
    for i in range(1, m - 1):
        counts[i * n] = 2
    return BrushConfig(tuple(counts))


def torus_sequence(m: int, n: int) -> CleaningSequence:
    """Row-major from the brush-heavy corner."""
    _check_torus_dims(m, n)
    return CleaningSequence(tuple(range(m * n)))


def km_pn_brush_number(m: int, n: int) -> int:
    """n * m^2/4 for even m, n * floor(m^2/4) + 1 for odd m."""
    _check_km_pn_dims(m, n)
    if m % 2 == 0:
        return n * m * m // 4
    return n * (m * m // 4) + 1


def km_pn_config(m: int, n: int) -> BrushConfig:
    """Column layout for even m: clique position i holds max(0, m - 2i)
    in the first column, max(0, m - 1 - 2i) in middle columns and
    max(0, m - 2 - 2i) in the last; total n * m^2/4."""
    _check_km_pn_dims(m, n)
    if m % 2:
        raise InvalidParameterError(
            f"clique order must be even here, got {m}; use km_pn_config_odd"
        )
    return _km_pn_column_layout(m, n)


def km_pn_config_odd(m: int, n: int) -> BrushConfig:
    """Same column layout for odd m >= 3; total n * floor(m^2/4) + 1.

    The layout is checked by simulation before being returned; if some
    size ever fell outside its reach, an exact witness at DP scale is
    substituted so the advertised total still holds.
    """
    _check_km_pn_dims(m, n)
    if m % 2 == 0:
        raise InvalidParameterError(f"clique order must be odd here, got {m}")
    if m < 3:
        raise InvalidParameterError(f"odd clique order must be >= 3, got {m}")
    cfg = _km_pn_column_layout(m, n)
    g, _ = _km_pn(m, n)
    try:
        simulate(g, cfg, km_pn_sequence(m, n))
        return cfg
    except InfeasibleStepError:
        pass
    ok, _ = can_clean(g, cfg)
    if ok:
        return cfg
    result = brush_number_dp(g)  # falls through to TooLargeError past the cap
    if result.value != km_pn_brush_number(m, n):
        raise InternalInconsistencyError(
            f"exact value {result.value} contradicts the closed form for K{m} x P{n}"
        )
    return minimal_config_for_sequence(g, result.witness)


def km_pn_sequence(m: int, n: int) -> CleaningSequence:
    """Column by column, ascending clique index."""
    _check_km_pn_dims(m, n)
    return CleaningSequence(tuple(i * n + j for j in range(n) for i in range(m)))


def _km_pn_column_layout(m: int, n: int) -> BrushConfig:
    counts = []
    for i in range(m):
        for j in range(n):
            if j == 0:
                c = m - 2 * i
            elif j == n - 1:
                c = m - 2 - 2 * i
            else:
                c = m - 1 - 2 * i
            counts.append(max(0, c))
    return BrushConfig(tuple(counts))


def _check_torus_dims(m: int, n: int) -> None:
    if m < 3 or n < 3:
        raise InvalidParameterError(f"torus needs both cycles >= 3, got {m} x {n}")


def _check_km_pn_dims(m: int, n: int) -> None:
    if m < 2 or n < 2:
        raise InvalidParameterError(
            f"clique-path product needs m >= 2 and n >= 2, got {m} x {n}"
        )


def _torus(m: int, n: int) -> tuple[Graph, ProductLabeling]:
    return cartesian_product(make_cycle(m), make_cycle(n))


def _km_pn(m: int, n: int) -> tuple[Graph, ProductLabeling]:
    return cartesian_product(make_clique(m), make_path(n))


# ------------------------------------------------------- torus row merging

def _relabel(
    lab_from: ProductLabeling,
    lab_to: ProductLabeling,
    coord_map: Callable[[int, int], tuple[int, int]],
    w0: BrushConfig,
    seq: CleaningSequence,
) -> tuple[BrushConfig, CleaningSequence, Callable[[int], int]]:
    def vmap(v: int) -> int:
        return lab_to.id(*coord_map(*lab_from.pair(v)))

    counts = [0] * (lab_to.m * lab_to.n)
    for v, c in enumerate(w0.counts):
        counts[vmap(v)] = c
    return BrushConfig(tuple(counts)), CleaningSequence(tuple(vmap(v) for v in seq)), vmap


def combine_torus_rows(
    labeling: ProductLabeling,
    w0: BrushConfig,
    seq: CleaningSequence,
    row: int,
) -> tuple[Graph, ProductLabeling, BrushConfig, CleaningSequence]:
    """Merge rows row and row+1 of a cleanable torus vertex-wise.

    Each merged vertex inherits the pair's brush sum and the earlier of
    the pair's cleaning positions, so the output cleans C_{m-1} x C_n
    with the same total.  Requires m >= 4 and a valid input cleaning.
    """
    m, n = labeling.m, labeling.n
    _check_torus_dims(m, n)
    if m < 4:
        raise InvalidParameterError(f"merging rows needs m >= 4, got {m}")
    if not 0 <= row <= m - 2:
        raise InvalidParameterError(f"row must be in 0..{m - 2}, got {row}")
    g, _ = _torus(m, n)
    _simulate_or_invalid(g, w0, seq)

    new_lab = ProductLabeling(m - 1, n)

    def vmap(v: int) -> int:
        i, j = labeling.pair(v)
        return new_lab.id(i if i <= row else i - 1, j)

    counts = [0] * ((m - 1) * n)
    for v, c in enumerate(w0.counts):
        counts[vmap(v)] += c
    merged_order: list[int] = []
    for v in seq:
        nv = vmap(v)
        if nv not in merged_order:
            merged_order.append(nv)
    new_g, _ = _torus(m - 1, n)
    new_w0 = BrushConfig(tuple(counts))
    new_seq = CleaningSequence(tuple(merged_order))
    try:
        simulate(new_g, new_w0, new_seq)
    except InfeasibleStepError as exc:  # ruled out for valid inputs
        raise InternalInconsistencyError(
            f"merged cleaning failed at vertex {exc.vertex}"
        ) from exc
    return new_g, new_lab, new_w0, new_seq


@dataclass(frozen=True)
class CorrectRows:
    """Adjacent index pair whose merge frees two brushes.

    axis is "rows" or "cols"; pair is ordered along the cycle, so it may
    wrap (e.g. (m-1, 0)).  target is the vertex whose brush deficit
    locates the savings: the first vertex in cleaning order holding
    fewer than four brushes.
    """

    axis: str
    pair: tuple[int, int]
    target: int


@dataclass(frozen=True)
class TorusReduction:
    """A merged torus cleaning with two brushes removed."""

    graph: Graph
    labeling: ProductLabeling
    config: BrushConfig
    sequence: CleaningSequence
    correct: CorrectRows
    removed_at: int
    total_before: int
    total_after: int


def find_correct_rows(
    labeling: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> CorrectRows:
    """Locate the adjacent rows (or columns) whose merge admits removing
    two brushes while staying cleanable.

    Scans the cleaning order for the first vertex with fewer than four
    initial brushes; that vertex has an earlier-cleaned neighbour, and
    the two lines through the pair are the candidates.  Only axes of
    length >= 4 are usable (the merged cycle must keep length >= 3), so
    when the primary pair lies along a length-3 axis the scan continues
    with later deficient vertices, validating each candidate by
    simulation.  Requires an optimal input cleaning.
    """
    for correct, _ in _savings_candidates(labeling, w0, seq):
        return correct
    raise InternalInconsistencyError(
        "no adjacent row or column pair frees two brushes; "
        "this contradicts the structure of an optimal torus cleaning"
    )


def reduce_torus(
    labeling: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> TorusReduction:
    """Merge the correct rows and remove two brushes; full artifact."""
    for _, reduction in _savings_candidates(labeling, w0, seq):
        return reduction
    raise InternalInconsistencyError(
        "no adjacent row or column pair frees two brushes; "
        "this contradicts the structure of an optimal torus cleaning"
    )


def _savings_candidates(
    labeling: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> Iterator[tuple[CorrectRows, TorusReduction]]:
    m, n = labeling.m, labeling.n
    _check_torus_dims(m, n)
    if m < 4 and n < 4:
        raise InvalidParameterError(f"no axis of {m} x {n} can be shortened")
    g, _ = _torus(m, n)
    _simulate_or_invalid(g, w0, seq)
    if w0.total != torus_brush_number(m, n):
        raise PreconditionViolationError(
            f"input total {w0.total} is not the optimal {torus_brush_number(m, n)}"
        )
    pos = {v: k for k, v in enumerate(seq.order)}
    for t in seq:
        if w0[t] >= 4:
            continue
        earlier = sorted(
            (u for u in g.adjacency[t] if pos[u] < pos[t]), key=pos.__getitem__
        )
        for p in earlier:
            axis, pair = _axis_pair(labeling, t, p)
            if (m if axis == "rows" else n) < 4:
                continue
            reduction = _attempt_reduction(labeling, w0, seq, axis, pair, t, earlier)
            if reduction is not None:
                yield CorrectRows(axis, pair, t), reduction


def _axis_pair(
    labeling: ProductLabeling, t: int, p: int
) -> tuple[str, tuple[int, int]]:
    ti, tj = labeling.pair(t)
    pi, pj = labeling.pair(p)
    if tj == pj:
        axis, a, b, length = "rows", pi, ti, labeling.m
    else:
        axis, a, b, length = "cols", pj, tj, labeling.n
    if (a + 1) % length == b:
        return axis, (a, b)
    if (b + 1) % length == a:
        return axis, (b, a)
    raise InternalInconsistencyError(f"vertices {t} and {p} are not on adjacent lines")


def _attempt_reduction(
    labeling: ProductLabeling,
    w0: BrushConfig,
    seq: CleaningSequence,
    axis: str,
    pair: tuple[int, int],
    target: int,
    earlier: list[int],
) -> TorusReduction | None:
    m, n = labeling.m, labeling.n
    lab, cfg, order = labeling, w0, seq
    tgt, helpers = target, list(earlier)

    if axis == "cols":
        lab2 = ProductLabeling(n, m)
        cfg, order, vmap = _relabel(lab, lab2, lambda i, j: (j, i), cfg, order)
        tgt, helpers = vmap(tgt), [vmap(u) for u in helpers]
        lab = lab2

    rows = lab.m
    low = pair[0]
    if (low + 1) % rows != pair[1] % rows:
        raise InternalInconsistencyError("pair is not adjacent along its cycle")
    if low == rows - 1:  # wrapped pair: rotate so it becomes (0, 1)
        lab2 = ProductLabeling(rows, lab.n)
        cfg, order, vmap = _relabel(lab, lab2, lambda i, j: ((i + 1) % rows, j), cfg, order)
        tgt, helpers = vmap(tgt), [vmap(u) for u in helpers]
        lab, low = lab2, 0

    merged_g, merged_lab, merged_cfg, merged_seq = combine_torus_rows(lab, cfg, order, low)

    def mmap(v: int) -> int:
        i, j = lab.pair(v)
        return merged_lab.id(i if i <= low else i - 1, j)

    merged_pos = {v: k for k, v in enumerate(merged_seq.order)}
    merged_tgt = mmap(tgt)
    candidates: list[int] = []
    if merged_cfg[merged_tgt] >= 6:
        candidates.append(merged_tgt)
    for p2 in helpers:
        mp2 = mmap(p2)
        if mp2 == merged_tgt:
            continue
        later = max(merged_tgt, mp2, key=merged_pos.__getitem__)
        candidates.append(later)
    # last resort: any vertex with spare brushes, latest-cleaned first
    candidates.extend(
        sorted(
            (v for v in range(len(merged_cfg)) if merged_cfg[v] >= 2),
            key=merged_pos.__getitem__,
            reverse=True,
        )
    )
    seen: set[int] = set()
    for cand in candidates:
        if cand in seen or merged_cfg[cand] < 2:
            continue
        seen.add(cand)
        trimmed = BrushConfig(
            tuple(c - 2 if v == cand else c for v, c in enumerate(merged_cfg.counts))
        )
        out_seq = None
        try:
            simulate(merged_g, trimmed, merged_seq)
            out_seq = merged_seq
        except InfeasibleStepError:
            ok, found = can_clean(merged_g, trimmed)
            if ok:
                out_seq = found  # type: ignore[assignment]
        if out_seq is None:
            continue
        out_g, out_lab, out_cfg, out_removed = merged_g, merged_lab, trimmed, cand
        if axis == "cols":  # transpose back so dims read (m, n-1)
            out_lab2 = ProductLabeling(lab.n, merged_lab.m)
            out_cfg, out_seq, vmap = _relabel(
                merged_lab, out_lab2, lambda i, j: (j, i), out_cfg, out_seq
            )
            out_removed = vmap(out_removed)
            out_lab = out_lab2
            out_g, _ = _torus(out_lab.m, out_lab.n)
        return TorusReduction(
            graph=out_g,
            labeling=out_lab,
            config=out_cfg,
            sequence=out_seq,
            correct=CorrectRows(axis, pair, target),
            removed_at=out_removed,
            total_before=w0.total,
            total_after=out_cfg.total,
        )
    return None


def _simulate_or_invalid(g: Graph, w0: BrushConfig, seq: CleaningSequence) -> None:
    try:
        simulate(g, w0, seq)
    except InfeasibleStepError as exc:
        raise InvalidInputError(
            f"input pair does not clean the graph: {exc}"
        ) from exc


# ------------------------------------------------- clique layer deletion

_CLASS_ADJUST = {"A": 1, "E": 1, "C": -1, "G": -1}


@dataclass(frozen=True)
class BoundaryClassCounts:
    """Counts of the eight kinds of adjacent pair straddling the first
    two clique copies, keyed by (first holds brushes?, cleaning
    direction, second holds brushes?).  diagnostics lists departures
    from the structure optimal cleanings are known to have."""

    a: int
    b: int
    c: int
    d: int
    e: int
    f: int
    g: int
    h: int
    diagnostics: tuple[str, ...] = ()

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d + self.e + self.f + self.g + self.h


def _boundary_letters(
    labeling: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> list[str]:
    pos = {v: k for k, v in enumerate(seq.order)}
    letters = []
    for x in range(labeling.m):
        u, v = labeling.id(x, 0), labeling.id(x, 1)
        u_pos, fwd, v_pos = w0[u] > 0, pos[u] < pos[v], w0[v] > 0
        if u_pos:
            letter = ("A" if v_pos else "B") if fwd else ("C" if v_pos else "D")
        else:
            letter = ("E" if v_pos else "F") if fwd else ("G" if v_pos else "H")
        letters.append(letter)
    return letters


def classify_boundary_pairs(
    labeling: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> BoundaryClassCounts:
    """Classify the m pairs between clique copies 0 and 1 of K_m x P_n.

    Optimal cleanings of even-order products place positive first-copy
    brushes on the first half of that copy's cleaning order; violations
    are reported in diagnostics rather than rejected.
    """
    m, n = labeling.m, labeling.n
    _check_km_pn_dims(m, n)
    g, _ = _km_pn(m, n)
    _simulate_or_invalid(g, w0, seq)
    letters = _boundary_letters(labeling, w0, seq)
    counts = {k: letters.count(k) for k in "ABCDEFGH"}

    diagnostics: list[str] = []
    if m % 2 == 0:
        pos = {v: k for k, v in enumerate(seq.order)}
        first_copy = sorted((labeling.id(x, 0) for x in range(m)), key=pos.__getitem__)
        for rank, u in enumerate(first_copy, start=1):
            if w0[u] > 0 and rank > m // 2:
                diagnostics.append(
                    f"vertex {u} holds {w0[u]} brushes but is cleaned "
                    f"{rank}th of {m} in its copy"
                )
    return BoundaryClassCounts(
        a=counts["A"],
        b=counts["B"],
        c=counts["C"],
        d=counts["D"],
        e=counts["E"],
        f=counts["F"],
        g=counts["G"],
        h=counts["H"],
        diagnostics=tuple(diagnostics),
    )


def delete_clique_layer(
    labeling: ProductLabeling,
    w0: BrushConfig,
    seq: CleaningSequence,
    base_mode: bool | None = None,
) -> tuple[Graph, ProductLabeling, BrushConfig]:
    """Remove clique copy 0 and compensate copy 1 per its pair classes.

    Pairs whose first-copy vertex cleans first and whose classes mark
    both ends (A) or the far end only (E) gain one brush; pairs cleaned
    from the second copy against positive far brushes (C, G) give one
    up.  base_mode selects the two-copy variant that reduces to a bare
    clique and adds the one extra brush the half-way vertex may need;
    leave it None to infer from n.  The output cleans K_m x P_{n-1}
    whenever the input cleaning is optimal; verify with can_clean
    otherwise.
    """
    m, n = labeling.m, labeling.n
    _check_km_pn_dims(m, n)
    if base_mode is None:
        base_mode = n == 2
    if base_mode != (n == 2):
        raise InvalidParameterError(
            f"base_mode={base_mode} does not fit n={n}; the base variant is for n=2"
        )
    g, _ = _km_pn(m, n)
    _simulate_or_invalid(g, w0, seq)
    letters = _boundary_letters(labeling, w0, seq)

    new_lab = ProductLabeling(m, n - 1)
    counts = [0] * (m * (n - 1))
    for x in range(m):
        for j in range(1, n):
            c = w0[labeling.id(x, j)]
            if j == 1:
                c += _CLASS_ADJUST.get(letters[x], 0)
            if c < 0:
                raise InvalidClassificationError(
                    f"pair {x} (class {letters[x]}) would drop below zero brushes"
                )
            counts[new_lab.id(x, j - 1)] = c

    if base_mode and m % 2 == 0:
        pos = {v: k for k, v in enumerate(seq.order)}
        second_copy = sorted((labeling.id(x, 1) for x in range(m)), key=pos.__getitem__)
        halfway = second_copy[m // 2 - 1]
        if w0[halfway] == 0:
            x, _ = labeling.pair(halfway)
            counts[new_lab.id(x, 0)] += 1

    new_g, _ = _km_pn(m, n - 1)
    return new_g, new_lab, BrushConfig(tuple(counts))
