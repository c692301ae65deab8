"""Command-line front end.

Subcommands: gen, solve, config, verify, reduce, report.  Output is
line-oriented key=value for machine consumption, with aligned tables
where a suite emits many rows.  Exit codes: 0 success or feasible,
1 infeasible or mismatched, 2 bad input, 3 instance over a size cap,
4 incomplete search, 5 internal verification failure.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import constructions as cons
from .cleaning import (
    BrushConfig,
    CleaningSequence,
    can_clean,
    minimal_config_for_sequence,
    parse_brush_config,
    parse_sequence,
    serialize_brush_config,
    serialize_sequence,
    simulate,
)
from .errors import (
    InfeasibleStepError,
    InternalInconsistencyError,
    InvalidClassificationError,
    InvalidInputError,
    InvalidOrientationError,
    InvalidParameterError,
    InvalidSequenceError,
    ParseError,
    PreconditionViolationError,
    ResourceLimitError,
    TooLargeError,
)
from .graphs import (
    Graph,
    ProductLabeling,
    cartesian_product,
    make_clique,
    make_cycle,
    make_path,
    parse_edge_list,
    serialize_edge_list,
)
from .solver import (
    DEFAULT_DP_CAP,
    brush_number_bnb,
    brush_number_dp,
    brute_force_permutations,
    check_box_conjecture,
    parity_lower_bound,
)

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_BAD_INPUT = 2
EXIT_TOO_LARGE = 3
EXIT_INCOMPLETE = 4
EXIT_VERIFY_FAILED = 5


# ------------------------------------------------------------- utilities

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _load_graph(path: str) -> Graph:
    try:
        return parse_edge_list(_read_text(path))
    except ParseError as exc:
        raise ParseError(exc.line_no, exc.message, source=path) from None


def _load_config(path: str) -> BrushConfig:
    try:
        return parse_brush_config(_read_text(path))
    except ParseError as exc:
        raise ParseError(exc.line_no, exc.message, source=path) from None


def _load_sequence(path: str) -> CleaningSequence:
    try:
        return parse_sequence(_read_text(path))
    except ParseError as exc:
        raise ParseError(exc.line_no, exc.message, source=path) from None


def _fmt_config(w0: BrushConfig) -> str:
    return " ".join(f"{v}:{c}" for v, c in enumerate(w0.counts) if c) or "-"


def _fmt_seq(seq: CleaningSequence) -> str:
    return " ".join(str(v) for v in seq.order)


def _int_params(family: str, params: list[str], count: int) -> list[int]:
    if len(params) != count:
        raise InvalidParameterError(
            f"{family} takes {count} parameter{'s' if count != 1 else ''}, got {len(params)}"
        )
    try:
        return [int(p) for p in params]
    except ValueError:
        raise InvalidParameterError(f"{family} parameters must be integers: {params}") from None


def _parse_range(text: str) -> tuple[int, int]:
    sep = ".." if ".." in text else ":"
    parts = text.split(sep)
    try:
        lo, hi = (int(parts[0]), int(parts[1])) if len(parts) == 2 else (int(parts[0]),) * 2
    except ValueError:
        raise InvalidParameterError(f"bad range {text!r}, expected A..B") from None
    if lo > hi:
        raise InvalidParameterError(f"empty range {text!r}")
    return lo, hi


def _parse_instances(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.split(","):
        parts = item.lower().strip().split("x")
        if len(parts) != 2:
            raise InvalidParameterError(f"bad instance {item!r}, expected MxN")
        try:
            out.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise InvalidParameterError(f"bad instance {item!r}, expected MxN") from None
    return out


def _parse_factor(spec: str) -> tuple[str, Graph]:
    kind, rest = spec[:1].upper(), spec[1:]
    try:
        k = int(rest)
    except ValueError:
        raise InvalidParameterError(f"bad factor {spec!r}, expected P<k>, C<k> or K<k>") from None
    if kind == "P":
        return f"P{k}", make_path(k)
    if kind == "C":
        return f"C{k}", make_cycle(k)
    if kind == "K":
        return f"K{k}", make_clique(k)
    raise InvalidParameterError(f"bad factor {spec!r}, expected P<k>, C<k> or K<k>")


def _write(path: Path, text: str) -> None:
    path.write_text(text)
    print(f"wrote={path}")


# ------------------------------------------------------------------ gen

def _build_family(family: str, params: list[str]) -> tuple[Graph, ProductLabeling | None]:
    if family == "path":
        (k,) = _int_params(family, params, 1)
        return make_path(k), None
    if family == "cycle":
        (k,) = _int_params(family, params, 1)
        return make_cycle(k), None
    if family == "clique":
        (k,) = _int_params(family, params, 1)
        return make_clique(k), None
    if family == "torus":
        m, n = _int_params(family, params, 2)
        cons.torus_brush_number(m, n)  # validates dimensions
        return cartesian_product(make_cycle(m), make_cycle(n))
    if family == "km-pn":
        m, n = _int_params(family, params, 2)
        cons.km_pn_brush_number(m, n)
        return cartesian_product(make_clique(m), make_path(n))
    if family == "km-cn":
        m, n = _int_params(family, params, 2)
        if m < 2 or n < 3:
            raise InvalidParameterError(
                f"clique-cycle product needs m >= 2 and n >= 3, got {m} x {n}"
            )
        return cartesian_product(make_clique(m), make_cycle(n))
    raise InvalidParameterError(f"unknown family {family!r}")


def cmd_gen(args: argparse.Namespace) -> int:
    if args.family == "product":
        if len(args.params) != 2:
            raise InvalidParameterError("product takes two edge-list files")
        g, _ = cartesian_product(_load_graph(args.params[0]), _load_graph(args.params[1]))
    else:
        g, _ = _build_family(args.family, args.params)
    text = serialize_edge_list(g)
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote={args.output}")
        print(f"vertices={g.vertex_count}")
        print(f"edges={g.edge_count}")
    else:
        sys.stdout.write(text)
        print(f"vertices={g.vertex_count} edges={g.edge_count}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- solve

def cmd_solve(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    if args.method == "dp":
        result = brush_number_dp(g, max_vertices=args.max_dp_vertices)
    elif args.method == "bnb":
        result = brush_number_bnb(g, args.upper_hint, timeout=args.timeout)
    else:
        result = brute_force_permutations(g)
    w0 = minimal_config_for_sequence(g, result.witness)
    print(f"method={result.method}")
    print(f"value={result.value}")
    print(f"complete={'true' if result.complete else 'false'}")
    print(f"lower_bound={result.value if result.complete else parity_lower_bound(g)}")
    print(f"states={result.states}")
    print(f"seconds={result.seconds:.3f}")
    print(f"sequence={_fmt_seq(result.witness)}")
    print(f"config={_fmt_config(w0)}")
    print(f"total={w0.total}")
    return EXIT_OK if result.complete else EXIT_INCOMPLETE


# --------------------------------------------------------------- config

def _family_artifacts(
    family: str, params: list[str]
) -> tuple[Graph, BrushConfig, CleaningSequence, int]:
    if family == "path":
        (k,) = _int_params(family, params, 1)
        return make_path(k), cons.path_config(k), cons.path_sequence(k), 1
    if family == "cycle":
        (k,) = _int_params(family, params, 1)
        return make_cycle(k), cons.cycle_config(k), cons.cycle_sequence(k), 2
    if family == "clique":
        (k,) = _int_params(family, params, 1)
        return make_clique(k), cons.clique_config(k), cons.clique_sequence(k), k * k // 4
    if family == "torus":
        m, n = _int_params(family, params, 2)
        g, _ = cartesian_product(make_cycle(m), make_cycle(n))
        return g, cons.torus_config(m, n), cons.torus_sequence(m, n), cons.torus_brush_number(m, n)
    if family == "km-pn":
        m, n = _int_params(family, params, 2)
        g, _ = cartesian_product(make_clique(m), make_path(n))
        cfg = cons.km_pn_config(m, n) if m % 2 == 0 else cons.km_pn_config_odd(m, n)
        return g, cfg, cons.km_pn_sequence(m, n), cons.km_pn_brush_number(m, n)
    raise InvalidParameterError(f"no closed-form config for family {family!r}")


def cmd_config(args: argparse.Namespace) -> int:
    g, cfg, seq, formula = _family_artifacts(args.family, args.params)
    try:
        simulate(g, cfg, seq)
        verified = True
    except InfeasibleStepError:
        verified = False
    print(f"family={args.family}")
    print(f"params={' '.join(args.params)}")
    print(f"vertices={g.vertex_count}")
    print(f"total={cfg.total}")
    print(f"formula={formula}")
    print(f"config={_fmt_config(cfg)}")
    print(f"sequence={_fmt_seq(seq)}")
    print(f"verified={'true' if verified else 'false'}")
    if not verified:
        return EXIT_VERIFY_FAILED
    if args.out_prefix:
        _write(Path(args.out_prefix + ".graph"), serialize_edge_list(g))
        _write(Path(args.out_prefix + ".config"), serialize_brush_config(cfg))
        _write(Path(args.out_prefix + ".sequence"), serialize_sequence(seq, g.vertex_count))
    return EXIT_OK


# --------------------------------------------------------------- verify

def cmd_verify(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    cfg = _load_config(args.config)
    if args.sequence:
        seq = _load_sequence(args.sequence)
        try:
            trace = simulate(g, cfg, seq)
        except InfeasibleStepError as exc:
            print("feasible=false")
            print(f"failed_vertex={exc.vertex} have={exc.have} need={exc.need}")
            return EXIT_INFEASIBLE
        for k, step in enumerate(trace.steps, start=1):
            edges = ",".join(f"{u}-{v}" for u, v in step.cleaned_edges) or "-"
            sent = ",".join(str(u) for u in step.forwarded_to) or "-"
            print(
                f"step={k} vertex={step.vertex} before={step.brushes_before} "
                f"cleaned={edges} sent={sent}"
            )
        print("feasible=true")
        print(f"total={cfg.total}")
        return EXIT_OK
    ok, outcome = can_clean(g, cfg)
    if ok:
        print("cleanable=true")
        print(f"sequence={_fmt_seq(outcome)}")
        return EXIT_OK
    print("cleanable=false")
    print(f"blocked={' '.join(str(v) for v in sorted(outcome))}")
    return EXIT_INFEASIBLE


# --------------------------------------------------------------- reduce

def cmd_reduce(args: argparse.Namespace) -> int:
    lab = ProductLabeling(args.m, args.n)
    w0 = _load_config(args.config)
    seq = _load_sequence(args.sequence)
    if args.kind == "torus-rows":
        return _reduce_torus(args, lab, w0, seq)
    return _reduce_clique_layer(args, lab, w0, seq)


def _reduce_torus(
    args: argparse.Namespace, lab: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> int:
    print(f"kind=torus-rows m={lab.m} n={lab.n}")
    print(f"total_before={w0.total}")
    if args.row is not None:
        g2, lab2, w2, s2 = cons.combine_torus_rows(lab, w0, seq, args.row)
        print(f"row={args.row}")
        print(f"reduced=C{lab2.m}xC{lab2.n}")
        print(f"total_after={w2.total}")
        print("savings=0")
        out = (g2, w2, s2)
    else:
        red = cons.reduce_torus(lab, w0, seq)
        print(f"axis={red.correct.axis}")
        print(f"pair={red.correct.pair[0]},{red.correct.pair[1]}")
        print(f"target={red.correct.target}")
        print(f"removed_at={red.removed_at}")
        print(f"reduced=C{red.labeling.m}xC{red.labeling.n}")
        print(f"total_after={red.total_after}")
        print(f"savings={red.total_before - red.total_after}")
        out = (red.graph, red.config, red.sequence)
    print("verified=true")  # both paths simulate before returning
    if args.out_prefix:
        g2, w2, s2 = out
        _write(Path(args.out_prefix + ".graph"), serialize_edge_list(g2))
        _write(Path(args.out_prefix + ".config"), serialize_brush_config(w2))
        _write(Path(args.out_prefix + ".sequence"), serialize_sequence(s2, g2.vertex_count))
    return EXIT_OK


def _reduce_clique_layer(
    args: argparse.Namespace, lab: ProductLabeling, w0: BrushConfig, seq: CleaningSequence
) -> int:
    counts = cons.classify_boundary_pairs(lab, w0, seq)
    print(f"kind=clique-layer m={lab.m} n={lab.n}")
    print(
        "classes="
        + " ".join(f"{k}:{getattr(counts, k)}" for k in "abcdefgh")
    )
    for note in counts.diagnostics:
        print(f"diagnostic={note}")
    g2, lab2, w2 = cons.delete_clique_layer(lab, w0, seq)
    print(f"reduced=K{lab2.m}xP{lab2.n}")
    print(f"total_before={w0.total}")
    print(f"total_after={w2.total}")
    print(f"savings={w0.total - w2.total}")

    # prefer the input order restricted to the surviving copies
    restricted = CleaningSequence(
        tuple(
            lab2.id(x, j - 1)
            for v in seq
            for x, j in (lab.pair(v),)
            if j >= 1
        )
    )
    out_seq: CleaningSequence | None = None
    try:
        simulate(g2, w2, restricted)
        out_seq = restricted
    except InfeasibleStepError:
        ok, found = can_clean(g2, w2)
        if ok:
            out_seq = found  # type: ignore[assignment]
    print(f"verified={'true' if out_seq is not None else 'false'}")
    if out_seq is None:
        return EXIT_VERIFY_FAILED
    if args.out_prefix:
        _write(Path(args.out_prefix + ".graph"), serialize_edge_list(g2))
        _write(Path(args.out_prefix + ".config"), serialize_brush_config(w2))
        _write(Path(args.out_prefix + ".sequence"), serialize_sequence(out_seq, g2.vertex_count))
    return EXIT_OK


# --------------------------------------------------------------- report

def _report_worker(task: dict) -> dict:
    kind = task["kind"]
    cap, timeout = task["cap"], task["timeout"]
    if kind in ("torus", "km-pn"):
        m, n = task["m"], task["n"]
        if kind == "torus":
            label = f"C{m}xC{n}"
            formula = cons.torus_brush_number(m, n)
            g, _ = cartesian_product(make_cycle(m), make_cycle(n))
        else:
            label = f"K{m}xP{n}"
            formula = cons.km_pn_brush_number(m, n)
            g, _ = cartesian_product(make_clique(m), make_path(n))
        if g.vertex_count <= cap:
            res = brush_number_dp(g, max_vertices=cap)
        else:
            res = brush_number_bnb(g, timeout=timeout)
        if not res.complete:
            match = "incomplete"
        else:
            match = "yes" if res.value == formula else "no"
        return {
            "instance": label,
            "formula": str(formula),
            "solver": str(res.value),
            "match": match,
            "method": res.method,
            "states": str(res.states),
            "seconds": f"{res.seconds:.3f}",
        }
    if kind == "km-cn":
        m, n = task["m"], task["n"]
        g, _ = cartesian_product(make_clique(m), make_cycle(n))
        if g.vertex_count > cap:
            return {
                "instance": f"K{m}xC{n}",
                "solver": "-",
                "fixed": str(m * m // 4 + 2),
                "scaled": str(n * (m * m // 4) + 2),
                "verdict": "skipped",
                "seconds": "-",
            }
        res = brush_number_dp(g, max_vertices=cap)
        fixed = m * m // 4 + 2
        scaled = n * (m * m // 4) + 2
        if res.value == fixed and res.value == scaled:
            verdict = "both"
        elif res.value == fixed:
            verdict = "fixed"
        elif res.value == scaled:
            verdict = "scaled"
        else:
            verdict = "neither"
        return {
            "instance": f"K{m}xC{n}",
            "solver": str(res.value),
            "fixed": str(fixed),
            "scaled": str(scaled),
            "verdict": verdict,
            "seconds": f"{res.seconds:.3f}",
        }
    if kind == "box":
        label, h = _parse_factor(task["factor"])
        report = check_box_conjecture(h, task["order"], max_vertices=cap)
        return {
            "order": str(task["order"]),
            "factor": label,
            "path": str(report.path_value),
            "clique": str(report.clique_value),
            "min": str(report.min_value),
            "max": str(report.max_value),
            "graphs": str(report.graphs_checked),
            "connected": str(report.connected_checked),
            "violations": str(len(report.violations)),
            "match": "yes" if report.holds else "no",
        }
    raise InvalidParameterError(f"unknown report kind {kind!r}")


_REPORT_COLUMNS = {
    "torus": ("instance", "formula", "solver", "match", "method", "states", "seconds"),
    "km-pn": ("instance", "formula", "solver", "match", "method", "states", "seconds"),
    "km-cn": ("instance", "solver", "fixed", "scaled", "verdict", "seconds"),
    "box": (
        "order",
        "factor",
        "path",
        "clique",
        "min",
        "max",
        "graphs",
        "connected",
        "violations",
        "match",
    ),
}


def _render_table(columns: tuple[str, ...], rows: list[dict]) -> str:
    widths = [
        max(len(col), *(len(r[col]) for r in rows)) if rows else len(col)
        for col in columns
    ]
    lines = ["  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(r[col].ljust(w) for col, w in zip(columns, widths)).rstrip())
    return "\n".join(lines)


def cmd_report(args: argparse.Namespace) -> int:
    suite = args.suite
    cap, timeout = args.max_dp_vertices, args.timeout
    if suite in ("torus", "km-pn", "km-cn"):
        if args.instances:
            instances = _parse_instances(args.instances)
        else:
            defaults = {
                "torus": ("3..4", "3..5"),
                "km-pn": ("2..4", "2..4"),
                "km-cn": None,
            }[suite]
            if defaults is None:
                instances = [(3, 3), (3, 4), (4, 3)]
            else:
                m_lo, m_hi = _parse_range(args.m_range or defaults[0])
                n_lo, n_hi = _parse_range(args.n_range or defaults[1])
                instances = [
                    (m, n)
                    for m in range(m_lo, m_hi + 1)
                    for n in range(n_lo, n_hi + 1)
                ]
        tasks = [
            {"kind": suite, "m": m, "n": n, "cap": cap, "timeout": timeout}
            for m, n in instances
        ]
    else:
        if not args.factor:
            raise InvalidParameterError("box suite needs --factor (e.g. P2, C3)")
        tasks = [
            {
                "kind": "box",
                "order": args.order,
                "factor": args.factor,
                "cap": cap,
                "timeout": timeout,
            }
        ]

    if args.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_report_worker, tasks))
    else:
        rows = [_report_worker(t) for t in tasks]

    columns = _REPORT_COLUMNS[suite]
    print(f"suite={suite}")
    print(_render_table(columns, rows))
    print()
    for r in rows:
        print(" ".join(f"{col}={r[col]}" for col in columns))
    mismatches = sum(1 for r in rows if r.get("match") == "no")
    skipped = sum(1 for r in rows if "skipped" in (r.get("match"), r.get("verdict")))
    incomplete = sum(1 for r in rows if r.get("match") == "incomplete")
    summary = f"summary suite={suite} rows={len(rows)} mismatches={mismatches} skipped={skipped} incomplete={incomplete}"
    if suite == "km-cn":
        verdicts = {r["verdict"] for r in rows} - {"skipped"}
        conclusion = verdicts.pop() if len(verdicts) == 1 else "mixed"
        summary += f" conclusion={conclusion}"
    print(summary)
    return EXIT_INFEASIBLE if mismatches else EXIT_OK


# ----------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphclean",
        description="Brush-number toolkit: generators, exact solvers, "
        "closed-form configurations and structural reductions.",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="seed for sampled workloads (current suites are exhaustive)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a family graph as an edge list")
    p.add_argument("family", choices=["path", "cycle", "clique", "torus", "km-pn", "km-cn", "product"])
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="exact brush number of an edge-list file")
    p.add_argument("graph")
    p.add_argument("--method", choices=["dp", "bnb", "brute"], default="dp")
    p.add_argument("--max-dp-vertices", type=int, default=DEFAULT_DP_CAP)
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--upper-hint", type=int, default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("config", help="closed-form configuration for a family")
    p.add_argument("family", choices=["path", "cycle", "clique", "torus", "km-pn"])
    p.add_argument("params", nargs="*")
    p.add_argument("--out-prefix")
    p.set_defaults(func=cmd_config)

    p = sub.add_parser("verify", help="check a configuration, with or without a sequence")
    p.add_argument("graph")
    p.add_argument("config")
    p.add_argument("--sequence")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reduce", help="merge torus rows or delete a clique layer")
    p.add_argument("kind", choices=["torus-rows", "clique-layer"])
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--config", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--row", type=int, default=None)
    p.add_argument("--out-prefix")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("report", help="closed forms against exact values, per suite")
    p.add_argument("suite", choices=["torus", "km-pn", "km-cn", "box"])
    p.add_argument("--m-range")
    p.add_argument("--n-range")
    p.add_argument("--instances", help="explicit MxN list, e.g. 3x3,4x5")
    p.add_argument("--order", type=int, default=3, help="left-factor order for the box suite")
    p.add_argument("--factor", help="right factor for the box suite, e.g. P2")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-dp-vertices", type=int, default=DEFAULT_DP_CAP)
    p.add_argument("--timeout", type=float, default=60.0)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (
        InvalidParameterError,
        InvalidInputError,
        InvalidSequenceError,
        InvalidOrientationError,
        PreconditionViolationError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (TooLargeError, ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except (InternalInconsistencyError, InvalidClassificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except InfeasibleStepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


def entry() -> None:
    sys.exit(main(sys.argv[1:]))


if __name__ == "__main__":
    entry()
