"""End-to-end runs of the command line through main()."""

import pytest

from graphclean import (
    brush_number_dp,
    cartesian_product,
    make_clique,
    make_cycle,
    minimal_config_for_sequence,
    parse_brush_config,
    parse_edge_list,
    parse_sequence,
    serialize_brush_config,
    serialize_edge_list,
    serialize_sequence,
)
from graphclean.cli import main


def run(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def kv(out):
    pairs = {}
    for line in out.splitlines():
        tokens = line.split()
        if tokens and all("=" in t for t in tokens):
            for token in tokens:
                key, value = token.split("=", 1)
                pairs.setdefault(key, value)
        elif "=" in line and " " not in line.split("=", 1)[0]:
            key, value = line.split("=", 1)
            pairs.setdefault(key, value)
    return pairs


def write_optimal_cleaning(tmp_path, g, stem):
    res = brush_number_dp(g)
    w0 = minimal_config_for_sequence(g, res.witness)
    cfg = tmp_path / f"{stem}.config"
    seq = tmp_path / f"{stem}.sequence"
    cfg.write_text(serialize_brush_config(w0))
    seq.write_text(serialize_sequence(res.witness, g.vertex_count))
    return cfg, seq


# ------------------------------------------------------------------ gen

def test_gen_to_file(tmp_path, capsys):
    out_file = tmp_path / "kp.graph"
    code, out, _ = run(capsys, "gen", "km-pn", "4", "2", "-o", str(out_file))
    assert code == 0
    assert kv(out)["vertices"] == "8" and kv(out)["edges"] == "16"
    g = parse_edge_list(out_file.read_text())
    assert g.vertex_count == 8 and g.edge_count == 16


def test_gen_stdout(capsys):
    code, out, err = run(capsys, "gen", "cycle", "5")
    assert code == 0
    assert parse_edge_list(out).edge_count == 5
    assert "vertices=5" in err


def test_gen_rejects_degenerate(capsys):
    code, _, err = run(capsys, "gen", "cycle", "2")
    assert code == 2 and "error:" in err


def test_gen_product_of_files(tmp_path, capsys):
    a, b = tmp_path / "a.graph", tmp_path / "b.graph"
    a.write_text(serialize_edge_list(make_cycle(3)))
    b.write_text(serialize_edge_list(make_cycle(4)))
    code, out, _ = run(capsys, "gen", "product", str(a), str(b), "-o", str(tmp_path / "p.graph"))
    assert code == 0 and kv(out)["vertices"] == "12"


# ---------------------------------------------------------------- solve

@pytest.mark.parametrize(
    "family,params,value",
    [
        ("torus", ("3", "3"), "8"),
        ("clique", ("6",), "9"),
        ("km-pn", ("3", "2"), "5"),
    ],
)
def test_solve_known_values(tmp_path, capsys, family, params, value):
    path = tmp_path / "g.graph"
    assert run(capsys, "gen", family, *params, "-o", str(path))[0] == 0
    code, out, _ = run(capsys, "solve", str(path))
    assert code == 0
    pairs = kv(out)
    assert pairs["value"] == value and pairs["complete"] == "true"


def test_solve_methods_agree(tmp_path, capsys):
    path = tmp_path / "c5.graph"
    run(capsys, "gen", "cycle", "5", "-o", str(path))
    values = set()
    for method in ("dp", "bnb", "brute"):
        code, out, _ = run(capsys, "solve", str(path), "--method", method)
        assert code == 0
        values.add(kv(out)["value"])
    assert values == {"2"}


def test_solve_reports_witness_consistently(tmp_path, capsys):
    path = tmp_path / "g.graph"
    run(capsys, "gen", "torus", "3", "3", "-o", str(path))
    _, out, _ = run(capsys, "solve", str(path))
    pairs = kv(out)
    assert pairs["total"] == pairs["value"]
    assert len(pairs["sequence"].split()) == 9


def test_solve_over_cap(tmp_path, capsys):
    path = tmp_path / "k30.graph"
    run(capsys, "gen", "clique", "30", "-o", str(path))
    code, _, err = run(capsys, "solve", str(path))
    assert code == 3 and "error:" in err


def test_solve_parse_error_names_file(tmp_path, capsys):
    path = tmp_path / "broken.graph"
    path.write_text("p 3\n0 1\nbogus\n")
    code, _, err = run(capsys, "solve", str(path))
    assert code == 2
    assert "broken.graph" in err and "line 3" in err


def test_solve_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "solve", str(tmp_path / "absent.graph"))
    assert code == 2 and "error:" in err


# --------------------------------------------------------------- config

@pytest.mark.parametrize(
    "family,params,total",
    [
        ("torus", ("4", "5"), "14"),
        ("km-pn", ("4", "3"), "12"),
        ("km-pn", ("5", "2"), "13"),
    ],
)
def test_config_totals(capsys, family, params, total):
    code, out, _ = run(capsys, "config", family, *params)
    assert code == 0
    pairs = kv(out)
    assert pairs["total"] == total and pairs["verified"] == "true"


def test_config_writes_consistent_files(tmp_path, capsys):
    prefix = str(tmp_path / "t45")
    code, _, _ = run(capsys, "config", "torus", "4", "5", "--out-prefix", prefix)
    assert code == 0
    g = parse_edge_list((tmp_path / "t45.graph").read_text())
    w0 = parse_brush_config((tmp_path / "t45.config").read_text())
    seq = parse_sequence((tmp_path / "t45.sequence").read_text())
    code, out, _ = run(
        capsys,
        "verify",
        str(tmp_path / "t45.graph"),
        str(tmp_path / "t45.config"),
        "--sequence",
        str(tmp_path / "t45.sequence"),
    )
    assert code == 0 and "feasible=true" in out
    assert w0.total == 14 and len(seq) == g.vertex_count == 20


# --------------------------------------------------------------- verify

def test_verify_canonical_torus(tmp_path, capsys):
    prefix = str(tmp_path / "t33")
    run(capsys, "config", "torus", "3", "3", "--out-prefix", prefix)
    code, out, _ = run(
        capsys, "verify", prefix + ".graph", prefix + ".config", "--sequence", prefix + ".sequence"
    )
    assert code == 0
    assert "feasible=true" in out and "total=8" in out
    assert out.count("step=") == 9


def test_verify_blocked_path(tmp_path, capsys):
    graph = tmp_path / "p3.graph"
    config = tmp_path / "zero.config"
    run(capsys, "gen", "path", "3", "-o", str(graph))
    config.write_text("b 3\n")
    code, out, _ = run(capsys, "verify", str(graph), str(config))
    assert code == 1
    assert "cleanable=false" in out and "blocked=0 1 2" in out


def test_verify_search_finds_sequence(tmp_path, capsys):
    graph = tmp_path / "c4.graph"
    config = tmp_path / "c4.config"
    run(capsys, "gen", "cycle", "4", "-o", str(graph))
    config.write_text("b 4\n0 2\n")
    code, out, _ = run(capsys, "verify", str(graph), str(config))
    assert code == 0
    assert "cleanable=true" in out and kv(out)["sequence"].split()[0] == "0"


def test_verify_infeasible_sequence_reports_vertex(tmp_path, capsys):
    graph = tmp_path / "p3.graph"
    config = tmp_path / "one.config"
    seq = tmp_path / "rev.sequence"
    run(capsys, "gen", "path", "3", "-o", str(graph))
    config.write_text("b 3\n0 1\n")
    seq.write_text("s 3\n2 1 0\n")
    code, out, _ = run(capsys, "verify", str(graph), str(config), "--sequence", str(seq))
    assert code == 1
    assert "feasible=false" in out and "failed_vertex=2" in out


# --------------------------------------------------------------- reduce

def test_reduce_torus_rows_from_optimal(tmp_path, capsys):
    g, _ = cartesian_product(make_cycle(4), make_cycle(3))
    cfg, seq = write_optimal_cleaning(tmp_path, g, "t43")
    prefix = str(tmp_path / "red")
    code, out, _ = run(
        capsys,
        "reduce",
        "torus-rows",
        "4",
        "3",
        "--config",
        str(cfg),
        "--sequence",
        str(seq),
        "--out-prefix",
        prefix,
    )
    assert code == 0
    pairs = kv(out)
    assert pairs["total_before"] == "10" and pairs["total_after"] == "8"
    assert pairs["savings"] == "2" and pairs["reduced"] == "C3xC3"
    code, out, _ = run(
        capsys, "verify", prefix + ".graph", prefix + ".config", "--sequence", prefix + ".sequence"
    )
    assert code == 0 and "feasible=true" in out


def test_reduce_explicit_row_keeps_total(tmp_path, capsys):
    prefix = str(tmp_path / "t44")
    run(capsys, "config", "torus", "4", "4", "--out-prefix", prefix)
    code, out, _ = run(
        capsys,
        "reduce",
        "torus-rows",
        "4",
        "4",
        "--row",
        "1",
        "--config",
        prefix + ".config",
        "--sequence",
        prefix + ".sequence",
    )
    assert code == 0
    pairs = kv(out)
    assert pairs["total_after"] == pairs["total_before"] == "12"


def test_reduce_rejects_short_axes(tmp_path, capsys):
    g, _ = cartesian_product(make_cycle(3), make_cycle(3))
    cfg, seq = write_optimal_cleaning(tmp_path, g, "t33")
    code, _, err = run(
        capsys, "reduce", "torus-rows", "3", "3", "--config", str(cfg), "--sequence", str(seq)
    )
    assert code == 2 and "error:" in err


def test_reduce_clique_layer(tmp_path, capsys):
    prefix = str(tmp_path / "kp43")
    run(capsys, "config", "km-pn", "4", "3", "--out-prefix", prefix)
    out_prefix = str(tmp_path / "kp42")
    code, out, _ = run(
        capsys,
        "reduce",
        "clique-layer",
        "4",
        "3",
        "--config",
        prefix + ".config",
        "--sequence",
        prefix + ".sequence",
        "--out-prefix",
        out_prefix,
    )
    assert code == 0
    pairs = kv(out)
    assert pairs["reduced"] == "K4xP2" and pairs["total_after"] == "8"
    assert "classes=" in out
    code, out, _ = run(
        capsys,
        "verify",
        out_prefix + ".graph",
        out_prefix + ".config",
        "--sequence",
        out_prefix + ".sequence",
    )
    assert code == 0


# --------------------------------------------------------------- report

def test_report_torus_all_match(capsys):
    code, out, _ = run(capsys, "report", "torus", "--m-range", "3..4", "--n-range", "3..5")
    assert code == 0
    assert "mismatches=0" in out
    assert out.count("match=yes") == 6


def test_report_km_pn_ranges(capsys):
    code, out, _ = run(capsys, "report", "km-pn", "--m-range", "2..4", "--n-range", "2..3")
    assert code == 0 and "mismatches=0" in out


def test_report_explicit_instances_parallel(capsys):
    code, out, _ = run(
        capsys, "report", "torus", "--instances", "3x3,3x4,4x3", "--jobs", "2"
    )
    assert code == 0
    assert "rows=3" in out and "mismatches=0" in out


def test_report_box(capsys):
    code, out, _ = run(capsys, "report", "box", "--order", "3", "--factor", "P2")
    assert code == 0
    pairs = kv(out)
    assert pairs["path"] == "3" and pairs["clique"] == "5"
    assert pairs["violations"] == "0" and pairs["match"] == "yes"


def test_report_box_needs_factor(capsys):
    code, _, err = run(capsys, "report", "box")
    assert code == 2 and "factor" in err


def test_report_km_cn_states_conclusion(capsys):
    code, out, _ = run(capsys, "report", "km-cn")
    assert code == 0
    assert "conclusion=" in out
    for row in ("K3xC3", "K3xC4", "K4xC3"):
        assert row in out


def test_report_bad_range(capsys):
    code, _, err = run(capsys, "report", "torus", "--m-range", "5..3")
    assert code == 2 and "error:" in err
