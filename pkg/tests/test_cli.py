import json

import pytest

from char2paley import build_graph, build_tournament, param_a, FieldCtx
from char2paley.cli import main
from char2paley.formats import parse_edges, write_edges


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_build_k2_edges(capsys):
    code, out = run(capsys, "build", "--k", "2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# k=2 a=0x2 poly=0x7 n=5"
    assert len(lines) == 6  # header + 5 edges
    assert "inf 0x0" in lines


def test_build_k3_arc_count(capsys):
    code, out = run(capsys, "build", "--k", "3", "--tournament")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# k=3")
    assert len(lines) - 1 == 36  # C(9,2) arcs
    assert all(" > " in ln for ln in lines[1:])


def test_build_odd_k_requires_tournament_flag(capsys):
    code, _ = run(capsys, "build", "--k", "5", "--format", "edges")
    assert code == 2


def test_build_even_k_rejects_tournament_flag(capsys):
    code, _ = run(capsys, "build", "--k", "4", "--tournament")
    assert code == 2


def test_build_dimacs_rejects_tournaments(capsys):
    code, _ = run(capsys, "build", "--k", "3", "--tournament", "--format", "dimacs")
    assert code == 2


def test_edges_round_trip(capsys):
    code, out = run(capsys, "build", "--k", "4")
    meta, directed, pairs = parse_edges(out)
    assert not directed
    ctx = FieldCtx(meta["k"], meta["poly"])
    g = build_graph(ctx, param_a(ctx, meta["a"]))
    rows = [0] * g.n
    for i, j in pairs:
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    assert tuple(rows) == g.rows


def test_arcs_round_trip():
    ctx = FieldCtx(3)
    t = build_tournament(ctx, param_a(ctx))
    meta, directed, pairs = parse_edges(write_edges(t))
    assert directed
    rows = [0] * t.n
    for i, j in pairs:
        rows[i] |= 1 << j
    assert tuple(rows) == t.arcs


def test_build_matrix_format(capsys):
    code, out = run(capsys, "build", "--k", "2", "--format", "matrix")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5
    rows = [int(ln, 16) for ln in lines]
    ctx = FieldCtx(2)
    assert tuple(rows) == build_graph(ctx, param_a(ctx)).rows


def test_build_json_format(capsys):
    code, out = run(capsys, "build", "--k", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["n"] == 5 and doc["directed"] is False
    assert doc["vertices"][0] == "inf"
    assert sum(len(x) for x in doc["adjacency"]) == 10


def test_build_dimacs_format(capsys):
    code, out = run(capsys, "build", "--k", "4", "--format", "dimacs")
    lines = out.strip().splitlines()
    assert lines[0] == "p edge 17 68"
    assert len(lines) == 69
    assert all(ln.startswith("e ") for ln in lines[1:])


def test_build_deterministic(capsys):
    _, out1 = run(capsys, "build", "--k", "4", "--format", "json")
    _, out2 = run(capsys, "build", "--k", "4", "--format", "json")
    assert out1 == out2


def test_certify_k4(capsys, tmp_path):
    rpt = tmp_path / "cert.json"
    code, _ = run(capsys, "certify", "--k", "4", "--output", str(rpt))
    assert code == 0
    doc = json.loads(rpt.read_text())
    assert doc["schema"] == 1
    assert doc["pass"] is True
    names = {c["name"] for c in doc["checks"]}
    assert {"regularity", "symmetry", "circulant", "self-complementary",
            "automorphisms", "shift-isomorphism-class"} <= names
    assert doc["config"]["a"] == "0x8"
    assert doc["config"]["poly"] == "0x13"


def test_certify_non_generator_parameter_fails_transitivity(capsys, tmp_path):
    # 0x20 has trace 1 at k=6 but its alpha-orbit has length 13, not 65:
    # the graph still builds, but the transitivity certificate must fail
    rpt = tmp_path / "cert.json"
    code, _ = run(capsys, "certify", "--k", "6", "--a", "0x20", "--output", str(rpt))
    assert code == 1
    doc = json.loads(rpt.read_text())
    assert doc["pass"] is False
    checks = {c["name"]: c for c in doc["checks"]}
    assert checks["regularity"]["pass"] and checks["symmetry"]["pass"]
    assert checks["circulant"].get("skipped") is True
    vt = checks["vertex-transitive"]
    assert vt["pass"] is False and "witness" in vt


def test_certify_rejects_trace0_a(capsys):
    # 0x1 has trace 0 at k=4
    code, _ = run(capsys, "certify", "--k", "4", "--a", "0x1")
    assert code == 2


def test_certify_rejects_odd_k(capsys):
    code, _ = run(capsys, "certify", "--k", "3")
    assert code == 2


def test_certify_rejects_reducible_poly(capsys):
    code, _ = run(capsys, "certify", "--k", "4", "--poly", "0x11")
    assert code == 2


def test_analyze_k2_spectrum(capsys):
    code, out = run(capsys, "analyze", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] is True
    spec = {(e["epsilon"], e["ell"]): e["count"] for e in doc["codegree_spectrum"]}
    assert spec == {(1, 0): 5, (0, 1): 5}


def test_analyze_k4_bounds(capsys):
    code, out = run(capsys, "analyze", "--k", "4")
    doc = json.loads(out)
    checks = {c["name"]: c for c in doc["checks"]}
    assert checks["codegree-cap"]["max_ell"] <= 6
    assert checks["kloosterman-weil"]["max_abs_K"] <= 8
    assert checks["jumbledness"]["mode"] == "exhaustive"
    assert code == 0


def test_analyze_seeded_determinism(capsys):
    _, out1 = run(capsys, "analyze", "--k", "6", "--seed", "3", "--samples", "500")
    _, out2 = run(capsys, "analyze", "--k", "6", "--seed", "3", "--samples", "500")
    assert out1 == out2


def test_decompose_k4(capsys, tmp_path):
    out_file = tmp_path / "dec.txt"
    code, _ = run(capsys, "decompose", "--k", "4", "--output", str(out_file))
    assert code == 0
    lines = out_file.read_text().strip().splitlines()
    assert lines[0] == "p=17 cycles=4"
    assert len(lines) == 5
    assert all(len(ln.split()) == 17 for ln in lines[1:])


def test_decompose_k6_out_of_scope(capsys):
    code, _ = run(capsys, "decompose", "--k", "6")
    assert code == 3


def test_decompose_k8(capsys, tmp_path):
    out_file = tmp_path / "dec8.txt"
    code, _ = run(capsys, "decompose", "--k", "8", "--output", str(out_file))
    assert code == 0
    assert out_file.read_text().splitlines()[0] == "p=257 cycles=64"


def test_chapman_k2(capsys):
    code, out = run(capsys, "chapman", "--k", "2")
    assert code == 0
    doc = json.loads(out)
    iso = next(c for c in doc["checks"] if c["name"] == "isomorphic")
    assert iso["pass"] and iso["verdict"] == "isomorphic-certified"
    undef = next(c for c in doc["checks"] if c["name"] == "no-undefined-pairs")
    assert undef["undefined_pair_count"] == 0


def test_chapman_rejects_odd_k(capsys):
    code, _ = run(capsys, "chapman", "--k", "3")
    assert code == 2


def test_chapman_k6_out_of_scope(capsys):
    code, _ = run(capsys, "chapman", "--k", "6")
    assert code == 3


def test_build_capacity_exit(capsys):
    code, _ = run(capsys, "build", "--k", "14")
    assert code == 3


def test_analyze_above_dense_cap_streams(capsys):
    # k=14 has no dense matrix: Weil check samples, the rest is skipped
    code, out = run(capsys, "analyze", "--k", "14", "--samples", "50")
    assert code == 0
    doc = json.loads(out)
    checks = {c["name"]: c for c in doc["checks"]}
    assert checks["kloosterman-weil"]["mode"] == "sampled"
    assert checks["kloosterman-weil"]["count"] == 50
    assert checks["jumbledness"].get("skipped") is True
    assert checks["codegree-cap"].get("skipped") is True


def test_analyze_k18_out_of_scope(capsys):
    code, _ = run(capsys, "analyze", "--k", "18")
    assert code == 3


def test_build_poly_override(capsys):
    code, out = run(capsys, "build", "--k", "4", "--poly", "0x19", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["poly"] == "0x19" and doc["n"] == 17


def test_threads_env(capsys, monkeypatch):
    monkeypatch.setenv("CHAR2_PALEY_THREADS", "4")
    code, out = run(capsys, "analyze", "--k", "2")
    assert code == 0
    assert json.loads(out)["config"]["threads"] == 4


def test_threads_env_invalid(capsys, monkeypatch):
    monkeypatch.setenv("CHAR2_PALEY_THREADS", "lots")
    code, _ = run(capsys, "analyze", "--k", "2")
    assert code == 2


def test_k_out_of_range(capsys):
    code, _ = run(capsys, "build", "--k", "25")
    assert code == 2
