import csv
import io
import json
import subprocess
import sys

import pytest

import pebbling.reproduce as rp
from pebbling import graphcore as gc
from pebbling.cli import main
from pebbling.wfl import Strategy


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def graph_file(tmp_path):
    def write(g, fmt="json"):
        p = tmp_path / f"g.{fmt}"
        p.write_bytes(gc.export_graph(g, fmt))
        return str(p)
    return write


# --- family ----------------------------------------------------------------------

def test_family_friendship(capsys):
    code, out, _ = run(capsys, "family", "friendship", "2", "4")
    assert code == 0
    g = gc.import_graph(out)
    assert g.order == 7 and g.labels[0] == "hub"


def test_family_ortho_chain(capsys):
    code, out, _ = run(capsys, "family", "sqchain", "3", "--kind", "ortho")
    assert code == 0
    assert gc.import_graph(out) == gc.make_square_chain(3, "ortho")


def test_family_polymer(capsys, tmp_path):
    spec = gc.PolymerSpec([gc.make_cycle(3), gc.make_cycle(4), gc.make_path(3)],
                          [(0, 1, 1, 0), (1, 2, 2, 0)], "chain")
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(spec.to_json()))
    code, out, _ = run(capsys, "family", "polymer", str(p))
    assert code == 0
    assert gc.import_graph(out) == gc.compose_polymer(spec)


def test_family_dot_to_file(capsys, tmp_path):
    out = tmp_path / "f.dot"
    assert run(capsys, "family", "cycle", "5", "--format", "dot", "--out", str(out))[0] == 0
    assert gc.import_graph(out.read_text(), "dot") == gc.make_cycle(5)


@pytest.mark.parametrize("argv", [
    ["family", "dodecahedron", "3"],
    ["family", "cycle"],
    ["family", "cycle", "two"],
    ["family", "cycle", "2"],
    ["family"],
    ["bogus"],
])
def test_family_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# --- pi / opt --------------------------------------------------------------------

def test_pi_from_dot(capsys, graph_file):
    code, out, _ = run(capsys, "pi", graph_file(gc.make_friendship(2, 3), "dot"))
    assert code == 0
    assert out.splitlines()[0] == "pi_1 = 6"
    assert "exhaustive: true" in out
    assert "budget: 10000000 nodes" in out


def test_pi_t_json(capsys, graph_file):
    code, out, _ = run(capsys, "pi", graph_file(gc.make_cycle(5)), "--t", "2", "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"]["value"] == 9
    assert rep["exhaustive"] is True
    assert rep["budget"] == 10 ** 7
    assert set(rep) >= {"command", "argv", "fingerprint", "timing"}


def test_pi_root_by_label(capsys, graph_file):
    path = graph_file(gc.make_triangular_chain(2))
    code, out, _ = run(capsys, "pi", path, "--root", "cut", "--json")
    assert code == 0
    assert json.loads(out)["results"]["root"] == 2
    assert run(capsys, "pi", path, "--root", "hub")[0] == 2
    assert run(capsys, "pi", path, "--root", "9")[0] == 2


def test_pi_budget_exhaustion_prints_bounds(capsys, graph_file):
    code, out, _ = run(capsys, "pi", graph_file(gc.make_friendship(4, 4)), "--budget", "200")
    assert code == 3
    assert "budget exhausted" in out and "[" in out


def test_pi_reads_stdin(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(gc.export_graph(gc.make_cycle(6)).decode()))
    code, out, _ = run(capsys, "pi", "-")
    assert code == 0 and out.startswith("pi_1 = 8")


def test_pi_rejects_malformed_graph(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"order": 2, "edges": [[0, 0]]}')
    code, _, err = run(capsys, "pi", str(p))
    assert code == 2 and "self-loop" in err


@pytest.mark.parametrize("g, cap, expected", [
    (gc.make_friendship(2, 4), "2", 4), (gc.make_friendship(4, 4), "2", 6), (gc.make_cycle(4), None, 3),
])
def test_opt(capsys, graph_file, g, cap, expected):
    argv = ["opt", graph_file(g), "--json"] + (["--cap", cap] if cap else [])
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert json.loads(out)["results"]["value"] == expected


def test_reports_are_deterministic(capsys, graph_file):
    path = graph_file(gc.make_cycle(7))
    reps = []
    for _ in range(2):
        rep = json.loads(run(capsys, "pi", path, "--json")[1])
        rep.pop("timing")
        reps.append(json.dumps(rep, sort_keys=True))
    assert reps[0] == reps[1]


def test_export_import_round_trip_keeps_pi(capsys, tmp_path):
    out = tmp_path / "f.json"
    run(capsys, "family", "tchain", "2", "--pendant", "--out", str(out))
    via_cli = json.loads(run(capsys, "pi", str(out), "--json")[1])["results"]["value"]
    assert via_cli == 10


# --- certify ---------------------------------------------------------------------

@pytest.mark.parametrize("g, expected", [
    (gc.make_square_chain(2), 16), (gc.make_square_chain(3, "ortho"), 34),
])
def test_certify_default(capsys, graph_file, g, expected):
    code, out, _ = run(capsys, "certify", graph_file(g), "--family-default")
    assert code == 0
    cert = json.loads(out)
    assert (cert["upper"], cert["verdict"]) == (expected, "exact")


def test_certify_user_strategies(capsys, graph_file, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps([Strategy.from_path([0, 1, 2, 3]).to_json()]))
    path = graph_file(gc.make_path(4))
    code, out, _ = run(capsys, "certify", path, "--root", "0", "--strategies", str(good))
    assert code == 0 and json.loads(out)["upper"] == 8
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps([Strategy.from_path([0, 1, 2, 3], [4, 2, 2]).to_json()]))
    code, _, err = run(capsys, "certify", path, "--root", "0", "--strategies", str(bad))
    assert code == 2 and "w(2)" in err


def test_certify_needs_a_source(capsys, graph_file):
    assert run(capsys, "certify", graph_file(gc.make_path(3)))[0] == 2
    assert run(capsys, "certify", graph_file(gc.make_cycle(5)), "--family-default")[0] == 2


# --- reproduce -------------------------------------------------------------------

def test_reproduce_section_csv(capsys):
    code, out, err = run(capsys, "reproduce", "--section", "4", "--max-n", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert list(rows[0]) == ["section", "family", "params", "quantity", "formula",
                             "computed", "method", "agree"]
    assert all(r["agree"] == "yes" for r in rows)
    assert "budget:" in err


def test_reproduce_parallel_keeps_order(capsys, tmp_path):
    one = run(capsys, "reproduce", "--section", "3", "--max-n", "2")[1]
    target = tmp_path / "rows.csv"
    code, two, _ = run(capsys, "reproduce", "--section", "3", "--max-n", "2", "--jobs", "2",
                       "--out", str(target))
    assert code == 0 and one == two == target.read_text()


def test_reproduce_mismatch_exit_code(capsys, monkeypatch):
    real = rp._section4

    def broken(max_n):
        rows = real(max_n)
        spec = rows[0]
        rows[0] = rp.RowSpec(spec.section, spec.family, spec.params, spec.quantity,
                             rp.partial(rp._const, 15), spec.compute)
        return rows

    monkeypatch.setattr(rp, "_section4", broken)
    code, _, err = run(capsys, "reproduce", "--section", "4", "--max-n", "2")
    assert code == 4
    assert "MISMATCH: qnm n=3;m=3 pi: formula gives 15, exhaustive computation gives 14" in err


def test_reproduce_budget_exit_code(capsys):
    code, out, _ = run(capsys, "reproduce", "--section", "2", "--max-n", "2", "--budget", "5")
    assert code == 3
    assert "budget-exhausted" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pebbling", "family", "cycle", "4"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["order"] == 4


def test_reproduce_all_sections_agree(capsys):
    code, out, err = run(capsys, "reproduce", "--max-n", "3", "--jobs", "2")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0, err
    assert {r["section"] for r in rows} == {"2", "3", "4"}
    assert {r["method"] for r in rows} == {"exhaustive", "sandwich", "formula-level"}
