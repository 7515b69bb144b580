import json

import pytest

import derivk.bimodules as bm
from derivk import io
from derivk.chains import ChainComplex
from derivk.cli import main
from derivk.linalg import QQ, F32003, Matrix
from derivk.posets import empty_poset, square
from derivk.reps import Representation, random_rep, same_tables
from derivk.stable import barratt_puppe
from derivk.reps import random_morphism

FIXTURES = ["I_A1", "D_A2", "D_A3", "D_span", "T_Q_A3", "T_A3_Q", "P0", "P1", "cone", "cof", "fib",
            "cofseq_constructor"]


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_match_transcribed_tables(name):
    m = io.load_fixture(name)
    assert m.body.validate() == []
    assert bm.table_mismatches(m, bm.paper_table(name)) == []


def test_fixture_roundtrip_is_byte_stable():
    text = (io.FIXTURE_DIR / "T_Q_A3.json").read_text()
    assert io.canonicalize(text) == text
    assert io.canonicalize(io.canonicalize(text)) == text


def test_rational_workspace_roundtrip():
    ws = io.Workspace(QQ, 3)
    ws.add("x", random_rep(square(), seed=2, field=QQ))
    ws.add("half", ChainComplex(QQ, {0: 1, 1: 1}, {1: Matrix.from_rows(QQ, [["1/2"]])}))
    text = io.dumps(ws)
    assert '"1/2"' in text
    back = io.loads(text)
    assert back.field == QQ and back.seed == 3
    assert same_tables(back["x"], ws["x"]) and io.dumps(back) == text


def test_empty_representation_file():
    ws = io.Workspace(F32003)
    ws.add("e", Representation(empty_poset(), {}, {}, field=F32003))
    back = io.loads(io.dumps(ws))
    assert len(back["e"].shape) == 0


def corrupted_complex():
    ws = io.Workspace(F32003)
    ws.add("c", ChainComplex.sphere(F32003, 0))
    doc = json.loads(io.dumps(ws))
    doc["entries"]["c"] = {"kind": "complex", "degrees": [{"n": 0, "dim": 1}, {"n": 1, "dim": 1}, {"n": 2, "dim": 1}],
                           "diffs": [{"n": 1, "matrix": [[1]]}, {"n": 2, "matrix": [[1]]}]}
    return json.dumps(doc)


def test_malformed_differential_is_rejected():
    with pytest.raises(io.SchemaError, match=r"entries\.c: malformed differential: d_1 d_2 != 0"):
        io.loads(corrupted_complex())


def test_schema_and_parse_diagnostics():
    with pytest.raises(io.SchemaError, match="line 1, column"):
        io.loads("{nope")
    with pytest.raises(io.SchemaError, match="entries.p"):
        io.loads(json.dumps({"derivk": 1, "field": "Q", "entries": {"p": {"kind": "poset", "elements": [1]}}}))
    with pytest.raises(io.SchemaError, match="duplicate"):
        ws = io.Workspace()
        ws.add("a", square())
        ws.add("a", square())


def test_dot_export():
    dot = io.export_dot(square())
    assert dot.count("->") == 4 and dot.count("label=") == 4
    assert io.export_dot(square()) == dot
    w = barratt_puppe(random_morphism(F32003, 1), 2)
    wd = io.export_dot(w)
    assert "pos=" in wd and "H" in wd
    assert wd.count("->") == len(w.shape.covers)


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_verify_tilting(capsys):
    code, out = run(capsys, "verify-tilting", "T_Q_A3", "T_A3_Q", "--samples", "2")
    assert code == 0 and "PASS" in out


def test_cli_sign_check(capsys):
    code, out = run(capsys, "sign-check", "--seed", "5")
    assert code == 0 and "ratio: −identity" in out


def test_cli_usage_errors(capsys):
    assert main(["frobnicate"]) == 2
    assert main(["tensor", "nope"]) == 2
    capsys.readouterr()


def test_cli_reports_are_deterministic(capsys):
    first = run(capsys, "bp", "--seed", "3", "--format", "json")
    second = run(capsys, "bp", "--seed", "3", "--format", "json")
    assert first == second and first[0] == 0
    json.loads(first[1])


@pytest.mark.parametrize("argv", [
    ["kan"], ["check-square"], ["check-square", "--kind", "rkan"], ["check-cube"], ["octa"], ["triangle"], ["mv"],
    ["reflect", "--orientation", "<>", "--vertex", "2"], ["coxeter", "--orientation", "<>"],
    ["serre", "--orientation", "><"], ["nakayama"], ["tensor", "cof"], ["coend", "I_A3"], ["demo"],
    ["bp", "--field", "Q"],
])
def test_cli_subcommands_pass(capsys, argv):
    code, _ = run(capsys, *argv)
    assert code == 0


def test_cli_reads_workspaces(tmp_path, capsys):
    path = tmp_path / "ws.json"
    ws = io.Workspace()
    ws.add("x", random_rep(square(), seed=1))
    io.save(ws, path)
    code, out = run(capsys, "check-square", "--input", str(path), "--name", "x", "--format", "json")
    assert code in (0, 1) and json.loads(out)
