from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from intlattice import cli
from intlattice.lemma_engine import load_instance
from intlattice.linalg import Matrix
from intlattice.quadratic_forms import e8_gram


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = cli.run(argv)
    out = capsys.readouterr()
    return code, json.loads(out.out), out.err


@pytest.fixture
def invoke(monkeypatch, capsys):
    def _invoke(argv, stdin=""):
        return run(argv, stdin, monkeypatch, capsys)

    return _invoke


@pytest.fixture(scope="module")
def fixtures(tmp_path_factory):
    d = tmp_path_factory.mktemp("fixtures")
    cli.emit_fixtures(d)
    return d


TREE = {"vertices": [{"genus": "0"}, {"genus": "1"}, {"genus": "0"}], "edges": [["0", "1"], ["1", "2"]]}


def test_aut_order_on_e8_fixture(invoke, fixtures):
    code, out, _ = invoke(["qform", "aut-order", "--input", str(fixtures / "e8.json")])
    assert code == 0 and out == {"order": "696729600"}


def test_counterexample_subcommand(invoke):
    code, out, _ = invoke(["lemma", "counterexample", "--n", "4", "--k", "2"])
    assert code == 0 and out["quotient_order"] == "2"
    assert out["blocking"] == ["(iii) proportional-form"]
    assert load_instance(out["instance"]).n == 4


def test_betti_of_tree(invoke):
    code, out, _ = invoke(["graph", "betti"], json.dumps(TREE))
    assert code == 0 and out == {"betti": "0"}


def test_predicates_exit_one_when_false(invoke):
    loop = {"vertices": [{"genus": "0"}], "edges": [["0", "0"]]}
    code, out, _ = invoke(["graph", "compact-type"], json.dumps(loop))
    assert code == 1 and out == {"compact_type": False}
    code, out, _ = invoke(["graph", "compact-type"], json.dumps(TREE))
    assert code == 0 and out == {"compact_type": True}
    code, out, _ = invoke(["qform", "isometry"], json.dumps({"a": [[1, 0], [0, 1]], "b": [[2, 0], [0, 2]]}))
    assert code == 1 and out == {"isometric": False}
    code, out, _ = invoke(["polarization", "check"], json.dumps([[1, 2], [2, 1]]))
    assert code == 1 and out["polarization"] is False


def test_malformed_input_exits_two(invoke):
    code, out, err = invoke(["linalg", "hnf"], "{not json")
    assert code == 2 and out["error"] == "Malformed" and err
    code, out, _ = invoke(["linalg", "index"], json.dumps({"outer": [[1, 0], [0, 1]]}))
    assert code == 2 and "inner" in out["message"]
    code, out, _ = invoke(["lemma", "counterexample", "--n", "4", "--k", "3"])
    assert code == 2 and out["error"] == "BadParameters"


def test_unknown_subcommand_exits_two(capsys):
    assert cli.run(["nope"]) == 2
    assert capsys.readouterr().out == ""


def test_linalg_subcommands(invoke):
    m = [["2", "4"], ["0", "3"]]
    code, out, _ = invoke(["linalg", "hnf"], json.dumps(m))
    h, u = Matrix.from_json(out["h"]), Matrix.from_json(out["u"])
    assert code == 0 and Matrix([[2, 4], [0, 3]]) @ u == h
    code, out, _ = invoke(["linalg", "snf"], json.dumps([[2, 0], [0, 3]]))
    assert Matrix.from_json(out["d"]) == Matrix.diag([1, 6])
    code, out, _ = invoke(["linalg", "saturate"], json.dumps([[2], [0]]))
    assert out["is_saturated"] is False
    code, out, _ = invoke(["linalg", "index"], json.dumps({"outer": [[1, 0], [0, 1]], "inner": [[1], [0]]}))
    assert out == {"index": "infinite"}


def test_symplectic_subcommands(invoke):
    code, out, _ = invoke(["symplectic", "complete-isotropic"], json.dumps({"genus": 2, "sublattice": [[1], [0], [0], [0]]}))
    assert code == 0 and out["restricted_determinant"] in ("1", "-1")
    code, out, _ = invoke(["symplectic", "transvection"], json.dumps({"genus": 1, "delta": [1, 0], "vector": [0, 1]}))
    assert out["image"] == ["-1", "1"] and out["preserves_form"] is True
    code, out, _ = invoke(["symplectic", "invariants"], json.dumps({"genus": 1, "delta": [1, 0]}))
    assert out["invariants"]["basis"]["entries"] == [["1"], ["0"]]
    code, out, _ = invoke(["symplectic", "power-check"], json.dumps({"operator": [[-1, 0], [0, -1]], "powers": [2]}))
    assert code == 1 and out == {"stable": {"2": False}}


def test_qform_subcommands(invoke, fixtures):
    e8 = str(fixtures / "e8.json")
    code, out, _ = invoke(["qform", "decompose", "--input", e8])
    assert out["ranks"] == ["8"]
    code, out, _ = invoke(["qform", "short-vectors", "--bound", "2", "--input", e8])
    assert out["count"] == "120"
    code, out, _ = invoke(["qform", "rational-split", "--bound", "16", "--input", e8])
    assert code == 0 and out["found"] is True


def test_polarization_subcommands(invoke):
    code, out, _ = invoke(["polarization", "weyl-vs-hurwitz"])
    assert out["verdict"] == "contradiction" and out["hurwitz_bound"] == "588"
    code, out, _ = invoke(["polarization", "pullback"], json.dumps({"genus": 1, "beta": [[2]], "m": [[1, 0], [0, 2]]}))
    assert code == 0 and out["index_check"]["equal"] is True
    code, out, _ = invoke(["polarization", "pullback"], json.dumps({"genus": 1, "beta": [[2]], "m": [[2, 0], [0, 2]]}))
    assert code == 1 and out["status"] == "not-unimodular"
    code, out, _ = invoke(["polarization", "decompose"], json.dumps([[1, 0], [0, 1]]))
    assert out["ranks"] == ["1", "1"]


def test_graph_subcommands(invoke):
    g = {"graph": {"vertices": [{"genus": "0"}, {"genus": "0"}], "edges": [["0", "1"], ["0", "1"]]}}
    code, out, _ = invoke(["graph", "cycle-basis"], json.dumps(g))
    assert len(out["cycles"]) == 1
    code, out, _ = invoke(["graph", "extension-class"], json.dumps(dict(g, cycle=["1", "-1"])))
    assert out["classes"][0]["degrees"] == ["0", "0"]
    code, out, _ = invoke(["graph", "extension-class"], json.dumps(dict(g, cycle=["1", "0"])))
    assert code == 2 and out["error"] == "NotACycle"


def test_lemma_check_and_campaign(invoke, fixtures):
    for kind in ("four_degenerations", "unimodular_m", "preliminary_three", "marcucci_improved"):
        code, out, _ = invoke(["lemma", "check", "--kind", kind, "--instance", str(fixtures / f"lemma_{kind}.json")])
        assert code == 0 and out["sound"] and all(out["hypotheses"].values())
    code, out, _ = invoke(["lemma", "check", "--kind", "unimodular_m", "--instance", str(fixtures / "lemma_four_degenerations.json")])
    assert code == 2
    code, out, _ = invoke(["lemma", "campaign", "--kind", "preliminary_three", "--count", "4"])
    assert code == 0 and out["sound"] and out["seed"] == "0" and len(out["records"]) == 4
    code2, out2, _ = invoke(["lemma", "campaign", "--kind", "preliminary_three", "--count", "4"])
    assert out2 == out


def test_fixture_set(tmp_path, fixtures):
    other = tmp_path / "again"
    cli.emit_fixtures(other)
    names = sorted(p.name for p in fixtures.iterdir())
    assert names == sorted(p.name for p in other.iterdir())
    for name in names:
        assert (fixtures / name).read_bytes() == (other / name).read_bytes()
    assert {"e8.json", "marcucci_n4_k2.json", "marcucci_n6_k2.json", "marcucci_n6_k3.json", "marcucci_n9_k3.json"} <= set(names)
    assert {f"symplectic_g{g}.json" for g in range(1, 6)} <= set(names)
    e8 = json.loads((fixtures / "e8.json").read_text())
    assert Matrix.from_json(e8["gram"]) == e8_gram().gram and e8_gram().det() == 1
    for name in names:
        if name.startswith("lemma_") or name.startswith("marcucci_"):
            inst = load_instance(json.loads((fixtures / name).read_text()))
            from intlattice.lemma_engine import check_instance

            assert check_instance(inst).sound


def test_output_is_always_json(fixtures):
    """End-to-end through the console entry point."""
    proc = subprocess.run(
        [sys.executable, "-m", "intlattice", "graph", "betti"],
        input=json.dumps(TREE),
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"betti": "0"}
    proc = subprocess.run(
        [sys.executable, "-m", "intlattice", "linalg", "snf"], input="[", capture_output=True, text=True, check=False
    )
    assert proc.returncode == 2 and "error" in json.loads(proc.stdout) and proc.stderr
