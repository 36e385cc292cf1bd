import io
import json
import os
import subprocess
import sys

import pytest

from conftest import DATA
from pcid.cli import main


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_sat_and_unsat(capsys, write):
    code, out, _ = run(capsys, "solve", write("a.pcid", "{p <- q. q <- p.}"))
    assert code == 0 and out.splitlines() == ["SAT", "p=F q=F"]
    code, out, _ = run(capsys, "solve", write("b.pcid", "{p <- ~p.}"))
    assert code == 1 and out.strip() == "UNSAT"


def test_json_flag_before_or_after_subcommand(capsys, write):
    path = write("a.pcid", "{p <- q. q <- p.}")
    for argv in (["--json", "solve", path], ["solve", path, "--json"]):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        assert json.loads(out) == {"verdict": "SAT", "model": {"p": "F", "q": "F"}}


def test_wfmodel_with_trace(capsys, write):
    path = write("d.pcid", "{p <- o. q <- q & p.}")
    code, out, _ = run(capsys, "wfmodel", path, "--open", "o=T", "--trace")
    assert code == 0
    assert out.splitlines() == [
        "start o=T p=U q=U",
        "derive-true {p} -> o=T p=T q=U",
        "derive-false {q} -> o=T p=T q=F",
        "o=T p=T q=F",
    ]


def test_wfmodel_requires_every_open_atom(capsys, write):
    path = write("d.pcid", "{p <- o.}")
    code, _, err = run(capsys, "wfmodel", path)
    assert code == 2 and "missing o" in err
    code, _, err = run(capsys, "wfmodel", path, "--open", "o=T,z=F")
    assert code == 2 and "z" in err


def test_wfmodel_picks_a_definition_by_index(capsys, write):
    path = write("two.pcid", "{p <- o.} {q <- ~q.}")
    code, _, err = run(capsys, "wfmodel", path)
    assert code == 2 and "--def" in err
    code, out, _ = run(capsys, "wfmodel", path, "--def", "1")
    assert code == 0 and out.strip() == "q=U"


def test_totality_with_and_without_context(capsys, write):
    code, out, _ = run(capsys, "totality", write("t.pcid", "{q <- ~q & o.}"))
    assert code == 1 and out.splitlines() == ["NOT TOTAL", "witness: o=T"]
    code, out, _ = run(capsys, "totality", write("u.pcid", "~o. {q <- ~q & o.}"))
    assert code == 0 and out.strip() == "TOTAL"
    code, out, _ = run(capsys, "totality", write("v.pcid", "{p <- ~p.}"))
    assert out.splitlines()[1] == "witness: (empty)"


def test_prove_then_check(capsys, write, tmp_path):
    goal = write("g.seq", "o, {p <- o. q <- q & p.} |- p & ~q")
    proof = str(tmp_path / "g.lpidproof")
    code, out, _ = run(capsys, "prove", goal, "-o", proof)
    assert code == 0 and out.startswith("PROVED")
    code, out, _ = run(capsys, "check", proof)
    assert code == 0 and out.splitlines()[0] == "ACCEPTED"


def test_prove_verdicts_and_exit_codes(capsys, write):
    code, out, _ = run(capsys, "prove", write("c.seq", "{p <- true.} |- ~p"))
    assert code == 1 and out.splitlines() == ["COUNTER-MODEL", "p=T"]
    code, out, _ = run(capsys, "prove", write("s.seq", "|- {p <- ~p.}"))
    assert code == 4 and out.startswith("OUT OF SCOPE")
    code, out, _ = run(capsys, "--max-atoms", "1", "prove", write("r.seq", "p |- q"))
    assert code == 3 and out.startswith("RESOURCE LIMIT")


def test_check_golden_proof_and_rejection(capsys, write):
    code, out, _ = run(capsys, "check", os.path.join(DATA, "aproof.lpidproof"))
    assert code == 0 and "uses def-intro: no" in out
    bad = write("bad.lpidproof", "lpid-proof 1\nnode axiom-id\n  sequent: p |- q\n  formula: p\n")
    code, out, _ = run(capsys, "check", bad)
    assert code == 1 and out.startswith("REJECTED")


def test_check_reports_totality_of_introduced_definitions(capsys, write):
    goal = write("i.seq", "o |- {p <- o.} | ~p")
    code, out, _ = run(capsys, "--json", "prove", goal)
    doc = write("i.lpidproof", json.loads(out)["proof"])
    code, out, _ = run(capsys, "check", doc, "--verify-totality")
    assert code == 0
    assert "totality of { p <- o. }: total" in out


def test_parse_errors_and_missing_files(capsys, write):
    code, _, err = run(capsys, "solve", write("e.pcid", "p &"))
    assert code == 2 and err.startswith("parse error")
    code, _, err = run(capsys, "solve", "/nonexistent/file")
    assert code == 2 and "cannot read" in err
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_resource_limit_in_solve(capsys, write):
    code, _, err = run(capsys, "--max-atoms", "1", "solve", write("w.pcid", "p | q."))
    assert code == 3 and err.startswith("resource limit")


def test_stdin_input(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("{p <- ~p.} |-"))
    code, out, _ = run(capsys, "prove", "-", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "PROVED"


def test_module_entry_point(write):
    path = write("a.pcid", "{p <- q. q <- p.}")
    done = subprocess.run([sys.executable, "-m", "pcid", "solve", path], capture_output=True, text=True)
    assert done.returncode == 0 and done.stdout.splitlines() == ["SAT", "p=F q=F"]
