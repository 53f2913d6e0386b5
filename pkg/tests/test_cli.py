"""End-to-end CLI behavior: run, verify-suite, exit codes, report shape."""

import json

import pytest

from gradmult.cli import main
from gradmult.reports import canonical_json, run_script, strip_volatile
from gradmult.script import parse_script

CLEAN = """\
ring S vars [x, y] field qq relations [];
ideal I = [x, y^2];
cmd degseq I;
cmd transfer I kind=colength;
"""

COUNTER = """\
ring S vars [X, Y] field qq relations [X*Y, X^2];
elem u = X + Y^2;
ideal U = [u];
cmd samuel u mode=both;
cmd transfer U kind=colength;
"""

EXHAUSTED = """\
ring S vars [x, y] field qq relations [];
ideal I = [x, y^2];
cmd fc_seq I I retries=0;
"""

USAGE = """\
ring S vars [x, y] field qq relations [];
cmd bogus x;
"""


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_run_clean_script(tmp_path, capsys):
    rc = main(["run", _write(tmp_path, "clean.gm", CLEAN)])
    out = capsys.readouterr().out
    assert rc == 0
    doc = json.loads(out)
    assert doc["schema"] == 1
    assert doc["script"] == "clean.gm"
    assert doc["ring"]["vars"] == ["x", "y"]
    assert doc["summary"]["commands"] == 2
    assert doc["summary"]["ok"] == 2
    assert doc["summary"]["agreements_checked"] == 2
    assert doc["summary"]["agreements_passed"] == 2
    assert doc["summary"]["exit_code"] == 0
    degseq = doc["reports"][0]
    assert degseq["status"] == "ok"
    assert degseq["values"]["degree_sequence"] == [1, 2]
    assert degseq["agree"] is True
    assert "wall_time_ms" in degseq


def test_run_canonical_and_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "clean.gm", CLEAN)
    main(["run", path])
    first = capsys.readouterr().out
    main(["run", path])
    second = capsys.readouterr().out
    assert first.endswith("\n")
    # canonical form: reserializing with sorted keys reproduces the bytes
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"
    a = strip_volatile(json.loads(first))
    b = strip_volatile(json.loads(second))
    assert canonical_json(a) == canonical_json(b)


def test_run_json_output_file(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    rc = main(["run", _write(tmp_path, "clean.gm", CLEAN), "--json", str(out_file)])
    stdout = capsys.readouterr().out
    assert rc == 0
    assert out_file.read_text() == stdout


def test_run_field_and_seed_options(tmp_path, capsys):
    path = _write(tmp_path, "clean.gm", CLEAN)
    rc = main(["run", path, "--field", "fp:32003", "--seed", "7"])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert doc["field"] == "fp(32003)"
    assert doc["seed"] == 7


def test_exit_code_hypothesis_refuted(tmp_path, capsys):
    rc = main(["run", _write(tmp_path, "counter.gm", COUNTER)])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 2
    samuel = doc["reports"][0]
    assert samuel["values"]["fastpath"] == "HYPOTHESIS-FAIL"
    assert samuel["values"]["oracle"] == 2
    assert samuel["agree"] is False
    transfer = doc["reports"][1]
    assert transfer["values"]["lhs"] == 3
    assert transfer["values"]["rhs"] == "INFINITE"
    assert transfer["agree"] is False


def test_exit_code_inconclusive(tmp_path, capsys):
    rc = main(["run", _write(tmp_path, "exhausted.gm", EXHAUSTED)])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 3
    assert doc["reports"][0]["error"]["code"] == "SEARCH-EXHAUSTED"


def test_exit_code_usage_error(tmp_path, capsys):
    rc = main(["run", _write(tmp_path, "usage.gm", USAGE)])
    doc = json.loads(capsys.readouterr().out)
    assert rc == 1
    assert doc["reports"][0]["error"]["code"] == "USAGE-ERROR"


def test_exit_code_priority(tmp_path, capsys):
    # usage beats hypothesis, hypothesis beats inconclusive
    both = COUNTER + "cmd bogus u;\n"
    assert main(["run", _write(tmp_path, "p1.gm", both)]) == 1
    capsys.readouterr()
    mixed = COUNTER + "ideal K = [X];\n"
    mixed = mixed.replace("cmd samuel", "cmd fc_seq U U retries=0;\ncmd samuel")
    assert main(["run", _write(tmp_path, "p2.gm", mixed)]) == 2
    capsys.readouterr()


def test_run_parse_failure(tmp_path, capsys):
    rc = main(["run", _write(tmp_path, "broken.gm", "ring S vars [] field qq relations [];")])
    err = capsys.readouterr().err
    assert rc == 1
    assert "distinct and nonempty" in err


def test_run_missing_file(tmp_path, capsys):
    rc = main(["run", str(tmp_path / "absent.gm")])
    assert rc == 1
    assert "cannot read" in capsys.readouterr().err


def test_run_bad_field_override(tmp_path, capsys):
    rc = main(["run", _write(tmp_path, "clean.gm", CLEAN), "--field", "gf:4"])
    assert rc == 1
    assert "unrecognized field" in capsys.readouterr().err


def test_verify_suite(capsys):
    rc = main(["verify-suite"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "5/5 fixtures passed" in out
    assert out.count("PASS") == 5


def test_api_round_trip_matches_cli(tmp_path, capsys):
    doc_api, rc_api = run_script(parse_script(CLEAN), name="clean.gm")
    rc_cli = main(["run", _write(tmp_path, "clean.gm", CLEAN)])
    doc_cli = json.loads(capsys.readouterr().out)
    assert rc_api == rc_cli == 0
    assert strip_volatile(doc_api) == strip_volatile(doc_cli)
