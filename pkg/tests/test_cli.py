from __future__ import annotations

import csv
import io
import json

import pytest

from ringsums.cli import RAMANUJAN_COLUMNS, main

Z12 = '{"kind": "zmod", "n": 12}'
M2 = '{"kind": "matrix", "base": {"kind": "zmod", "n": 2}, "d": 2}'


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


@pytest.mark.parametrize(
    "spec, first",
    [(Z12, "|R|=12, units=4"), (M2, "|R|=16, units=6"), ('{"kind": "zmod", "n": 1}', "|R|=1, units=1")],
)
def test_ring_describe(capsys, spec, first):
    code, out, _ = run(capsys, "ring", spec)
    assert code == 0 and out.splitlines()[0] == first
    assert "axiom check: exhaustive" in out


def test_ring_from_file(capsys, tmp_path):
    p = tmp_path / "r.json"
    p.write_text(json.dumps({"ring": {"kind": "zmod", "n": 9}, "side": "left"}))
    code, out, _ = run(capsys, "ring", str(p))
    assert code == 0 and out.startswith("|R|=9, units=6")


@pytest.mark.parametrize("spec, side, count", [(Z12, "left", 6), (M2, "left", 5), (M2, "twosided", 2)])
def test_ideals(capsys, spec, side, count):
    code, out, _ = run(capsys, "ideals", spec, "--side", side)
    doc = json.loads(out)
    assert code == 0 and doc["count"] == count and len(doc["ideals"]) == count


def test_ramanujan_closed_z12(capsys):
    code, out, _ = run(capsys, "ramanujan", Z12, "--x", "1", "--all", "--method", "closed")
    table = rows(out)
    assert code == 0 and list(table[0]) == list(RAMANUJAN_COLUMNS)
    assert [int(r["value"]) for r in table] == [4, 0, 2, 0, -2, 0, -4, 0, -2, 0, 2, 0]


def test_ramanujan_m2z2(capsys):
    one = "1,0,0,1"
    code, out, _ = run(capsys, "ramanujan", M2, "--x", one, "--all", "--method", "theorem")
    theorem = rows(out)
    assert code == 0 and len(theorem) == 16
    _, out, _ = run(capsys, "ramanujan", M2, "--x", one, "--all", "--method", "brute")
    assert [r["value"] for r in rows(out)] == [r["value"] for r in theorem]
    _, out, _ = run(capsys, "ramanujan", M2, "--x", one, "--all", "--method", "closed")
    closed = rows(out)
    assert {r["status"] for r in closed} == {"premise_not_met"}
    assert {r["minimal_premise"] for r in closed} == {"false"}


def test_ramanujan_alpha_zero_and_json(capsys):
    code, out, _ = run(capsys, "ramanujan", M2, "--x", "9", "--alpha", "0", "--format", "json")
    (row,) = json.loads(out)
    assert code == 0 and row["value"] == "6" and row["branch"] == "FULL"


def test_spectrum_outputs(capsys, tmp_path):
    code, out, _ = run(capsys, "spectrum", '{"kind": "zmod", "n": 4}', "--out-dir", str(tmp_path))
    assert code == 0
    assert (tmp_path / "spectrum.csv").read_text() == (
        "eigenvalue_repr,multiplicity,is_integer\n2,1,True\n0,2,True\n-2,1,True\n"
    )
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["checks"]["formula_agrees"] is True


def test_spectrum_flagship_three_way(capsys, tmp_path):
    code, out, _ = run(capsys, "spectrum", M2, "--check", "numeric", "--out-dir", str(tmp_path))
    assert code == 0
    assert "{6^1, 2^6, -2^9}" in out
    doc = json.loads((tmp_path / "spectrum.json").read_text())
    assert doc["checks"]["numeric_agrees"] and doc["checks"]["formula_agrees"]


def test_spectrum_bracket_and_set(capsys, tmp_path):
    code, out, _ = run(capsys, "spectrum", '{"kind": "zmod", "n": 5}', "--connection", "bracket:1", "--out-dir", str(tmp_path))
    assert code == 0 and "{4^1, -1^4}" in out
    s = tmp_path / "s.json"
    s.write_text("[1, 4]")
    code, out, _ = run(capsys, "spectrum", '{"kind": "zmod", "n": 5}', "--connection", f"set:{s}", "--out-dir", str(tmp_path))
    assert code == 0 and "w=w5" in out
    s.write_text("[0, 1, 4]")
    code, _, err = run(capsys, "spectrum", '{"kind": "zmod", "n": 5}', "--connection", f"set:{s}", "--out-dir", str(tmp_path))
    assert code == 2 and "LoopsForbidden" in err


def test_outputs_are_deterministic(capsys, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        run(capsys, "spectrum", M2, "--check", "numeric", "--out-dir", str(d))
        outs.append(((d / "spectrum.csv").read_bytes(), (d / "spectrum.json").read_bytes()))
        outs.append(run(capsys, "verify", "--suite", "crt")[1])
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_verify_crt_single_ring(capsys, tmp_path):
    p = tmp_path / "m2.json"
    p.write_text(M2)
    code, out, err = run(capsys, "verify", "--suite", "crt", "--corpus", str(p))
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    left = next(c for c in doc["checks"] if c["side"] == "left")
    assert left["data"]["counterexamples"] == [
        {"J_size": 16, "family_sizes": [4, 4, 4], "lhs": 16, "rhs": 64, "minimal": False}
    ]
    assert "passed" in err


def test_verify_lemmas_on_zero_ring(capsys, tmp_path):
    p = tmp_path / "z1.json"
    p.write_text('{"kind": "zmod", "n": 1}')
    code, out, _ = run(capsys, "verify", "--suite", "lemmas", "--corpus", str(p))
    doc = json.loads(out)
    assert code == 0 and doc["counts"]["fail"] == 0 and doc["counts"]["pass"] > 0


def test_verify_classical(capsys, tmp_path):
    out_file = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "--suite", "classical", "--out", str(out_file), "--timing")
    doc = json.loads(out_file.read_text())
    assert code == 0 and doc["counts"]["pass"] == 60 and "elapsed_seconds" in doc


def test_config_flag(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"limits": {"size_limit": 10}}')
    code, _, err = run(capsys, "ring", M2, "--config", str(cfg))
    assert code == 2 and "SizeLimitExceeded" in err


def test_bad_inputs(capsys):
    code, _, err = run(capsys, "ring", '{"kind": "zmod", "n": 3, "oops": 1}')
    assert code == 2 and "SpecError" in err
    code, _, err = run(capsys, "ramanujan", Z12, "--x", "1,2", "--alpha", "0")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["ramanujan", Z12, "--x", "1"])
