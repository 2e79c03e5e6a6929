import json

from catsl2.cli import main

CW = '{"source":{"pattern":"","n":0},"terms":[{"coeff":"1","slices":[{"op":"bubble","orient":"cw","dots":0}]}]}'


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_form(capsys):
    code, out, _ = run(capsys, "form", "E(1)1_{1}", "E(1)1_{1}")
    assert code == 0 and out.strip() == "(1)/(-q^2 + 1)"
    code, out, _ = run(capsys, "form", "1_{0}", "1_{0}")
    assert code == 0 and out.strip() == "1"
    code, out, _ = run(capsys, "form", "--check", "E(2)F(1)1_{-3}", "E(2)F(1)1_{-3}")
    assert code == 0 and out.strip().endswith("match")
    code, out, _ = run(capsys, "--json", "form", "1_{0}", "1_{0}")
    assert json.loads(out)["text"] == "1"


def test_bad_input_exits_2(capsys):
    assert run(capsys, "form", "E(", "1_{0}")[0] == 2
    assert run(capsys, "schubert", "1123")[0] == 2
    assert run(capsys, "eval", "{not json")[0] == 2
    assert run(capsys, "eval", "/no/such/file.json")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--N", "3", "--suite", "nope")[0] == 2


def test_schubert_and_nh(capsys):
    code, out, _ = run(capsys, "schubert", "321")
    assert code == 0 and out.strip() == "x1^2 x2"
    code, out, _ = run(capsys, "nh-mul", "u1", "u1", "--a", "2")
    assert out.strip() == "0"
    code, out, _ = run(capsys, "nh-mul", "u1", "x1", "--a", "2")
    assert code == 0 and out.strip() == "1 + x2*u[21]"


def test_mult_canon_grdim(capsys):
    code, out, _ = run(capsys, "mult", "E(1)1_{0}", "F(1)1_{2}")
    assert code == 0 and "positive: true" in out
    assert out.splitlines()[0] == "(q + q^-1)*1_{2} + F(1)E(1)1_{2}"
    code, out, _ = run(capsys, "canon", "E(1)F(1)1_{2}")
    assert out.strip() == "(q + q^-1)*1_{2} + F(1)E(1)1_{2}"
    code, out, _ = run(capsys, "--json", "grdim", "1_{3}", "1_{3}")
    assert json.loads(out)["text"] == "1"


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--N", "4", "--suite", "nilhecke")
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(capsys, "verify", "--N", "3", "--nmin", "-3", "--nmax", "3", "--suite", "all")
    assert code == 0
    code, out, _ = run(capsys, "--json", "verify", "--N", "2", "--suite", "decomp")
    rep = json.loads(out)
    assert rep["ok"] and {r["n"] for r in rep["results"]} == {-2, 0, 2}


def test_eval_and_reduce(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce-closed", CW)
    assert code == 0 and out.strip() == "v1"
    f = tmp_path / "d.json"
    f.write_text(CW)
    code, out, _ = run(capsys, "--json", "reduce-closed", str(f), "--auto-N")
    assert code == 0 and json.loads(out)["text"] == "v1"
    d = '{"source":{"pattern":"EE","n":0},"terms":[{"coeff":"1","slices":[{"op":"cross","strand":1}]}]}'
    code, out, _ = run(capsys, "eval", d, "--N", "4")
    assert code == 0 and "xi1 -> (-1)*1" in out
    code, out, _ = run(capsys, "eval", d, "--N", "3")
    assert code == 2


def test_hk(capsys):
    code, out, _ = run(capsys, "hk", "2", "4")
    assert code == 0 and "True" in out
