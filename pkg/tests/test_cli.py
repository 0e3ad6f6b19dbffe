import json

import pytest

from eqsurg.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_lens_ok(capsys):
    code, out, _ = run(capsys, "lens", "--p", "2", "--q", "1", "--variant", "C")
    assert code == 0
    doc = json.loads(out)
    assert doc["word"] == "(a-b)^-1 | cst"
    assert doc["legal"] is True


def test_lens_inadmissible(capsys):
    code, _, err = run(capsys, "lens", "--p", "5", "--q", "2", "--variant", "C")
    assert code == 2
    assert "inadmissible" in err


def test_lens_admissible_q1(capsys):
    code, out, _ = run(capsys, "lens", "--p", "4", "--q", "1", "--variant", "C")
    assert code == 0
    assert json.loads(out)["matrix_ok"] is True


def test_census_small(capsys):
    code, out, _ = run(capsys, "census", "--max-p", "5")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["rows"] == 14
    assert doc["summary"]["matrix_ok"] == 14
    pairs = {(r["p"], r["q"]) for r in doc["rows"]}
    assert pairs == {(2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (5, 1), (5, 4)}


def test_census_usage_error(capsys):
    code, _, err = run(capsys, "census", "--max-p", "1")
    assert code == 64
    assert "usage error" in err


def test_census_byte_deterministic(capsys):
    _, out1, _ = run(capsys, "census", "--max-p", "10")
    _, out2, _ = run(capsys, "census", "--max-p", "10")
    assert out1 == out2


def test_catalog_s1xs2(capsys):
    code, out, _ = run(capsys, "catalog", "s1xs2")
    assert code == 0
    doc = json.loads(out)
    assert [e["name"] for e in doc["entries"]] == ["s1", "s2", "s3", "s4"]
    assert all(e["matrix_ok"] for e in doc["entries"])


def test_catalog_rp3(capsys):
    code, out, _ = run(capsys, "catalog", "rp3")
    assert code == 0
    assert json.loads(out)["entries"][0]["word"] == "(a-b)^-1 | cst"


def test_catalog_type_a(capsys):
    code, out, _ = run(capsys, "catalog", "typeA", "--p", "3", "--q", "1")
    assert code == 0
    doc = json.loads(out)
    assert doc["coefficients"] == [-3] and doc["count"] == 2


def test_catalog_type_a_needs_pq(capsys):
    code, _, err = run(capsys, "catalog", "typeA")
    assert code == 64


def test_verify_word_match(capsys):
    code, out, _ = run(
        capsys, "verify", "--word", "(a-b)^-1 | cst", "--expect", "[[-1,0],[2,1]]"
    )
    assert code == 0
    assert json.loads(out)["match"] is True


def test_verify_word_mismatch(capsys):
    code, out, _ = run(
        capsys, "verify", "--word", "a^1 | cst", "--expect", "[[-1,0],[2,1]]"
    )
    assert code == 1
    assert json.loads(out)["match"] is False


def test_verify_relations(capsys):
    code, out, _ = run(capsys, "verify", "--relations")
    assert code == 0
    assert json.loads(out)["all_ok"] is True


def test_verify_relations_respects_env(capsys, monkeypatch):
    monkeypatch.setenv("EQSURG_MAX_EXP", "3")
    code, out, _ = run(capsys, "verify", "--relations")
    assert code == 0
    doc = json.loads(out)
    assert not any("X_4" in r["relation"] for r in doc["relations"])
    assert any("X_3" in r["relation"] for r in doc["relations"])


def test_verify_malformed_word(capsys):
    code, _, err = run(capsys, "verify", "--word", "a^^2")
    assert code == 64


def test_factor_palindrome_cst(capsys):
    code, out, _ = run(capsys, "factor-palindrome", "--curves", "(a+b)^1")
    assert code == 0
    doc = json.loads(out)
    assert doc["output"] == "(a+b)^2"


def test_factor_palindrome_inadmissible(capsys):
    code, _, err = run(capsys, "factor-palindrome", "--curves", "a^1")
    assert code == 2


def test_no_command_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 64
