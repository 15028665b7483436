"""Command-line surface: output formats, exit codes, determinism."""

import json

import numpy as np
import pytest

import ternalg as ta
from ternalg.cli import main


@pytest.fixture
def eps_file(tmp_path):
    path = tmp_path / "eps.json"
    ta.write_hypermatrix(path, ta.levi_civita())
    return str(path)


@pytest.fixture
def e4_file(tmp_path):
    path = tmp_path / "e4.json"
    ta.write_hypermatrix(path, ta.basis()[3])
    return str(path)


def test_info_no_file(capsys):
    assert main(["info"]) == 0
    out = capsys.readouterr().out
    assert "kernel backend" in out


def test_info_file(eps_file, capsys):
    assert main(["info", eps_file]) == 0
    out = capsys.readouterr().out
    assert "classification: skew" in out
    assert "linear invariant I: 6+0j" in out


def test_invariants_of_levi_civita(eps_file, capsys):
    assert main(["invariants", eps_file]) == 0
    out = capsys.readouterr().out
    lines = dict(line.split(None, 1) for line in out.strip().splitlines())
    assert lines["I"] == "6+0j"
    assert lines["I2"] == "-6+0j"
    assert len(lines) == 23


def test_invariants_json(eps_file, capsys):
    assert main(["invariants", eps_file, "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["I"] == [6.0, 0.0]
    assert doc["I2"] == [-6.0, 0.0]


def test_invariants_missing_file(tmp_path, capsys):
    assert main(["invariants", str(tmp_path / "nope.json")]) == 2
    assert "error" in capsys.readouterr().err


def test_invariants_malformed_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 3, "entries": [[1, 0]]}')
    assert main(["invariants", str(bad)]) == 2
    assert "expected 27 entries" in capsys.readouterr().err


def test_decompose_writes_parts_and_report(tmp_path, capsys):
    src = tmp_path / "t.json"
    ta.write_hypermatrix(src, ta.random_hypermatrix(3, 5))
    out_dir = tmp_path / "parts"
    assert main(["decompose", str(src), "--out", str(out_dir)]) == 0
    stdout = capsys.readouterr().out
    assert "PASS" in stdout and "FAIL" not in stdout
    parts = [ta.read_hypermatrix(out_dir / f"t{w}.json") for w in range(4)]
    total = sum(parts)
    assert np.abs(total - ta.read_hypermatrix(src)).max() <= 1e-12
    assert (out_dir / "report.txt").exists()


def test_product_zero_inputs(tmp_path, capsys):
    zero = tmp_path / "zero.json"
    ta.write_hypermatrix(zero, ta.new_hypermatrix(3, [0] * 27))
    out = tmp_path / "prod.json"
    rc = main(["product", "--kind", "bullet", str(zero), str(zero), str(zero),
               "--out", str(out)])
    assert rc == 0
    assert ta.norm(ta.read_hypermatrix(out)) == 0.0


def test_product_stdout(tmp_path, capsys):
    eps = tmp_path / "eps.json"
    ta.write_hypermatrix(eps, ta.levi_civita())
    rc = main(["product", "--kind", "diamond", str(eps), str(eps), str(eps)])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["dim"] == 3
    assert len(doc["entries"]) == 27


def test_assoc_check_pass_lines(capsys):
    rc = main(["assoc-check", "--kind", "bullet", "--dim", "3",
               "--trials", "5", "--seed", "1"])
    assert rc == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 5
    assert all(line.startswith("CHECK") and line.endswith("PASS") for line in out)


def test_assoc_check_json(capsys):
    rc = main(["assoc-check", "--kind", "1", "--dim", "2", "--trials", "3",
               "--seed", "2", "--format", "json"])
    assert rc == 0
    records = json.loads(capsys.readouterr().out)
    assert len(records) == 3
    assert all(set(r) == {"check", "residual", "tol", "pass"} for r in records)
    assert all(r["pass"] for r in records)


def test_biunit_not_regular(e4_file, capsys):
    assert main(["biunit", e4_file]) == 2
    assert "not I2-regular" in capsys.readouterr().err


def test_biunit_nonmember(eps_file, capsys):
    assert main(["biunit", eps_file]) == 2
    assert "traceless q-cyclic" in capsys.readouterr().err


def test_biunit_success(tmp_path, capsys):
    src = tmp_path / "u.json"
    from ternalg import qcyclic
    ta.write_hypermatrix(src, qcyclic.random_member(3, regular=True))
    out = tmp_path / "uhat.json"
    assert main(["biunit", str(src), "--out", str(out)]) == 0
    stdout = capsys.readouterr().out
    assert stdout.count("PASS") == 10
    u_hat = ta.read_hypermatrix(out)
    t = ta.random_hypermatrix(3, 11)
    assert ta.biunit_residual(ta.ProductKind.P3_DIAMOND, u_hat, t, "right") \
        <= 1e-9 * ta.norm(t)


def test_enumerate_products_small(capsys):
    rc = main(["enumerate-products", "--dim", "2", "--trials", "5", "--seed", "0"])
    assert rc == 0
    out = capsys.readouterr().out
    for label in ("label=P1", "label=P2", "label=P3", "label=P4"):
        assert label in out
    assert "FLAGGED" in out


def test_enumerate_products_json(capsys):
    rc = main(["enumerate-products", "--dim", "2", "--trials", "5", "--seed", "0",
               "--format", "json"])
    assert rc == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["total_schemes"] == 558
    assert doc["named_patterns_exactly_P1_P4"] is True


def test_unknown_command():
    assert main(["frobnicate"]) == 2


def test_unknown_flag():
    assert main(["invariants", "x.json", "--bogus"]) == 2


def test_selftest_deterministic(capsys):
    assert main(["selftest", "--seed", "42"]) == 0
    first = capsys.readouterr().out
    assert main(["selftest", "--seed", "42"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert "SUMMARY 13/13 criteria passed" in first


def test_selftest_inject_tau_fault(capsys):
    assert main(["selftest", "--inject-fault", "tau-sign"]) == 1
    out = capsys.readouterr().out
    assert "SUMMARY 12/13" in out
    line = next(l for l in out.splitlines() if l.startswith("CRITERION 09"))
    assert line.endswith("FAIL")


def test_selftest_inject_middle_swap_fault(capsys):
    assert main(["selftest", "--inject-fault", "middle-swap"]) == 1
    out = capsys.readouterr().out
    line = next(l for l in out.splitlines() if l.startswith("CRITERION 01"))
    assert line.endswith("FAIL")


def test_selftest_json(capsys):
    assert main(["selftest", "--format", "json"]) == 0
    records = json.loads(capsys.readouterr().out)
    assert all(set(r) == {"check", "residual", "tol", "pass"} for r in records)
    assert all(r["pass"] for r in records)
    assert any(r["check"].startswith("13.") for r in records)
