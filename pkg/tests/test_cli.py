import csv
import io
import json
import subprocess
import sys

import pytest

from k3gon.cli import main
from k3gon.scan import CSV_HEADER


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bn_divisors_table(capsys):
    code, out, _ = run(capsys, "bn-divisors", "23")
    assert code == 0
    assert out.splitlines() == ["(1,12) rho=-1", "(2,17) rho=-1", "(3,20) rho=-1"]


def test_bn_divisors_json(capsys):
    code, out, _ = run(capsys, "bn-divisors", "23", "--format", "json")
    assert code == 0
    assert json.loads(out) == [{"r": 1, "d": 12, "rho": -1}, {"r": 2, "d": 17, "rho": -1},
                               {"r": 3, "d": 20, "rho": -1}]


def test_qform_parity(capsys):
    code, out, _ = run(capsys, "qform", "18", "23", "3")
    assert code == 0
    assert out.strip() == "No(parity), Δ=148, square=false"


def test_qform_zero_target(capsys):
    code, out, _ = run(capsys, "qform", "16", "31", "3", "--target", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "yes" and data["disc_square"] is True


def test_check_report(capsys):
    code, out, _ = run(capsys, "check", "18", "23", "3", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["rho"] == -9
    assert data["expected_gonality"] == 13
    assert data["alpha"] == 14 and data["minimizers"] == "(1 0)"
    assert data["h1_vanishes"] is True and data["thm1_ok"] is True
    assert data["derived_pairs"] == "(18,23)->13;(19,24)->13;(19,25)->14;(20,26)->14"
    assert data["lattice_certified"] is True


def test_check_unguaranteed_alpha(capsys):
    code, out, _ = run(capsys, "check", "16", "31", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["alpha"] is None and data["alpha_unguaranteed"] == 12


def test_alpha_require_hypotheses_exit_2(capsys):
    code, _, err = run(capsys, "alpha", "16", "31", "3", "--require-hypotheses")
    assert code == 2 and "zero-represented" in err


def test_alpha_table(capsys):
    code, out, _ = run(capsys, "alpha", "16", "29", "3")
    assert code == 0
    assert "alpha: 12" in out and "minimizers: (1 0)" in out


def test_invalid_params_exit_2(capsys):
    code, _, err = run(capsys, "check", "0", "5", "3")
    assert code == 2 and err


def test_invariant_violation_exit_3(capsys, monkeypatch):
    import k3gon.verifier as verifier
    monkeypatch.setattr(verifier, "expected_minimizers", lambda p: [])
    code, _, err = run(capsys, "alpha", "18", "23", "3")
    assert code == 3 and "invariant" in err


def test_descending_range_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--d", "20..14", "--g", "15..20"])
    assert exc.value.code == 2


def test_scan_thm1_filter(capsys):
    code, out, _ = run(capsys, "scan", "--d", "14..20", "--g", "15..35", "--filter", "thm1",
                       "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    pairs = {(int(r["d"]), int(r["g"])) for r in rows}
    assert {(16, 29), (18, 23)} <= pairs
    assert all(r["thm1_ok"] == "true" for r in rows)


def test_scan_empty_result_keeps_header(capsys):
    code, out, _ = run(capsys, "scan", "--d", "5..6", "--g", "2..3", "--filter", "thm1",
                       "--format", "csv")
    assert code == 0
    assert out == ",".join(CSV_HEADER) + "\n"


def test_scan_writes_file_atomically(tmp_path, capsys):
    target = tmp_path / "rows.json"
    target.write_text("stale")
    code, out, _ = run(capsys, "scan", "--d", "16..18", "--g", "23..29", "--format", "json",
                       "--out", str(target))
    assert code == 0 and out == ""
    data = json.loads(target.read_text())
    assert len(data) == 3 * 7
    assert [p.name for p in tmp_path.iterdir()] == ["rows.json"]


@pytest.mark.parametrize("fmt", ["csv", "json", "table"])
def test_scan_is_deterministic_across_jobs(capsys, fmt):
    argv = ["scan", "--d", "14..22", "--g", "15..30", "--r", "3..4", "--format", fmt]
    _, serial, _ = run(capsys, *argv)
    _, parallel, _ = run(capsys, *argv, "--jobs", "2")
    assert serial == parallel


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "k3gon", "bn-divisors", "3"],
                          capture_output=True, text=True, check=True)
    assert proc.stdout == "(1,2) rho=-1\n"
