from __future__ import annotations

import json

import numpy as np
import pytest

from tauberian_lab import acceptance
from tauberian_lab.asymptotics import singular_part_from_json
from tauberian_lab.cli import main
from tauberian_lab.signal import read_function_csv


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def _error_payload(out):
    doc = json.loads(out.strip().splitlines()[-1])
    assert set(doc) == {"error"}
    assert set(doc["error"]) == {"type", "message"}
    return doc["error"]


# ----------------------------------------------------------------------
# transfer
# ----------------------------------------------------------------------

def test_transfer_linear_pole(tmp_path, capsys):
    src = tmp_path / "sp.json"
    src.write_text('{"a": 1.0}\n')
    code, out = _run(capsys, "transfer", str(src), "--out", str(tmp_path),
                     "--xmax", "10", "--dx", "0.01")
    assert code == 0
    assert "main term" in out
    doc = json.loads((tmp_path / "transfer_expansion.json").read_text())
    assert len(doc["expansion"]["terms"]) == 1
    back = singular_part_from_json(doc["singular_part"])
    assert back.linear_pole_a == 1.0

    f = read_function_csv(str(tmp_path / "transfer_main_term.csv"))
    assert f.grid_step == 0.01
    assert np.allclose(f.samples.real, f.x)  # the main term is x itself
    assert (tmp_path / "transfer_main_term.svg").exists()


def test_transfer_of_nothing(tmp_path, capsys):
    src = tmp_path / "sp.json"
    src.write_text("{}\n")
    code, out = _run(capsys, "transfer", str(src), "--out", str(tmp_path))
    assert code == 0
    assert "main term: 0" in out


def test_transfer_json_flag_round_trips(tmp_path, capsys):
    src = tmp_path / "sp.json"
    payload = {"simple_poles": [{"b": [0.0, -0.5], "t": 1.0},
                                {"b": [0.0, 0.5], "t": -1.0}],
               "a": 2.0}
    src.write_text(json.dumps(payload))
    code, out = _run(capsys, "transfer", str(src), "--out", str(tmp_path),
                     "--json")
    assert code == 0
    doc = json.loads(out)
    original = singular_part_from_json(payload)
    assert singular_part_from_json(doc["singular_part"]) == original


def test_transfer_reports_malformed_json(tmp_path, capsys):
    src = tmp_path / "broken.json"
    src.write_text('{"a": 1.0,\n  "oops"\n')
    code, out = _run(capsys, "transfer", str(src), "--out", str(tmp_path))
    assert code == 2
    err = _error_payload(out)
    assert err["type"] == "JSONDecodeError"
    assert "line " in err["message"]
    assert "column " in err["message"]


def test_transfer_rejects_unknown_keys(tmp_path, capsys):
    src = tmp_path / "sp.json"
    src.write_text('{"quadruple_poles": []}')
    code, out = _run(capsys, "transfer", str(src), "--out", str(tmp_path))
    assert code == 2
    err = _error_payload(out)
    assert err["type"] == "ValueError"
    assert "quadruple_poles" in err["message"]


# ----------------------------------------------------------------------
# classify
# ----------------------------------------------------------------------

def test_classify_unknown_fixture(tmp_path, capsys):
    code, out = _run(capsys, "classify", "nosuch", "--out", str(tmp_path))
    assert code == 2
    err = _error_payload(out)
    assert err["type"] == "KeyError"
    assert "nosuch" in err["message"]


def test_classify_insufficient_window_is_reported(tmp_path, capsys):
    code, out = _run(capsys, "classify", "l1_decay", "--out", str(tmp_path),
                     "--xmax", "500")
    assert code == 2
    err = _error_payload(out)
    assert err["type"] == "InsufficientWindowError"


def test_classify_writes_report_files(tmp_path, capsys):
    code, out = _run(capsys, "classify", "l1_decay", "--out", str(tmp_path),
                     "--dx", "0.05", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["classification"]["verdict"] == "Pseudofunction"
    assert (tmp_path / "classify_l1_decay.json").exists()
    assert (tmp_path / "classify_l1_decay_averages.csv").exists()
    assert (tmp_path / "classify_l1_decay.svg").exists()


def test_classify_outputs_are_deterministic(tmp_path, capsys):
    d1, d2 = tmp_path / "run1", tmp_path / "run2"
    for d in (d1, d2):
        code, _ = _run(capsys, "classify", "l1_decay", "--out", str(d),
                       "--dx", "0.05")
        assert code == 0
    for name in ("classify_l1_decay.json", "classify_l1_decay_averages.csv",
                 "classify_l1_decay.svg"):
        assert (d1 / name).read_bytes() == (d2 / name).read_bytes()


# ----------------------------------------------------------------------
# taubcheck, wi, audit, powerseries
# ----------------------------------------------------------------------

def test_taubcheck_runs_on_sine(tmp_path, capsys):
    code, out = _run(capsys, "taubcheck", "sine", "--out", str(tmp_path),
                     "--xmax", "200", "--dx", "0.01", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["slowly_decreasing"]["holds"]
    assert (tmp_path / "taubcheck_sine_modulus.csv").exists()
    assert (tmp_path / "taubcheck_sine.svg").exists()


def test_wi_zero_fixture(tmp_path, capsys):
    code, out = _run(capsys, "wi", "--fixture", "zero", "--out", str(tmp_path),
                     "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["deviation_verdict"] == "Pseudofunction"
    assert (tmp_path / "wi_zero.json").exists()


def test_wi_jumps_fixture_defaults(tmp_path, capsys):
    code, out = _run(capsys, "wi", "--fixture", "jumps", "--out",
                     str(tmp_path))
    assert code == 0
    assert "final deviation" in out
    doc = json.loads((tmp_path / "wi_jumps.json").read_text())
    assert doc["report"]["deviation_verdict"] == "PseudomeasureOnly"


def test_audit_damped_tone(tmp_path, capsys):
    code, out = _run(capsys, "audit", "damped_tone", "--out", str(tmp_path),
                     "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["hypothesis_II_ok"] is True
    assert doc["report"]["conclusion_holds"] is True
    rows = (tmp_path / "audit_damped_tone_points.csv").read_text().splitlines()
    assert len(rows) == 2  # header plus the default point at t = 1
    assert (tmp_path / "audit_damped_tone.svg").exists()


def test_powerseries_zero_sequence(tmp_path, capsys):
    code, out = _run(capsys, "powerseries", "--sequence", "zero", "--terms",
                     "128", "--out", str(tmp_path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["coefficient_verdict"] == "Pseudofunction"
    assert (tmp_path / "powerseries_zero_radial.csv").exists()


def test_powerseries_rotation_resonates(tmp_path, capsys):
    code, out = _run(capsys, "powerseries", "--sequence", "rotation",
                     "--terms", "4096", "--out", str(tmp_path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["coefficient_verdict"] == "PseudomeasureOnly"
    sums = doc["report"]["partial_sums"]
    assert any(not row[3] for row in sums)  # unbounded at the rotation angle


# ----------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------

def test_constants_json_document(tmp_path, capsys):
    code, out = _run(capsys, "constants", "--out", str(tmp_path), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["integrals"]["i4"] == 2.0 * doc["integrals"]["i2"]
    assert max(doc["error_bounds"]) < 1e-6
    assert (tmp_path / "constants.json").exists()
    assert (tmp_path / "constants.csv").exists()


def test_constants_rejects_unreachable_tolerance(tmp_path, capsys):
    code, out = _run(capsys, "constants", "--out", str(tmp_path),
                     "--tol", "1e-12")
    assert code == 2
    err = _error_payload(out)
    assert err["type"] == "ValueError"
    assert "certified error bounds" in err["message"]


# ----------------------------------------------------------------------
# suite
# ----------------------------------------------------------------------

def test_suite_single_criterion(tmp_path, capsys):
    code, out = _run(capsys, "suite", "--filter", "fejer", "--out",
                     str(tmp_path))
    assert code == 0
    assert "[PASS]" in out
    assert "1/1 criteria passed" in out
    doc = json.loads((tmp_path / "suite_results.json").read_text())
    assert doc["all_passed"] is True
    assert len(doc["criteria"]) == 1
    # deterministic output: no wall-clock fields in the file
    assert "elapsed_seconds" not in doc["criteria"][0]


def test_suite_unmatched_filter(tmp_path, capsys):
    code, out = _run(capsys, "suite", "--filter", "zzz", "--out",
                     str(tmp_path))
    assert code == 2
    err = _error_payload(out)
    assert err["type"] == "ValueError"


def test_suite_failure_sets_exit_code(tmp_path, capsys, monkeypatch):
    fake = acceptance.CriterionResult(
        number=99, slug="synthetic", title="synthetic failure",
        passed=False, detail="forced", elapsed_seconds=0.0,
        runtime_limit_seconds=None)
    monkeypatch.setattr(acceptance, "run_suite", lambda flt: [fake])
    code, out = _run(capsys, "suite", "--filter", "synthetic", "--out",
                     str(tmp_path))
    assert code == 1
    assert "[FAIL]" in out
    assert "0/1 criteria passed" in out
