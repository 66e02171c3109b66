"""Exit codes, output formats, and error reporting of the command line."""

import json
import subprocess
import sys

import pytest

from masseytc.cli import main
from masseytc.report import PAYLOAD_KEYS

S2_FILE_SRC = """\
algebra s2 {
  truncate 4
  space-dim 2
  simply-connected true
  generator a degree 2
  generator x degree 3
  d x = a*a
}
"""

BROKEN_D2_SRC = """\
algebra broken {
  field Q
  truncate 4
  generator x degree 1
  generator y degree 2
  d x = y
  d y = x*y
}
"""


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cohomology_text(capsys):
    code, out, err = run(capsys, "cohomology", "spheres8")
    assert code == 0 and err == ""
    assert "H^* dimensions: 1 0 0 2 0 0 0 0 2" in out
    assert "named classes: a (degree 3), b (degree 3)" in out


def test_cohomology_json_payload_shape(capsys):
    code, out, _ = run(capsys, "cohomology", "spheres8", "--json")
    assert code == 0
    payload = json.loads(out)
    assert set(payload.keys()) == set(PAYLOAD_KEYS)
    for key in ("massey", "zcl", "weights", "ledger"):
        assert payload[key] is None
    assert payload["cohomology"]["dims"] == [1, 0, 0, 2, 0, 0, 0, 0, 2]


def test_massey_defined_nonzero(capsys):
    code, out, _ = run(capsys, "massey", "spheres8", "a", "a", "b")
    assert code == 0
    assert "<a, a, b>: defined and nonzero in degree 8" in out


def test_massey_contains_zero_still_succeeds(capsys):
    code, out, _ = run(capsys, "massey", "even7", "alpha", "alpha", "alpha")
    assert code == 0
    assert "defined, contains zero" in out


def test_massey_undefined_is_a_computation_failure(capsys):
    code, out, _ = run(capsys, "massey", "even7", "u", "u", "u")
    assert code == 1
    assert "not defined (target degree 14 exceeds truncation 8)" in out


def test_massey_undefined_json_carries_obstruction(capsys):
    code, out, _ = run(capsys, "massey", "even7", "u", "u", "u", "--json")
    assert code == 1
    entry = json.loads(out)["massey"][0]
    assert entry["defined"] is False
    assert entry["value"] is None


def test_massey_unknown_class_name(capsys):
    code, out, err = run(capsys, "massey", "even7", "nope", "u", "u")
    assert code == 2 and out == ""
    assert "unknown class name 'nope'" in err


def test_unknown_model(capsys):
    code, _, err = run(capsys, "cohomology", "definitely-not-a-model")
    assert code == 2
    assert "neither a built-in model" in err


def test_validate_good_model(capsys):
    code, out, _ = run(capsys, "validate", "borromean")
    assert code == 0
    assert "all axioms hold" in out


def test_validate_broken_differential(capsys, tmp_path):
    path = tmp_path / "broken.dga"
    path.write_text(BROKEN_D2_SRC)
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 2
    assert "d-squared" in out


def test_validate_broken_json(capsys, tmp_path):
    path = tmp_path / "broken.dga"
    path.write_text(BROKEN_D2_SRC)
    code, out, _ = run(capsys, "validate", str(path), "--json")
    assert code == 2
    payload = json.loads(out)
    assert payload["valid"] is False
    assert any(v["axiom"] == "d-squared" for v in payload["violations"])


def test_compiling_a_broken_model_fails_validation(capsys, tmp_path):
    path = tmp_path / "broken.dga"
    path.write_text(BROKEN_D2_SRC)
    code, out, err = run(capsys, "cohomology", str(path))
    assert code == 2 and out == ""
    assert "d^2" in err


def test_parse_error_reports_position(capsys, tmp_path):
    path = tmp_path / "bad.dga"
    path.write_text("algebra bad {\n  truncate 3\n  generator x degree one\n}\n")
    code, out, err = run(capsys, "validate", str(path))
    assert code == 2 and out == ""
    assert "line 3, col" in err
    assert str(path) in err


def test_zcl_command(capsys):
    code, out, _ = run(capsys, "zcl", "spheres8")
    assert code == 0
    assert "zero-divisors cup length 2" in out


def test_bounds_on_a_file_model(capsys, tmp_path):
    path = tmp_path / "s2.dga"
    path.write_text(S2_FILE_SRC)
    code, out, _ = run(capsys, "bounds", str(path))
    assert code == 0
    assert "cat lower 2, cat upper 2" in out
    assert "TC lower 3, TC upper 3" in out


def test_bounds_json_is_byte_identical_across_runs(capsys):
    _, first, _ = run(capsys, "bounds", "spheres8", "--json")
    _, second, _ = run(capsys, "bounds", "spheres8", "--json")
    assert first == second
    ledger = json.loads(first)["ledger"]
    assert ledger["cat"] == [3, 3] and ledger["tc"] == [5, 5]


def test_bounds_massey_cap_flag(capsys):
    code, out, _ = run(capsys, "bounds", "spheres8", "--max-massey-degree", "2",
                       "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ledger"]["massey_cap"] == 2
    assert payload["massey"] == []  # no triples fit below total degree 2


def test_quiet_suppresses_output(capsys):
    code, out, err = run(capsys, "massey", "spheres8", "a", "a", "b", "--quiet")
    assert code == 0 and out == "" and err == ""
    code, out, err = run(capsys, "massey", "even7", "u", "u", "u", "--quiet")
    assert code == 1 and out == ""


def test_argparse_rejects_wrong_arity():
    with pytest.raises(SystemExit) as exc:
        main(["massey", "spheres8", "a", "b"])
    assert exc.value.code == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "masseytc.cli", "validate", "even7"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "all axioms hold" in proc.stdout
