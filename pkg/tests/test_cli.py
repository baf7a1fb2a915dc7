"""End-to-end CLI behaviour: exit codes, JSON shape, determinism."""

import json
import os
import subprocess
import sys

import pytest

PHI_14 = [1, -1, 0, -1, 1, 0, 0, -1, 0, 0, 1, -1, 0, -1, 1]


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("SALEMFORGE_PRECISION", None)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([sys.executable, "-m", "salemforge.cli", *args],
                          capture_output=True, env=env)


def _assert_no_bare_floats(obj):
    if isinstance(obj, float):
        raise AssertionError(f"bare float in report: {obj!r}")
    if isinstance(obj, dict):
        for v in obj.values():
            _assert_no_bare_floats(v)
    elif isinstance(obj, list):
        for v in obj:
            _assert_no_bare_floats(v)


def test_coxeter_factor_19():
    res = run_cli("coxeter", "factor", "--n", "19")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["cyclotomic_part"] == [[2, 1], [5, 1]]
    assert [int(c) for c in report["salem_candidate"]] == PHI_14
    _assert_no_bare_floats(report)


def test_coxeter_oracle_match():
    res = run_cli("coxeter", "oracle", "--n", "12")
    assert res.returncode == 0
    assert json.loads(res.stdout)["match"] is True


def test_validation_error_exits_1():
    res = run_cli("coxeter", "factor", "--n", "5")
    assert res.returncode == 1
    assert json.loads(res.stdout)["kind"] == "validation"


def test_failed_certificate_exits_2():
    res = run_cli("mcmullen", "certificate", "--n", "20")
    assert res.returncode == 2
    report = json.loads(res.stdout)
    assert report["kind"] == "consistency"
    assert report["report"]["passed"] is False


def test_unknown_flag_exits_64_with_usage():
    res = run_cli("coxeter", "factor", "--n", "19", "--no-such-flag")
    assert res.returncode == 64
    assert b"Usage" in res.stderr


def test_byte_identical_reruns():
    a = run_cli("mcmullen", "data", "--n", "19")
    b = run_cli("mcmullen", "data", "--n", "19")
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout


def test_real_fields_are_strings_with_radius():
    res = run_cli("mcmullen", "data", "--n", "19")
    report = json.loads(res.stdout)
    _assert_no_bare_floats(report)
    assert isinstance(report["entropy"]["mid"], str)
    assert isinstance(report["entropy"]["radius"], str)
    assert isinstance(report["alpha"]["re"], str)
    assert isinstance(report["alpha"]["radius"], str)


def test_precision_env_var_overrides_default():
    res = run_cli("mcmullen", "data", "--n", "19",
                  env_extra={"SALEMFORGE_PRECISION": "128"})
    assert res.returncode == 0
    assert json.loads(res.stdout)["run_config"]["precision_bits"] == 128


def test_out_writes_file_and_keeps_stdout_quiet(tmp_path):
    target = tmp_path / "report.json"
    res = run_cli("coxeter", "poly", "--n", "14", "--out", str(target))
    assert res.returncode == 0
    assert res.stdout == b""
    assert json.loads(target.read_text())["degree"] == 14


def test_toric_check_shipped_fan():
    res = run_cli("toric", "check", "plane")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["smooth"] and report["complete"] and report["N"] == 3


def test_toric_check_bad_fan_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(
        {"dim": 2, "max_cones": [[[1, 0], [1, 2]], [[1, 2], [-1, 0]]]}))
    res = run_cli("toric", "check", str(bad))
    assert res.returncode == 2
    assert json.loads(res.stdout)["kind"] == "consistency"


@pytest.fixture(scope="module")
def seq_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "seq.json"
    res = run_cli("mau", "build", "--length", "2", "--precision", "512",
                  "--out", str(path))
    assert res.returncode == 0
    return path


def test_mau_build_then_audit(seq_file):
    res = run_cli("mau", "audit", str(seq_file))
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["outcome"] == "no_relation"
    assert report["stored_precision_bits"] == 512


def test_toric_fixed_points_from_sequence(seq_file):
    res = run_cli("toric", "fixed-points", "plane", "--mau", str(seq_file),
                  "--precision", "512")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["count"] == 3
    _assert_no_bare_floats(report)


def test_product_classify_spec_file(seq_file, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps(
        {"factors": [{"type": "mcmullen", "n": 739}],
         "mau": str(seq_file)}))
    res = run_cli("product", "classify", str(spec), "--precision", "512")
    assert res.returncode == 0
    report = json.loads(res.stdout)
    assert report["siegel_count"] == 1
    assert report["undetermined"] == []
    assert len(report["fixed_points"]) == 2
    _assert_no_bare_floats(report)
