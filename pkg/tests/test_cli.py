"""End-to-end CLI behavior: output, exit codes, determinism."""

import json
import math
import subprocess
import sys

import pytest

from gentropy.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_compute_uniform(capsys):
    code, out, _ = run_cli(
        capsys,
        "compute",
        "--entropy",
        '{"id":"shannon"}',
        "--dist",
        "[0.25,0.25,0.25,0.25]",
    )
    assert code == 0
    assert float(out.strip()) == pytest.approx(math.log(4), abs=1e-14)


def test_compute_with_params(capsys):
    code, out, _ = run_cli(
        capsys,
        "compute",
        "--entropy",
        '{"id":"tsallis","params":{"q":2.0}}',
        "--dist",
        "[0.5,0.5]",
    )
    assert code == 0
    assert float(out.strip()) == pytest.approx(0.5, abs=1e-14)


def test_compute_from_files(tmp_path, capsys):
    entropy_path = tmp_path / "spec.json"
    entropy_path.write_text('{"id": "renyi", "params": {"q": 2.0}}')
    dist_path = tmp_path / "dist.csv"
    dist_path.write_text("0.5\n0.5\n")
    code, out, _ = run_cli(
        capsys, "compute", "--entropy", str(entropy_path), "--dist", str(dist_path)
    )
    assert code == 0
    assert float(out.strip()) == pytest.approx(math.log(2), abs=1e-14)


def test_coarsen(capsys):
    code, out, _ = run_cli(
        capsys,
        "coarsen",
        "--dist",
        "[0.2,0.3,0.5]",
        "--partition",
        '{"blocks":[[0,1],[2]]}',
    )
    assert code == 0
    assert json.loads(out) == {"probs": [0.5, 0.5]}


def test_verify_small_campaign_passes(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--entropy",
        '{"id":"shannon"}',
        "--n",
        "3..5",
        "--cases",
        "20",
        "--seed",
        "0",
    )
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == 1
    assert len(report["entries"]) == 60


def test_verify_counterexample_fails(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify",
        "--entropy",
        '{"id":"counterexample_HE"}',
        "--n",
        "3..4",
        "--cases",
        "50",
    )
    assert code == 1


def test_verify_needs_specs(capsys):
    code, _, err = run_cli(capsys, "verify", "--n", "3..4")
    assert code == 2
    assert "error" in err


def test_verify_byte_identical_runs(capsys):
    args = ("verify", "--all", "--n", "3..4", "--cases", "3", "--seed", "0")
    code_a, out_a, _ = run_cli(capsys, *args)
    code_b, out_b, _ = run_cli(capsys, *args)
    assert code_a == code_b == 0
    assert out_a == out_b


def test_classify_shannon_passes(capsys):
    code, out, _ = run_cli(capsys, "classify", "--entropy", '{"id":"shannon"}')
    assert code == 0
    checks = {entry["check"]: entry for entry in json.loads(out)}
    assert checks["slope_condition"]["passed"]


def test_classify_counterexample_fails(capsys):
    code, out, _ = run_cli(
        capsys, "classify", "--entropy", '{"id":"counterexample_HE"}'
    )
    assert code == 1
    checks = {entry["check"]: entry for entry in json.loads(out)}
    witness = checks["slope_condition"]["witness"]
    assert witness["slope_at_x"] == pytest.approx(1.0, abs=1e-6)
    assert witness["slope_at_x_plus_p"] == pytest.approx(2.0, abs=1e-6)


def test_axioms_shannon(capsys):
    code, out, _ = run_cli(
        capsys, "axioms", "--entropy", '{"id":"shannon"}', "--samples", "100"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["seed"] == 0 and payload["spec"] == "shannon"
    rows = {entry["axiom_id"]: entry for entry in payload["residuals"]}
    assert rows["product_additivity"]["max_abs_residual"] <= 1e-10


def test_counterexample_exit_semantics(capsys):
    code, out, err = run_cli(capsys, "counterexample")
    assert code == 1  # violations present by design, flagged loudly
    assert "expected=true" in err
    assert "1.3" in out and "1.5" in out
    code, _, _ = run_cli(capsys, "counterexample", "--expect-violation")
    assert code == 0


def test_counterexample_curve_csv(tmp_path, capsys):
    curve = tmp_path / "curve.csv"
    code, _, _ = run_cli(
        capsys, "counterexample", "--expect-violation", "--curve", str(curve)
    )
    assert code == 0
    lines = curve.read_text().strip().splitlines()
    assert lines[0] == "x,phi"
    assert len(lines) == 402
    xs, phis = zip(*(map(float, line.split(",")) for line in lines[1:]))
    assert phis[xs.index(0.25)] == pytest.approx(0.25, abs=1e-12)
    assert phis[xs.index(0.5)] == pytest.approx(0.75, abs=1e-12)
    assert max(phis) <= 0.75 and min(phis) >= 0.0


def test_partitions_json(capsys):
    code, out, _ = run_cli(capsys, "partitions", "--n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["count"] == payload["bell"] == 15
    assert len(payload["partitions"]) == 15


def test_partitions_csv(capsys):
    code, out, _ = run_cli(capsys, "partitions", "--n", "3", "--format", "csv")
    assert code == 0
    assert len(out.strip().splitlines()) == 6  # header + Bell(3)


def test_bad_entropy_json_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "compute", "--entropy", "{not json", "--dist", "[1.0]")
    assert code == 2
    assert "error" in err


def test_missing_file_is_usage_error(capsys):
    code, _, err = run_cli(
        capsys, "compute", "--entropy", "/nonexistent/spec.json", "--dist", "[1.0]"
    )
    assert code == 2
    assert "/nonexistent/spec.json" in err


def test_unknown_subcommand_exit_two():
    proc = subprocess.run(
        [sys.executable, "-m", "gentropy", "frobnicate"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 2


def test_module_entry_point_matches_api():
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "gentropy",
            "compute",
            "--entropy",
            '{"id":"shannon"}',
            "--dist",
            "[0.5,0.5]",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert float(proc.stdout.strip()) == pytest.approx(math.log(2), abs=1e-14)
