import json
import subprocess
import sys
from pathlib import Path

import pytest

from lmlab import ClassificationReport, VerificationResult
from lmlab.cli import main

SRC = Path(__file__).resolve().parent.parent / "src"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestBallAndEnumerate:
    def test_ball_text(self, capsys):
        code, out, _ = run_cli(capsys, "ball", "--n", "3", "--e", "1", "--s", "1")
        assert code == 0 and out == "7\n"

    def test_ball_json(self, capsys):
        code, out, _ = run_cli(capsys, "ball", "--n", "3", "--e", "1", "--s", "1", "--format", "json")
        assert code == 0
        assert json.loads(out) == {"volume": "7"}

    def test_ball_asymmetric(self, capsys):
        code, out, _ = run_cli(capsys, "ball", "--n", "2", "--e", "1", "--kplus", "2", "--kminus", "0")
        assert code == 0 and out == "5\n"

    def test_enumerate_text(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "2", "--e", "1", "--s", "1")
        assert code == 0
        assert out.splitlines() == ["-1,0", "0,-1", "0,0", "0,1", "1,0"]

    def test_conflicting_magnitude_flags(self, capsys):
        code, _, err = run_cli(
            capsys, "ball", "--n", "2", "--e", "1", "--s", "1", "--kplus", "1"
        )
        assert code == 2 and "error" in err


class TestDist:
    def test_text(self, capsys):
        code, out, _ = run_cli(capsys, "dist", "--s", "2", "--x", "1,3,4", "--y", "0,0,0")
        assert code == 0 and out == "5\n"

    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "dist", "--s", "1", "--x", "3,0", "--y", "0,0", "--format", "json"
        )
        assert json.loads(out) == {"distance": "5"}


class TestVerifyLattice:
    def test_tiling_verdict(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify-lattice", "--n", "2", "--e", "1", "--s", "1",
            "--gen", "1,2;2,-1", "--mode", "tiling",
        )
        assert code == 0
        assert out.splitlines()[0] == "tiles"

    def test_expect_match_and_mismatch(self, capsys):
        base = [
            "verify-lattice", "--n", "2", "--e", "1", "--s", "1",
            "--gen", "1,2;2,-1", "--mode", "tiling",
        ]
        assert run_cli(capsys, *base, "--expect", "tiles")[0] == 0
        code, _, err = run_cli(capsys, *base, "--expect", "fails")
        assert code == 1 and "expected fails" in err

    def test_json_round_trip(self, capsys):
        _, out, _ = run_cli(
            capsys,
            "verify-lattice", "--n", "2", "--e", "1", "--s", "1",
            "--gen", "5,0;0,1", "--mode", "packing", "--format", "json",
        )
        result = VerificationResult.from_json_dict(json.loads(out))
        assert result.verdict == "fails" and result.witness is not None


class TestVerifyWindow:
    def test_overlap_with_expect(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify-window", "--n", "2", "--e", "1", "--s", "1",
            "--translates", "0,0;1,0", "--window", "5", "--expect", "overlap",
        )
        assert code == 0
        assert out.splitlines()[0] == "overlap"

    def test_disjoint_json(self, capsys):
        _, out, _ = run_cli(
            capsys,
            "verify-window", "--n", "2", "--e", "1", "--s", "1",
            "--translates", "0,0;5,5", "--window", "8", "--format", "json",
        )
        assert json.loads(out) == {"disjoint": True, "witness": None}


class TestDensity:
    def test_exact_lattice_density(self, capsys):
        code, out, _ = run_cli(
            capsys, "density", "--n", "2", "--e", "1", "--s", "1", "--gen", "7,0;0,1"
        )
        assert code == 0 and out == "5/7\n"

    def test_window_estimate(self, capsys):
        _, out, _ = run_cli(
            capsys,
            "density", "--n", "2", "--e", "1", "--s", "1",
            "--gen", "7,0;0,1", "--window", "24", "--format", "json",
        )
        assert json.loads(out) == {"density": "5/7", "mode": "window"}

    def test_translates_need_window(self, capsys):
        code, _, err = run_cli(
            capsys, "density", "--n", "2", "--e", "1", "--s", "1", "--translates", "0,0"
        )
        assert code == 2 and "window" in err


class TestSearch:
    def test_plane_cross_json_is_bare_array(self, capsys):
        _, out, _ = run_cli(
            capsys, "search", "--n", "2", "--e", "1", "--s", "1", "--format", "json"
        )
        assert json.loads(out) == ["1,2;0,5", "1,3;0,5"]

    def test_text_lines(self, capsys):
        _, out, _ = run_cli(capsys, "search", "--n", "2", "--e", "1", "--s", "1")
        assert out.splitlines() == ["1,2;0,5", "1,3;0,5"]


class TestClassify:
    def test_text_and_expect(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify", "--n", "2", "--e", "1", "--s", "1", "--expect", "exists"
        )
        assert code == 0
        assert out.splitlines()[0] == "verdict: exists"

    def test_json_round_trip(self, capsys):
        _, out, _ = run_cli(
            capsys, "classify", "--n", "100", "--e", "40", "--s", "4", "--format", "json"
        )
        payload = json.loads(out)
        assert payload["verdict"] == "excluded"
        report = ClassificationReport.from_json_dict(payload)
        assert report.to_json_dict() == payload

    def test_deterministic_output(self, capsys):
        args = ["classify", "--n", "1000", "--e", "200", "--s", "1", "--format", "json"]
        first = run_cli(capsys, *args)[1]
        second = run_cli(capsys, *args)[1]
        assert first == second


class TestClassifyRange:
    def test_csv_shape_and_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "classify-range", "--n", "3:5", "--e", "0:3", "--s", "1:2"
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,e,s,verdict,lattice_excluded,criteria"
        rows = [line.split(",")[:3] for line in lines[1:]]
        assert len(rows) == 3 * 4 * 2
        assert rows == sorted(rows, key=lambda r: tuple(map(int, r)))

    def test_single_values(self, capsys):
        _, out, _ = run_cli(capsys, "classify-range", "--n", "4", "--e", "4", "--s", "1")
        lines = out.splitlines()
        assert len(lines) == 2
        assert lines[1].startswith("4,4,1,exists")


class TestDensityBound:
    def test_finite_value(self, capsys):
        code, out, _ = run_cli(capsys, "density-bound", "--n", "100", "--e", "50", "--s", "4")
        assert code == 0 and out == "1275/2401\n"

    def test_not_applicable(self, capsys):
        _, out, _ = run_cli(capsys, "density-bound", "--n", "100", "--e", "10", "--s", "2")
        assert out == "not-applicable\n"

    def test_vacuous_flag(self, capsys):
        _, out, _ = run_cli(
            capsys, "density-bound", "--n", "100", "--e", "50", "--s", "2", "--format", "json"
        )
        assert json.loads(out) == {
            "applicable": True,
            "value": "2550/2401",
            "vacuous": True,
        }

    def test_asymptotic_regime(self, capsys):
        _, out, _ = run_cli(
            capsys, "density-bound", "--regime", "linear", "--a", "1/2", "--s", "4"
        )
        assert out == "1/2\n"


class TestQpCheck:
    def test_ok_verdict(self, capsys):
        code, out, _ = run_cli(
            capsys, "qp-check", "--s", "2", "--K", "5", "--a", "3", "--expect", "ok"
        )
        assert code == 0
        payload_lines = out.splitlines()
        assert payload_lines[0].startswith("closed=")
        assert payload_lines[-1] == "ok"

    def test_spec_example_values(self, capsys):
        _, out, _ = run_cli(
            capsys, "qp-check", "--s", "2", "--K", "5", "--a", "3", "--format", "json"
        )
        payload = json.loads(out)
        assert payload["binary"] == "22"
        assert payload["envelope"] == "45/2"
        assert payload["ok"] is True


class TestTable:
    def test_explicit_row_text(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--s", "1", "--epsilon", "1/15")
        assert code == 0 and out == "1591, 9.92\n"

    def test_trailing_zero_coefficient(self, capsys):
        _, out, _ = run_cli(capsys, "table", "--s", "2", "--epsilon", "1/15")
        assert out == "1201, 8.80\n"

    def test_csv(self, capsys):
        _, out, _ = run_cli(capsys, "table", "--s", "2", "--epsilon", "1/10", "--format", "csv")
        assert out == "s,epsilon,min_n,coefficient\n2,1/10,501,6.12\n"


class TestEquivalenceCheck:
    def test_equal(self, capsys):
        code, out, _ = run_cli(
            capsys, "equivalence-check", "--n", "2", "--t", "1", "--s", "1",
            "--expect", "equal",
        )
        assert code == 0 and out.splitlines()[0] == "equal"


class TestUsageErrors:
    def test_missing_required_flag(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["ball", "--n", "3", "--e", "1", "--s"])
        assert info.value.code == 2

    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 2

    def test_parameter_error_exit_code(self, capsys):
        code, _, err = run_cli(capsys, "ball", "--n", "3", "--e", "9", "--s", "1")
        assert code == 2 and "error:" in err

    def test_csv_unsupported(self, capsys):
        code, _, err = run_cli(
            capsys, "ball", "--n", "3", "--e", "1", "--s", "1", "--format", "csv"
        )
        assert code == 2 and "CSV" in err


class TestModuleEntryPoint:
    def test_python_dash_m(self):
        proc = subprocess.run(
            [sys.executable, "-m", "lmlab", "table", "--s", "1", "--epsilon", "1/10"],
            capture_output=True,
            text=True,
            env={"PYTHONPATH": str(SRC), "PATH": "/usr/bin:/bin"},
        )
        assert proc.returncode == 0
        assert proc.stdout == "641, 6.84\n"

    def test_threads_env_accepted(self):
        proc = subprocess.run(
            [sys.executable, "-m", "lmlab", "search", "--n", "2", "--e", "1", "--s", "1"],
            capture_output=True,
            text=True,
            env={"PYTHONPATH": str(SRC), "PATH": "/usr/bin:/bin", "LMLAB_THREADS": "3"},
        )
        assert proc.returncode == 0
        assert proc.stdout.splitlines() == ["1,2;0,5", "1,3;0,5"]
