import json
import math

import pytest

from fracsob.cli import run


def run_capture(capsys, argv):
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestConstantsCommand:
    def test_frac_isoperimetric_example(self, capsys):
        code, out, _ = run_capture(
            capsys, ["constants", "--N", "1", "--s", "0.5",
                     "--which", "frac-isoperimetric"])
        assert code == 0
        doc = json.loads(out)
        assert abs(doc["result"]["value"] - 16.0) < 1e-9
        assert doc["result"]["provenance"] == "frac-isoperimetric"
        assert doc["wall_time_s"] is None

    def test_csv_format(self, capsys):
        code, out, _ = run_capture(
            capsys, ["constants", "--N", "2", "--s", "0.5",
                     "--which", "hilbert-sobolev", "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("which,N,s,p,q,value")
        assert len(lines) == 2
        value = float(lines[1].split(",")[5])
        assert abs(value - math.sqrt(math.pi)) < 1e-12

    def test_seventeen_digit_roundtrip(self, capsys):
        from fracsob.constants import lieb_constant
        code, out, _ = run_capture(
            capsys, ["constants", "--N", "3", "--s", "0.5", "--which", "lieb"])
        doc = json.loads(out)
        # serialization at 17 significant digits is lossless
        assert doc["result"]["value"] == lieb_constant(3, 0.5).value


class TestBoundsCommand:
    def test_ball_bounds_coincide(self, capsys):
        code, out, _ = run_capture(
            capsys, ["bounds", "--p", "1", "--N", "2", "--s", "0.5",
                     "--q", "1.2", "--domain", "ball:1"])
        assert code == 0
        doc = json.loads(out)
        lo = doc["result"]["lower"]["value"]
        up = doc["result"]["upper"]["value"]
        assert abs(lo - up) / up < 1e-12

    def test_regime_error_is_usage_error(self, capsys):
        code, _, err = run_capture(
            capsys, ["bounds", "--p", "2", "--N", "1", "--s", "0.7",
                     "--q", "3", "--domain", "rn:200"])
        assert code == 2
        assert "error" in err

    def test_bad_domain_is_usage_error(self, capsys):
        code, _, err = run_capture(
            capsys, ["bounds", "--p", "1", "--N", "1", "--s", "0.5",
                     "--q", "1.2", "--domain", "cube:1"])
        assert code == 2


class TestSandwichCommand:
    def test_interval_pass(self, capsys):
        code, out, _ = run_capture(
            capsys, ["sandwich", "--p", "2", "--N", "1", "--s", "0.25",
                     "--q", "3", "--domain", "interval:-1,1",
                     "--grid", "4096", "--box", "8"])
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["pass"] is True

    def test_byte_identical_reruns(self, capsys):
        argv = ["sandwich", "--p", "2", "--N", "1", "--s", "0.25", "--q", "3",
                "--domain", "rn:100", "--grid", "1024", "--seed", "11"]
        _, out1, _ = run_capture(capsys, argv)
        _, out2, _ = run_capture(capsys, argv)
        assert out1 == out2

    def test_provenance_keys_registered(self, capsys):
        from fracsob.constants import PROVENANCE_KEYS
        code, out, _ = run_capture(
            capsys, ["sandwich", "--p", "1", "--N", "1", "--s", "0.5",
                     "--q", "1.5", "--domain", "ball:1"])
        doc = json.loads(out)
        assert doc["provenance"]
        assert all(k in PROVENANCE_KEYS for k in doc["provenance"])


class TestSweepCommand:
    def test_rows_and_order(self, capsys, monkeypatch):
        monkeypatch.setenv("FRASOB_THREADS", "2")
        code, out, _ = run_capture(
            capsys, ["sweep", "--p", "2", "--N", "1", "--s", "0.25",
                     "--q", "2.5,3,3.5", "--domain", "rn:100",
                     "--grid", "1024", "--format", "csv"])
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4
        qcol = [float(line.split(",")[3]) for line in lines[1:]]
        assert qcol == [2.5, 3.0, 3.5]


class TestThresholdsCommand:
    def test_hilbert_defaults(self, capsys):
        code, out, _ = run_capture(
            capsys, ["thresholds", "--N", "1", "--s", "0.25", "--q", "3"])
        assert code == 0
        doc = json.loads(out)
        res = doc["result"]
        assert res["c_star"] > 0
        assert 0.0 < res["alpha"] < 1.0
        assert 0.0 < res["lambda_lower"] < 1.0
        assert res["f3_coeff"] is None

    def test_limiting_f3(self, capsys):
        code, out, err = run_capture(
            capsys, ["thresholds", "--N", "1", "--s", "0.5", "--q", "4",
                     "--S", "1"])
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["f3_coeff"] == 2.0
        assert doc["result"]["alpha"] is None


class TestGroundstateCommand:
    def test_quick_solve(self, capsys):
        code, out, err = run_capture(
            capsys, ["groundstate", "--s", "0.5", "--q", "4",
                     "--grid", "1024", "--box", "30"])
        assert code == 0
        doc = json.loads(out)
        assert doc["result"]["converged"] is True
        assert doc["result"]["residual_rel"] < 1e-4
        assert doc["result"]["thresholds_satisfied"] is True


class TestValidateCommand:
    def test_all_pass(self, capsys):
        code, out, _ = run_capture(capsys, ["validate"])
        assert code == 0
        doc = json.loads(out)
        assert doc["failed"] == 0
        assert doc["passed"] >= 15


class TestOutputFile:
    def test_out_flag(self, tmp_path, capsys):
        target = tmp_path / "record.json"
        code, out, _ = run_capture(
            capsys, ["constants", "--N", "1", "--s", "0.5",
                     "--which", "norm-bridge", "--out", str(target)])
        assert code == 0
        assert out == ""
        doc = json.loads(target.read_text())
        assert abs(doc["result"]["value"] - 1.0 / math.pi) < 1e-14

    def test_usage_error_exit_2(self, capsys):
        assert run(["nonsense-command"]) == 2
        assert run([]) == 2
