import json
import subprocess
import sys
from fractions import Fraction

import pytest

from cfree.cli import main
from cfree.fock import annihilate, create
from cfree.series import Poly, TwoStateLaw
from cfree.twolevel import An, AStar, Pi, construct_model

HALF = TwoStateLaw([0] * 6, [Fraction(1, 2) ** n for n in range(1, 7)])
ZERO4 = TwoStateLaw([0] * 4, [0] * 4)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_record(err):
    lines = err.strip().splitlines()
    assert len(lines) == 1
    return json.loads(lines[0])


class TestTransform:
    def test_cR_half(self, capsys, write_json):
        code, out, _ = run(capsys, "transform", "--kind", "cR", "--law", write_json("l.json", HALF.to_json()), "-N", "6")
        assert code == 0
        assert json.loads(out)["coeffs"] == ["0", "1/2", "0", "0", "0", "0", "0"]

    def test_csv(self, capsys, write_json):
        code, out, _ = run(
            capsys, "transform", "--kind", "R", "--law", write_json("l.json", HALF.to_json()), "-N", "2", "--format", "csv"
        )
        assert code == 0 and out.splitlines() == ["k,coeff", "0,0", "1,0", "2,0"]

    def test_domain_error(self, capsys, write_json):
        code, out, err = run(capsys, "transform", "--kind", "T", "--law", write_json("l.json", HALF.to_json()))
        assert code == 2 and out == ""
        assert error_record(err)["error"] == "domain"

    def test_malformed_json(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{oops")
        code, _, err = run(capsys, "transform", "--kind", "R", "--law", str(bad))
        assert code == 2 and error_record(err)["error"] == "usage"

    def test_N_too_large(self, capsys, write_json):
        code, _, err = run(capsys, "transform", "--kind", "R", "--law", write_json("l.json", ZERO4.to_json()), "-N", "9")
        assert code == 2 and error_record(err)["error"] == "usage"

    def test_output_file(self, capsys, write_json, tmp_path):
        dest = tmp_path / "out.json"
        code, out, _ = run(capsys, "transform", "--kind", "cR", "--law", write_json("l.json", HALF.to_json()), "-o", str(dest))
        assert code == 0 and out == ""
        assert json.loads(dest.read_text())["order"] == 6


class TestInvert:
    def test_R(self, capsys, write_json):
        s = write_json("s.json", {"order": 6, "coeffs": ["0", "0", "1", "0", "0", "0", "0"]})
        code, out, _ = run(capsys, "invert", "--kind", "R", "--series", s, "-N", "6")
        assert code == 0 and json.loads(out)["psi"] == ["0", "1", "0", "2", "0", "5"]

    def test_cR_with_psi_law(self, capsys, write_json):
        s = write_json("s.json", {"coeffs": ["0", "1/2", "0", "0", "0", "0", "0"]})
        psi = write_json("p.json", HALF.to_json())
        code, out, _ = run(capsys, "invert", "--kind", "cR", "--series", s, "--psi", psi)
        assert code == 0 and json.loads(out)["phi"] == HALF.to_json()["phi"]

    def test_cT_with_psi_list(self, capsys, write_json):
        s = write_json("s.json", {"coeffs": ["3", "0", "0"]})
        psi = write_json("p.json", ["1", "1", "1"])
        code, out, _ = run(capsys, "invert", "--kind", "cT", "--series", s, "--psi", psi, "-N", "3")
        assert code == 0 and json.loads(out)["phi"] == ["3", "9", "27"]

    def test_conditional_without_psi(self, capsys, write_json):
        s = write_json("s.json", {"coeffs": ["0", "1", "0"]})
        code, _, err = run(capsys, "invert", "--kind", "cR", "--series", s, "-N", "2")
        assert code == 2 and error_record(err)["error"] == "domain"


class TestConvolve:
    def test_zero_laws(self, capsys, write_json):
        z = write_json("z.json", ZERO4.to_json())
        code, out, _ = run(capsys, "convolve", "--kind", "add", "--x", z, "--y", z, "-N", "4")
        assert code == 0 and TwoStateLaw.from_json(json.loads(out)) == ZERO4

    @pytest.mark.parametrize("path", ["transform", "axiomatic", "operator"])
    def test_paths_agree(self, capsys, write_json, path):
        x = write_json("x.json", HALF.to_json())
        y = write_json("y.json", TwoStateLaw([1, 0, 2, 0, 1, 1], [0, 1, 1, 2, 3, 5]).to_json())
        code, out, _ = run(capsys, "convolve", "--kind", "add", "--x", x, "--y", y, "-N", "5", "--path", path)
        ref = main(["convolve", "--kind", "add", "--x", x, "--y", y, "-N", "5"])
        ref_out, _ = capsys.readouterr()
        assert code == ref == 0 and out == ref_out

    def test_all_report(self, capsys, write_json):
        x = write_json("x.json", TwoStateLaw([1, 2, 3], [2, 1, 1]).to_json())
        code, out, _ = run(capsys, "convolve", "--kind", "mul", "--x", x, "--y", x, "-N", "3", "--path", "all")
        rep = json.loads(out)
        assert code == 0 and rep["agree"] and rep["first_mismatch"] is None
        assert set(rep["paths"]) == {"transform", "axiomatic", "operator"}

    def test_mul_precondition(self, capsys, write_json):
        x = write_json("x.json", HALF.to_json())
        for path in ("transform", "axiomatic", "operator", "all"):
            code, _, err = run(capsys, "convolve", "--kind", "mul", "--x", x, "--y", x, "--path", path)
            assert code == 2 and error_record(err)["error"] == "domain"

    def test_rank_cap(self, capsys, write_json, monkeypatch):
        monkeypatch.setenv("CFREE_MAX_RANK", "3")
        x = write_json("x.json", HALF.to_json())
        code, _, err = run(capsys, "convolve", "--kind", "add", "--x", x, "--y", x, "--path", "operator")
        assert code == 2 and "CFREE_MAX_RANK" in error_record(err)["message"]
        code, _, _ = run(capsys, "convolve", "--kind", "add", "--x", x, "--y", x, "--path", "transform")
        assert code == 0


class TestSimulate:
    def test_model(self, capsys, write_json):
        op = construct_model("additive", Pi(create(0) + annihilate(0)), 0, Poly([2]))
        code, out, _ = run(capsys, "simulate", "--op", write_json("op.json", op.to_json()), "-N", "4")
        law = TwoStateLaw.from_json(json.loads(out))
        assert code == 0 and law.psi == (0, 1, 0, 2)

    def test_overflow(self, capsys, write_json):
        op = write_json("op.json", (AStar(0) + An(0, 1)).to_json())
        code, _, err = run(capsys, "simulate", "--op", op, "-N", "3", "--lh", "1", "--lk", "1")
        assert code == 2 and error_record(err)["error"] == "overflow"

    def test_fock_operator_rejected(self, capsys, write_json):
        code, _, err = run(capsys, "simulate", "--op", write_json("op.json", create(0).to_json()))
        assert code == 2 and error_record(err)["error"] == "usage"

    def test_unknown_generator(self, capsys, write_json):
        code, _, err = run(capsys, "simulate", "--op", write_json("op.json", {"gen": "teleport"}))
        assert code == 2 and error_record(err)["error"] == "usage"

    def test_rank_cap(self, capsys, write_json, monkeypatch):
        monkeypatch.setenv("CFREE_MAX_RANK", "4")
        code, _, err = run(capsys, "simulate", "--op", write_json("op.json", AStar(0).to_json()))
        assert code == 2 and error_record(err)["error"] == "usage"


class TestVerify:
    def test_mainthm_add(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "mainthm-add", "--trials", "20", "--seed", "42", "-N", "6")
        rep = json.loads(out)
        assert code == 0 and rep["passed"] and rep["checks"] == 40

    def test_deterministic(self, capsys):
        first = run(capsys, "verify", "--suite", "crthm", "--trials", "3", "--seed", "5")
        second = run(capsys, "verify", "--suite", "crthm", "--trials", "3", "--seed", "5")
        assert first == second and first[0] == 0

    def test_failing_suite_exits_1(self, capsys):
        # this suite contains the check A* Id_E0 = A*, which fails on Omega
        code, out, _ = run(capsys, "verify", "--suite", "remark1", "--trials", "2")
        assert code == 1 and "A* Id_E0 != A*" in json.loads(out)["failures"]

    def test_bad_trials(self, capsys):
        code, _, err = run(capsys, "verify", "--suite", "ct", "--trials", "0")
        assert code == 2 and error_record(err)["error"] == "usage"


def test_usage_error_from_argparse():
    with pytest.raises(SystemExit) as exc:
        main(["transform"])
    assert exc.value.code == 2


def test_module_entry_point(write_json):
    law = write_json("l.json", HALF.to_json())
    proc = subprocess.run(
        [sys.executable, "-m", "cfree", "transform", "--kind", "cR", "--law", law, "-N", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"order": 2, "coeffs": ["0", "1/2", "0"]}
