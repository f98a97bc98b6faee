import json
import math

import numpy as np
import pytest

from radiuslab import cli
from radiuslab.matfile import save_matrix

SQRT2 = math.sqrt(2.0)


@pytest.fixture
def worked_matrix(tmp_path):
    path = tmp_path / "worked.json"
    save_matrix(path, np.array([[1.0, 1.0], [0.0, 0.0]], dtype=complex))
    return str(path)


@pytest.fixture
def e12_matrix(tmp_path):
    path = tmp_path / "e12.json"
    save_matrix(path, np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))
    return str(path)


def run_cli(args, tmp_path, name="out.txt"):
    out = tmp_path / name
    code = cli.main(args + ["--out", str(out)])
    text = out.read_text() if out.exists() else ""
    return code, text


def machine_records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


class TestCompute:
    def test_worked_matrix_values(self, worked_matrix, tmp_path):
        code, text = run_cli(["compute", "--matrix", worked_matrix,
                              "--format", "machine"], tmp_path)
        assert code == 0
        (rec,) = machine_records(text)
        assert rec["record"] == "compute"
        assert rec["w"] == pytest.approx(1.207106781, abs=1e-8)
        assert rec["re_norm"] == pytest.approx(1.207106781, abs=1e-8)
        assert rec["im_norm"] == pytest.approx(0.5, abs=1e-10)
        assert rec["omega"] == pytest.approx(1.0 + SQRT2 / 2, abs=1e-8)
        assert rec["w_omega"] == pytest.approx(SQRT2 * rec["w"], abs=1e-12)
        assert rec["hs_radius_sq"] == pytest.approx(1.5, abs=1e-12)

    def test_zero_matrix(self, tmp_path):
        path = tmp_path / "zero.json"
        save_matrix(path, np.zeros((2, 2)))
        code, text = run_cli(["compute", "--matrix", str(path),
                              "--format", "machine"], tmp_path)
        assert code == 0
        (rec,) = machine_records(text)
        for key in ("operator_norm", "w", "omega", "w_omega", "hs_radius_sq"):
            assert rec[key] == 0.0

    def test_square_zero_chain(self, e12_matrix, tmp_path):
        code, text = run_cli(["compute", "--matrix", e12_matrix,
                              "--format", "machine"], tmp_path)
        assert code == 0
        (rec,) = machine_records(text)
        assert rec["w"] == pytest.approx(0.5, abs=1e-9)
        assert rec["omega"] == pytest.approx(1.0, abs=1e-9)
        assert rec["w_omega"] == pytest.approx(0.707106781, abs=1e-8)

    def test_human_contains_same_values(self, e12_matrix, tmp_path):
        code, text = run_cli(["compute", "--matrix", e12_matrix], tmp_path)
        assert code == 0
        code2, machine = run_cli(["compute", "--matrix", e12_matrix,
                                  "--format", "machine"], tmp_path, "m.txt")
        (rec,) = machine_records(machine)
        for key in ("omega", "w", "hs_radius_sq"):
            assert f"{rec[key]:.17g}" in text

    def test_non_square_rejected(self, tmp_path):
        path = tmp_path / "rect.json"
        save_matrix(path, np.ones((2, 3)))
        assert cli.main(["compute", "--matrix", str(path)]) == 2

    def test_missing_file(self):
        assert cli.main(["compute", "--matrix", "/nonexistent.json"]) == 2

    def test_corrupt_file_names_field(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"rows": 2, "cols": 2, "data": [[0, 0]]}')
        assert cli.main(["compute", "--matrix", str(path)]) == 2
        assert "data" in capsys.readouterr().err

    def test_wnum_norm_id(self, e12_matrix, tmp_path):
        code, text = run_cli(["compute", "--matrix", e12_matrix, "--norm", "wnum",
                              "--format", "machine"], tmp_path)
        assert code == 0
        (rec,) = machine_records(text)
        assert rec["w_N[wnum]"] == pytest.approx(0.5, abs=1e-8)

    def test_omega_norm_id(self, e12_matrix, tmp_path):
        code, text = run_cli(["compute", "--matrix", e12_matrix, "--norm", "omega",
                              "--format", "machine"], tmp_path)
        assert code == 0
        (rec,) = machine_records(text)
        assert rec["w_N[omega]"] == pytest.approx(SQRT2 / 2, abs=1e-7)
        assert math.isfinite(rec["w_N[omega]_argmax_theta"])


class TestVerify:
    def test_square_zero_kittaneh_pattern(self, tmp_path):
        code, text = run_cli(["verify", "--checks", "kittaneh", "--ensembles",
                              "nil:4", "--trials", "5", "--format", "machine"],
                             tmp_path)
        assert code == 0
        recs = [r for r in machine_records(text) if r.get("record") == "check"
                and r["ensemble"] == "nil:4"]
        assert len(recs) == 5
        for rec in recs:
            # w = ||T||/2 against the bound ||T||/sqrt(2): ratio sqrt(2)
            assert rec["rhs"] / rec["lhs"] == pytest.approx(SQRT2, abs=1e-9)

    def test_machine_schema(self, tmp_path):
        code, text = run_cli(["verify", "--checks", "basic", "--ensembles",
                              "ginibre:2", "--trials", "2", "--format", "machine"],
                             tmp_path)
        assert code == 0
        recs = machine_records(text)
        checks = [r for r in recs if r["record"] == "check"]
        for rec in checks:
            for field in ("name", "paper_tag", "ensemble", "trial", "seed",
                          "lhs", "rhs", "slack", "holds", "tolerance",
                          "input_digest"):
                assert field in rec
        assert any(r["record"] == "aggregate" for r in recs)
        assert recs[-1]["record"] == "summary"

    def test_byte_identical_reruns(self, tmp_path):
        args = ["verify", "--checks", "dragomir", "--ensembles", "ginibre:3",
                "--trials", "3", "--format", "machine"]
        _, first = run_cli(args, tmp_path, "a.txt")
        _, second = run_cli(args, tmp_path, "b.txt")
        assert first == second

    def test_trials_zero_rejected(self):
        assert cli.main(["verify", "--trials", "0"]) == 2

    def test_unknown_ensemble(self):
        assert cli.main(["verify", "--ensembles", "martian:4", "--trials", "1"]) == 2

    def test_unknown_check(self):
        assert cli.main(["verify", "--checks", "bogus", "--trials", "1"]) == 2


class TestPaperExample:
    def test_default_run_passes(self, tmp_path):
        code, text = run_cli(["paper-example"], tmp_path)
        assert code == 0
        for value in ("1.2071067811865475", "0.5", "1.3065629648763766",
                      "1.7071067811865475"):
            assert value in text

    def test_machine_records(self, tmp_path):
        code, text = run_cli(["paper-example", "--tol", "1e-8",
                              "--format", "machine"], tmp_path)
        assert code == 0
        recs = machine_records(text)
        names = [r["name"] for r in recs]
        assert names == ["w", "re_norm", "im_norm", "re_formula_grid_deviation",
                         "inf_phi", "re_plus_im", "strict_order"]
        assert all(r["pass"] for r in recs)

    def test_absurd_tolerance_fails(self, tmp_path):
        # demands agreement below the floating-point floor; documents the
        # optimizer's precision limit rather than asserting it
        code, _ = run_cli(["paper-example", "--tol", "1e-18"], tmp_path)
        assert code in (0, 1)


class TestValidateNorms:
    def test_single_norm_quick(self, tmp_path):
        code, text = run_cli(["validate-norms", "--norm", "op", "--trials", "25",
                              "--format", "machine"], tmp_path)
        assert code == 0
        recs = machine_records(text)
        assert all(r["passed"] for r in recs if r["record"] == "norm-audit")
        assert recs[-1] == {"record": "summary", "passed": True}

    def test_schatten_one_quick(self, tmp_path):
        code, _ = run_cli(["validate-norms", "--norm", "schatten:1",
                           "--trials", "25"], tmp_path)
        assert code == 0

    def test_unknown_norm(self):
        assert cli.main(["validate-norms", "--norm", "bogus"]) == 2

    def test_wnum_witness_reported(self, tmp_path):
        code, text = run_cli(["validate-norms", "--norm", "wnum", "--trials", "3",
                              "--format", "machine"], tmp_path)
        assert code == 0
        recs = machine_records(text)
        witnesses = [r for r in recs if r["record"] == "algebra-witness"]
        assert witnesses and witnesses[0]["norm"] == "wnum"
        assert "nilpotent" in witnesses[0]["witness"]


class TestUsage:
    def test_no_command(self):
        assert cli.main([]) == 2

    def test_unknown_command(self):
        assert cli.main(["frobnicate"]) == 2

    def test_bad_tol(self):
        assert cli.main(["paper-example", "--tol", "-1"]) == 2
