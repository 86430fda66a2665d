"""
Unit tests for cli module.

Tests subcommands, exit codes and option precedence.
"""

import json

import pytest

from src.cli import run_cli


def run_json(capsys, argv):
    """Run the CLI and parse its JSON output."""
    code = run_cli(argv)
    return code, json.loads(capsys.readouterr().out)


class TestExitCodes:
    """Tests for exit codes."""

    def test_help(self, capsys):
        assert run_cli(["--help"]) == 0

    def test_unknown_command(self, capsys):
        assert run_cli(["frobnicate"]) == 2

    def test_missing_params(self, capsys):
        assert run_cli(["classify", "--seed", "1,1"]) == 2

    def test_unparseable_number(self, capsys):
        assert run_cli(["solve", "--params", "abc,1", "--seed", "1,1"]) == 2

    def test_degenerate_params(self, capsys):
        """Test domain errors exit with 1."""
        assert run_cli(["solve", "--params", "0,0", "--seed", "1,1"]) == 1
        assert "error" in capsys.readouterr().err

    def test_missing_config_file(self, tmp_path, capsys):
        argv = ["classify", "--config", str(tmp_path / "absent.yaml")]
        assert run_cli(argv) == 2


class TestSubcommands:
    """Tests for each subcommand."""

    def test_solve_csv(self, capsys):
        code = run_cli(["solve", "--params", "1/2,1", "--seed", "1,1", "--n-max", "2"])
        assert code == 0
        assert capsys.readouterr().out == "n,x\n-1,1\n0,1\n1,2/3\n2,6/7\n"

    def test_solve_closed_form_json(self, capsys):
        code, data = run_json(capsys, [
            "solve", "--params", "1/2,1", "--seed", "1,1", "--n-max", "2",
            "--closed-form", "--format", "json",
        ])
        assert code == 0
        assert [t["x"] for t in data["terms"]] == ["1", "1", "2/3", "6/7"]

    def test_classify(self, capsys):
        code, data = run_json(capsys, ["classify", "--params", "1/2,1", "--seed", "1,1"])
        assert code == 0
        assert data["behavior"]["kind"] == "ConvergesToTwoPeriodic"

    def test_classify_negative_seed(self, capsys):
        """Test --seed=... accepts a leading minus."""
        code, data = run_json(capsys, ["classify", "--params=-1,1", "--seed=1,-1/2"])
        assert code == 0
        assert data["behavior"]["kind"] == "UnboundedAlternating"

    def test_classify_not_admissible(self, capsys):
        code, data = run_json(capsys, ["classify", "--params", "1,1", "--seed=1,-1/2"])
        assert code == 1
        assert data["behavior"]["kind"] == "NotAdmissible"

    def test_admissible(self, capsys):
        code, data = run_json(capsys, ["admissible", "--params", "1,1", "--seed=1,-1/3"])
        assert code == 1
        assert data["verdict"] == "NonAdmissible(3)"

    def test_limit(self, capsys):
        code, data = run_json(capsys, ["limit", "--params", "1/2,1", "--seed", "1,1", "--tol", "1e-8"])
        assert code == 0
        assert data["error_bound"] <= 1e-8
        assert data["p"] * data["q"] == pytest.approx(0.5, abs=1e-7)

    def test_limit_out_of_range(self, capsys):
        assert run_cli(["limit", "--params", "2,1", "--seed", "1,1"]) == 1

    def test_stability(self, capsys):
        code, data = run_json(capsys, [
            "stability", "--params", "1/2,1", "--p", "1", "--q", "1/2",
            "--deltas", "1e-2,1e-3", "--probe-n-max", "200",
        ])
        assert code == 0
        assert data["zero"]["verdict"] == "Unstable"
        assert data["periodic"]["verdict"] == "StableNotAsymptotically"
        assert data["probe"]["empirical"] is True
        assert len(data["probe"]["rows"]) == 2

    def test_stability_needs_both_coordinates(self, capsys):
        assert run_cli(["stability", "--params", "1/2,1", "--p", "1"]) == 2

    def test_bifurcate(self, tmp_path, capsys):
        """Test CSV and SVG output of a one-column sweep."""
        out, svg = tmp_path / "sweep.csv", tmp_path / "sweep.svg"
        code = run_cli([
            "bifurcate", "--b", "-1", "--seed", "1,2", "--a-min", "3", "--a-max", "3",
            "--iters", "10", "--keep-from", "8", "--out", str(out), "--svg", str(svg),
        ])
        assert code == 0
        assert out.read_text() == "a,n,x,flag\n3,8,2,ok\n3,9,1,ok\n3,10,2,ok\n"
        assert svg.read_bytes().startswith(b"<?xml")

    def test_bifurcate_requires_range(self, capsys):
        assert run_cli(["bifurcate", "--b", "-1", "--seed", "1,2"]) == 2

    def test_bifurcate_nothing_to_plot(self, tmp_path, capsys):
        code = run_cli([
            "bifurcate", "--b", "-1", "--seed", "1,1", "--a-min", "1", "--a-max", "1",
            "--iters", "5", "--keep-from", "1", "--svg", str(tmp_path / "x.svg"),
        ])
        assert code == 1

    def test_batch(self, tmp_path, capsys):
        """Test every row is reported, failures included."""
        path = tmp_path / "seeds.csv"
        path.write_text("a,b,x_prev,x0\n2,1,1,1\n0,0,1,1\n1,1,1,-1/2\n")
        code = run_cli(["batch", "--input", str(path)])
        lines = capsys.readouterr().out.splitlines()

        assert code == 0
        assert lines[0] == "a,b,x_prev,x0,alpha,admissibility,behavior,p,q,error_bound"
        assert "ConvergesToZero" in lines[1]
        assert "error:" in lines[2]
        assert "NonAdmissible(2)" in lines[3]

    def test_batch_missing_columns(self, tmp_path, capsys):
        path = tmp_path / "seeds.csv"
        path.write_text("a,b\n1,1\n")
        assert run_cli(["batch", "--input", str(path)]) == 2


class TestPrecedence:
    """Tests for flag > config file > defaults."""

    def test_config_supplies_options(self, tmp_path, capsys):
        path = tmp_path / "run.yaml"
        path.write_text('params: "1/2,1"\nseed: "1,1"\nmode: float\n')
        code, data = run_json(capsys, ["classify", "--config", str(path)])

        assert code == 0
        assert data["params"]["mode"] == "float"

    def test_flag_beats_config(self, tmp_path, capsys):
        path = tmp_path / "run.yaml"
        path.write_text('params: "1/2,1"\nseed: "1,1"\nmode: float\n')
        code, data = run_json(capsys, ["classify", "--config", str(path), "--params", "2,1", "--mode", "exact"])

        assert code == 0
        assert data["params"] == {"a": "2", "b": "1", "mode": "exact"}
        assert data["behavior"]["kind"] == "ConvergesToZero"

    def test_config_tol_in_exponent_form(self, tmp_path, capsys):
        """Test tol written as 1e-8 (a YAML string) is read as a number."""
        path = tmp_path / "run.yaml"
        path.write_text('params: "1/2,1"\nseed: "1,1"\ntol: 1e-8\n')
        code, data = run_json(capsys, ["limit", "--config", str(path)])

        assert code == 0
        assert data["error_bound"] <= 1e-8
