"""Integration tests for CLI commands."""

import json
import subprocess
import sys

import pytest


def run_cli(args: list[str]) -> subprocess.CompletedProcess:
    """Run gtl command and return result."""
    cmd = [sys.executable, "-m", "gtl_cli"] + args
    return subprocess.run(cmd, capture_output=True, text=True, timeout=60)


class TestCheckCommand:
    """Test check command."""

    def test_falsifiable(self):
        """Test that F (p -> X p) is falsifiable with exit 1."""
        result = run_cli(["check", "F (p -> X p)", "-q"])
        assert result.returncode == 1
        assert result.stdout.splitlines()[0] == "FALSIFIABLE"
        assert "witness: prefix" in result.stdout

    def test_text_witness(self):
        """Test that text output lists the witness moments and marks the pivot."""
        result = run_cli(["check", "p | ~p", "-q"])
        assert result.returncode == 1
        moments = [line.strip() for line in result.stdout.splitlines() if line.strip().startswith("moment ")]
        assert moments[0].startswith("moment 0")
        assert sum("(pivot)" in line for line in moments) == 1
        assert len(moments) >= 2

    def test_valid(self):
        """Test that p -> p is valid with exit 0."""
        result = run_cli(["check", "p -> p", "-q"])
        assert result.returncode == 0
        assert result.stdout.splitlines()[0] == "VALID"

    def test_json(self):
        """Test the JSON envelope."""
        result = run_cli(["check", "(p -> q) | (q -> p)", "--json"])
        assert result.returncode == 0
        data = json.loads(result.stdout)
        assert data["command"] == "check"
        assert data["result"]["verdict"] == "valid"
        assert data["result"]["witness"] is None
        assert any(line.startswith("moments:") for line in data["diagnostics"])

    def test_json_witness(self):
        """Test that a falsifiable verdict carries the witness."""
        result = run_cli(["check", "p | ~p", "--json"])
        assert result.returncode == 1
        data = json.loads(result.stdout)
        assert data["result"]["verdict"] == "falsifiable"
        assert data["result"]["witness"]["formula"] == "p | (p -> bot)"

    def test_satisfiable(self):
        """Test the satisfiability mode."""
        assert run_cli(["check", "--satisfiable", "p", "-q"]).stdout.startswith("SATISFIABLE")
        result = run_cli(["check", "--satisfiable", "p & ~p", "-q"])
        assert result.returncode == 1
        assert result.stdout.startswith("UNSATISFIABLE")

    def test_closure_limit(self):
        """Test that a closure over --max-sigma is an input error."""
        result = run_cli(["check", "p & q & r", "--max-sigma", "3"])
        assert result.returncode == 2
        assert "Error:" in result.stderr

    def test_syntax_error(self):
        """Test that a malformed formula is an input error."""
        result = run_cli(["check", "p &"])
        assert result.returncode == 2
        assert "Error:" in result.stderr

    def test_dot(self, tmp_dir):
        """Test DOT output of the witness quasimodel."""
        dot = tmp_dir / "q.dot"
        result = run_cli(["check", "F (p -> X p)", "--dot", str(dot), "-q"])
        assert result.returncode == 1
        assert "digraph" in dot.read_text()

    @pytest.mark.slow
    def test_threads(self):
        """Test that the verdict does not depend on the worker count."""
        one = run_cli(["check", "F (p -> X p)", "--json"])
        two = run_cli(["check", "F (p -> X p)", "--json", "-n", "2"])
        assert json.loads(one.stdout)["result"] == json.loads(two.stdout)["result"]


class TestVerifyWitnessCommand:
    """Test verify-witness command."""

    def test_emitted_witness_verifies(self, tmp_dir):
        """Test that an emitted witness verifies."""
        witness = tmp_dir / "w.json"
        run_cli(["check", "F (p -> X p)", "--emit-witness", str(witness), "-q"])
        assert witness.exists()

        result = run_cli(["verify-witness", str(witness), "--formula", "F (p -> X p)"])
        assert result.returncode == 0
        assert result.stdout.strip() == "VERIFIED"

    def test_tampered_witness(self, tmp_dir):
        """Test that a broken witness fails with exit 1."""
        witness = tmp_dir / "w.json"
        run_cli(["check", "F (p -> X p)", "--emit-witness", str(witness), "-q"])
        data = json.loads(witness.read_text())
        data["pivot"] = len(data["moments"]) - 1
        witness.write_text(json.dumps(data))

        result = run_cli(["verify-witness", str(witness), "--formula", "F (p -> X p)"])
        assert result.returncode == 1
        assert result.stdout.startswith("FAILED (condition shape)")

    def test_missing_file(self, tmp_dir):
        """Test a missing witness file."""
        result = run_cli(["verify-witness", str(tmp_dir / "none.json"), "--formula", "p"])
        assert result.returncode == 2

    def test_formula_required(self, tmp_dir):
        """Test that --formula is required."""
        result = run_cli(["verify-witness", str(tmp_dir / "w.json")])
        assert result.returncode == 2
        assert "--formula" in result.stderr


class TestEvalCommands:
    """Test eval-real and eval-bi commands."""

    def test_eval_real_half(self, half_model_file):
        """Test p | ~p on the constant 1/2 model."""
        result = run_cli(["eval-real", str(half_model_file), "p | ~p"])
        assert result.returncode == 0
        assert result.stdout.strip() == "t=0: 1/2"

    def test_eval_real_at(self, two_state_model_file):
        """Test a single state."""
        result = run_cli(["eval-real", str(two_state_model_file), "X p", "--at", "0"])
        assert result.returncode == 0
        assert result.stdout.strip() == "1/3"

    def test_eval_real_table(self, two_state_model_file, tmp_dir):
        """Test writing the closure table."""
        table = tmp_dir / "values.csv"
        result = run_cli(["eval-real", str(two_state_model_file), "F p", "--table", str(table)])
        assert result.returncode == 0
        lines = table.read_text().splitlines()
        assert lines[0] == "state,p,F p"
        assert len(lines) == 3

    def test_eval_real_wrong_kind(self, two_world_model_file):
        """Test that a bi-relational model is refused."""
        result = run_cli(["eval-real", str(two_world_model_file), "p"])
        assert result.returncode == 2
        assert "expected kind 'real'" in result.stderr

    def test_eval_real_unknown_variable(self, half_model_file):
        """Test a formula mentioning a variable the model lacks."""
        result = run_cli(["eval-real", str(half_model_file), "q"])
        assert result.returncode == 2
        assert "q" in result.stderr

    def test_eval_bi(self, two_world_model_file):
        """Test the extension of p."""
        result = run_cli(["eval-bi", str(two_world_model_file), "p"])
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "{(0, 0)}"
        assert "globally true: no" in lines[1]

    def test_eval_bi_json(self, two_world_model_file):
        """Test JSON output of eval-bi."""
        result = run_cli(["eval-bi", str(two_world_model_file), "p -> p", "--json"])
        data = json.loads(result.stdout)
        assert data["result"]["globally_true"] is True
        assert data["result"]["extension"] == [[0, 0], [1, 0]]


class TestTranslateCommand:
    """Test translate command."""

    def test_translate(self):
        """Test the double negation of variables."""
        result = run_cli(["translate", "F p"])
        assert result.returncode == 0
        assert result.stdout.strip() == "F ((p -> bot) -> bot)"


class TestMomentsCommand:
    """Test moments command."""

    def test_count_only(self):
        """Test that p has three moments."""
        result = run_cli(["moments", "p", "--count-only"])
        assert result.returncode == 0
        assert result.stdout.strip() == "3"

    def test_listing(self):
        """Test the moment listing."""
        result = run_cli(["moments", "p"])
        lines = result.stdout.splitlines()
        assert lines[:3] == ["0: ({})", "1: ({p})", "2: ({p}, {})"]

    def test_table(self, tmp_dir):
        """Test table output."""
        out = tmp_dir / "moments.tsv"
        result = run_cli(["moments", "p -> q", "-o", str(out)])
        assert result.returncode == 0
        assert out.read_text().splitlines()[0] == "id\tlength\tchain"


class TestModelCommands:
    """Test quotient, unwind, realify and bify commands."""

    def test_quotient_and_unwind(self, two_world_model_file, tmp_dir):
        """Test building a quasimodel then unwinding it."""
        quasi = tmp_dir / "q.json"
        dot = tmp_dir / "q.dot"
        result = run_cli(["quotient", str(two_world_model_file), "p | ~p", "-o", str(quasi), "--dot", str(dot)])
        assert result.returncode == 0
        assert "2 worlds" in result.stdout
        assert "falsifies formula: yes" in result.stdout
        assert dot.exists()

        grid = tmp_dir / "grid.json"
        result = run_cli(["unwind", str(quasi), "--start", "1", "--budget", "2", "-o", str(grid)])
        assert result.returncode == 0
        data = json.loads(grid.read_text())
        assert data["length"] == 2
        assert len(data["paths"]) == 2
        assert "next defect: " in result.stdout

    def test_unwind_bad_start(self, two_world_model_file, tmp_dir):
        """Test that an unknown start world is an input error."""
        quasi = tmp_dir / "q.json"
        run_cli(["quotient", str(two_world_model_file), "p", "-o", str(quasi)])
        result = run_cli(["unwind", str(quasi), "--start", "9", "--budget", "1", "-o", str(tmp_dir / "g.json")])
        assert result.returncode == 2
        assert "start" in result.stderr

    def test_realify(self, two_world_model_file, tmp_dir):
        """Test turning a bi-relational model into a real one."""
        out = tmp_dir / "real.json"
        result = run_cli(["realify", str(two_world_model_file), "p", "-o", str(out)])
        assert result.returncode == 0
        data = json.loads(out.read_text())
        assert data["kind"] == "real"
        assert data["valuation"]["p"] == ["1/2"]

    def test_bify(self, half_model_file, tmp_dir):
        """Test turning a real model into a bi-relational one."""
        out = tmp_dir / "bi.json"
        result = run_cli(["bify", str(half_model_file), "p", "-o", str(out)])
        assert result.returncode == 0
        assert "thresholds: 1/4, 3/4" in result.stdout
        data = json.loads(out.read_text())
        assert data["worlds"] == 2
        assert data["valuation"]["p"] == [[0, 0]]

    def test_output_required(self, half_model_file):
        """Test that -o is required."""
        result = run_cli(["bify", str(half_model_file), "p"])
        assert result.returncode == 2


class TestSearchCommands:
    """Test sample and scan commands."""

    def test_sample_counterexample(self):
        """Test that sampling refutes p | ~p."""
        result = run_cli(["sample", "p | ~p", "--seed", "0", "-q"])
        assert result.returncode == 1
        assert result.stdout.startswith("COUNTEREXAMPLE at state")

    def test_sample_none(self):
        """Test sampling a valid formula."""
        result = run_cli(["sample", "p -> p", "--models", "20", "--seed", "1", "-q"])
        assert result.returncode == 0
        assert result.stdout.strip() == "NO COUNTEREXAMPLE (20 models)"

    def test_scan_counterexample(self):
        """Test that p | ~p fails on two worlds."""
        result = run_cli(["scan", "p | ~p", "--max-worlds", "2", "--max-states", "1"])
        assert result.returncode == 1
        assert result.stdout.startswith("NOT GLOBALLY TRUE")

    def test_scan_globally_true(self):
        """Test scanning a valid formula."""
        result = run_cli(["scan", "p -> p", "--max-worlds", "1", "--max-states", "1"])
        assert result.returncode == 0
        assert result.stdout.strip() == "GLOBALLY TRUE on 2 models"


class TestGeneralCLI:
    """Test general CLI behavior."""

    def test_help(self):
        """Test --help flag."""
        result = run_cli(["--help"])
        assert result.returncode == 0
        assert "check" in result.stdout

    def test_version(self):
        """Test --version flag."""
        result = run_cli(["--version"])
        assert result.returncode == 0
        assert "gtl" in result.stdout

    def test_no_command(self):
        """Test that no command prints help and fails."""
        result = run_cli([])
        assert result.returncode == 2

    def test_typo_suggestion(self):
        """Test the did-you-mean hint."""
        result = run_cli(["chek", "p"])
        assert result.returncode == 2
        assert "Did you mean 'check'?" in result.stderr

    def test_unknown_flag(self):
        """Test that unknown flags are rejected."""
        result = run_cli(["check", "p", "--bogus"])
        assert result.returncode == 2


class TestInProcess:
    """Test main() directly."""

    def test_moments_json(self, cli_runner):
        """Test the moments JSON envelope without a subprocess."""
        code, out, _ = cli_runner(["moments", "p", "--count-only", "--json"])
        assert code == 0
        assert json.loads(out) == {
            "command": "moments",
            "result": {"formula": "p", "count": 3},
            "diagnostics": [],
        }
