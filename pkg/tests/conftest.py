"""Pytest configuration and fixtures."""

import json
import tempfile
from pathlib import Path

import pytest


# Constant 1/2 on a single looping state
HALF_MODEL = {"kind": "real", "states": 1, "loopback": 0, "valuation": {"p": ["1/2"]}}

# Two states looping to 0, V(p) = (1, 1/3)
TWO_STATE_MODEL = {"kind": "real", "states": 2, "loopback": 0, "valuation": {"p": ["1", "1/3"]}}

# Worlds 0 < 1, one looping state, p at the lower world only
TWO_WORLD_MODEL = {
    "kind": "bi",
    "worlds": 2,
    "states": 1,
    "loopback": 0,
    "valuation": {"p": [[0, 0]], "q": []},
}


def _write(path: Path, data: dict) -> Path:
    path.write_text(json.dumps(data))
    return path


@pytest.fixture
def tmp_dir():
    """Create a temporary directory."""
    with tempfile.TemporaryDirectory() as d:
        yield Path(d)


@pytest.fixture
def half_model_file(tmp_dir):
    """Real model file with V(p) = 1/2."""
    return _write(tmp_dir / "half.json", HALF_MODEL)


@pytest.fixture
def two_state_model_file(tmp_dir):
    """Real model file with two states."""
    return _write(tmp_dir / "two_state.json", TWO_STATE_MODEL)


@pytest.fixture
def two_world_model_file(tmp_dir):
    """Bi-relational model file with two worlds."""
    return _write(tmp_dir / "two_world.json", TWO_WORLD_MODEL)


@pytest.fixture
def cli_runner(capsys):
    """Run gtl in-process and return (exit code, stdout, stderr)."""
    from gtl_cli.cli import main

    def run(args: list[str]):
        code = main(args)
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return run
