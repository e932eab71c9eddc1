"""
Command-line tests through typer's CliRunner.
"""

from pathlib import Path

import pytest
from typer.testing import CliRunner

from app.main import app
from app.utils.constants.constants import (EXIT_CONFIG_ERROR, EXIT_CONVERGED,
                                           EXIT_INFEASIBLE, EXIT_NOT_CONVERGED)
from test.utils.conftest import write_config

runner = CliRunner()

SMALL = {
    "scenario_id": "cli",
    "n_tags": 2,
    "n_channels": 2,
    "max_rounds": 2,
    "tags": [{"r_hap": 1.0}, {"r_hap": 2.0}],
}

NEAR = {
    "scenario_id": "oracle",
    "n_tags": 2,
    "n_channels": 2,
    "seed": 3,
    "placement": {"min_radius": 0.5, "radius": 1.0},
}


class TestRunCommand:
    """Tests for the run command."""

    def test_run_writes_results(self, write_config, tmp_path: Path):
        """A small scenario runs and writes its files."""
        # Arrange
        config = write_config(SMALL)
        out = tmp_path / "out"

        # Act
        result = runner.invoke(app, ["run", "--config", str(config), "--out", str(out)])

        # Assert
        assert result.exit_code in (EXIT_CONVERGED, EXIT_NOT_CONVERGED)
        assert (out / "rows.csv").exists()
        assert (out / "summary.json").exists()

    def test_run_is_deterministic(self, write_config, tmp_path: Path):
        """Identical inputs give byte-identical rows."""
        # Arrange
        config = write_config(SMALL)

        # Act
        runner.invoke(app, ["run", "--config", str(config), "--out", str(tmp_path / "a"), "--mode", "nash"])
        runner.invoke(app, ["run", "--config", str(config), "--out", str(tmp_path / "b"), "--mode", "nash"])

        # Assert
        first = (tmp_path / "a" / "rows.csv").read_text(encoding="utf-8")
        second = (tmp_path / "b" / "rows.csv").read_text(encoding="utf-8")
        assert first == second
        assert ",nash," in first

    def test_invalid_config_exit_code(self, write_config, tmp_path: Path):
        """An out-of-range field exits with the configuration error code."""
        # Arrange
        config = write_config({"eta": 1.5})

        # Act
        result = runner.invoke(app, ["run", "--config", str(config), "--out", str(tmp_path)])

        # Assert
        assert result.exit_code == EXIT_CONFIG_ERROR

    def test_infeasible_exit_code(self, write_config, tmp_path: Path):
        """A tag at 5 m exits with the infeasible code."""
        # Arrange
        config = write_config({"n_tags": 1, "n_channels": 2, "max_rounds": 2, "tags": [{"r_hap": 5.0}]})

        # Act
        result = runner.invoke(app, ["run", "--config", str(config), "--out", str(tmp_path)])

        # Assert
        assert result.exit_code == EXIT_INFEASIBLE


class TestSweepCommand:
    """Tests for the sweep-rho command."""

    @pytest.mark.parametrize("points", [2])
    def test_sweep_writes_curve(self, write_config, tmp_path: Path, points: int):
        """--points sets the grid size when the scenario has none."""
        # Arrange
        config = write_config(SMALL)
        out = tmp_path / "sweep"

        # Act
        result = runner.invoke(app, ["sweep-rho", "--config", str(config), "--out", str(out), "--points", str(points)])

        # Assert
        assert result.exit_code == EXIT_CONVERGED
        lines = (out / "sweep_rho.csv").read_text(encoding="utf-8").splitlines()
        assert len(lines) == points + 1

    def test_all_points_failed(self, write_config, tmp_path: Path):
        """A sweep with no completed point exits with the infeasible code."""
        # Arrange
        config = write_config({"n_tags": 1, "n_channels": 2, "max_rounds": 2, "tags": [{"r_hap": 5.0}], "rho_grid": [0.5]})

        # Act
        result = runner.invoke(app, ["sweep-rho", "--config", str(config), "--out", str(tmp_path)])

        # Assert
        assert result.exit_code == EXIT_INFEASIBLE


class TestOracleCommand:
    """Tests for the oracle-check command."""

    def test_passing_check_exits_zero(self, write_config, tmp_path: Path):
        """Near tags plus one interior instance pass every criterion."""
        # Arrange
        config = write_config(NEAR)

        # Act
        result = runner.invoke(app, ["oracle-check", "--config", str(config), "--out", str(tmp_path), "--instances", "2"])

        # Assert
        assert result.exit_code == EXIT_CONVERGED
        assert (tmp_path / "oracle_report.json").exists()

    def test_unchecked_hessian_exits_not_converged(self, write_config, tmp_path: Path):
        """A single corner instance leaves no Hessian checked, which is not a pass."""
        # Arrange
        config = write_config(NEAR)

        # Act
        result = runner.invoke(app, ["oracle-check", "--config", str(config), "--out", str(tmp_path), "--instances", "1"])

        # Assert
        assert result.exit_code == EXIT_NOT_CONVERGED
