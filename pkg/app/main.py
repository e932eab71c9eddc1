# built-in Imports
from pathlib import Path
from typing import List, Optional

#? CLI Imports
import typer
from rich.console import Console
from rich.table import Table

#! Application Imports
from app.core.config.application_config import (APP_NAME, APP_VERSION,
                                                ORACLE_INSTANCES)
from app.experiments.repositories.result_repository import ResultRepository
from app.experiments.schemas.scenario_config import ScenarioConfig
from app.experiments.services.experiment_service import (ExperimentService,
                                                         load_config)
from app.utils.constants.constants import (EXIT_CONVERGED, EXIT_INFEASIBLE,
                                           EXIT_NOT_CONVERGED)
from app.utils.enums.game_mode import GameMode
from app.utils.errors.exception_handlers import handle_cli_exceptions
from app.utils.logger.application_logger import ApplicationLogger

_logger: ApplicationLogger = ApplicationLogger(name=__name__, log_to_console=True)

app = typer.Typer(name="backscatter-game", help=f"{APP_NAME} v{APP_VERSION}", add_completion=False)
console = Console()

ConfigOption = typer.Option(None, "--config", help="JSON scenario file; reference defaults when omitted.")
OutOption = typer.Option(Path("results"), "--out", help="Directory receiving the result files.")
SeedOption = typer.Option(None, "--seed", min=0, help="Overrides the placement seed.")
ModeOption = typer.Option(None, "--mode", help="Overrides the play mode.")


def _scenario(config: Optional[Path], seed: Optional[int], mode: Optional[GameMode]) -> ScenarioConfig:
    scenario = load_config(config) if config is not None else ScenarioConfig()
    overrides = {}
    if seed is not None:
        overrides["seed"] = seed
    if mode is not None:
        overrides["mode"] = GameMode(mode)
    return scenario.model_copy(update=overrides) if overrides else scenario


def _service(out: Path) -> ExperimentService:
    return ExperimentService(ResultRepository(out))


@app.command("run")
@handle_cli_exceptions
def run(
    config: Optional[Path] = ConfigOption,
    out: Path = OutOption,
    seed: Optional[int] = SeedOption,
    mode: Optional[GameMode] = ModeOption,
) -> None:
    """
    Plays one scenario and writes per-round rows and a summary.

    Exits 0 when the game converged, 2 when it hit the round cap, 3 when infeasible and 4 on a
    configuration error.
    """
    scenario = _scenario(config, seed, mode)
    summary = _service(out).run_scenario(scenario)

    table = Table(title=f"{summary.scenario_id} ({summary.mode.value})")
    for column in ("rounds", "converged", "U_B", "U_I", "P_I [W]", "rho"):
        table.add_column(column)
    table.add_row(str(summary.rounds), str(summary.converged), f"{summary.u_b:.6g}",
                  f"{summary.u_i:.6g}", f"{summary.p_i_watts:.6g}", f"{summary.rho:.4f}")
    console.print(table)

    if not summary.converged:
        _logger.log_warning(f"{summary.scenario_id} did not converge within {summary.rounds} rounds")
        raise typer.Exit(code=EXIT_NOT_CONVERGED)
    raise typer.Exit(code=EXIT_CONVERGED)


@app.command("sweep-rho")
@handle_cli_exceptions
def sweep_rho(
    config: Optional[Path] = ConfigOption,
    out: Path = OutOption,
    seed: Optional[int] = SeedOption,
    mode: Optional[GameMode] = ModeOption,
    points: int = typer.Option(50, "--points", min=2, help="Grid size when the scenario gives no rho_grid."),
) -> None:
    """Holds ρ at each grid value and records the converged leader utility."""
    scenario = _scenario(config, seed, mode)
    grid = scenario.rho_grid
    if grid is None:
        step = 0.98 / (points - 1)
        grid = [0.01 + step * i for i in range(points)]
    results = _service(out).sweep_rho(scenario, grid)
    completed = [point for point in results if not point.failed]
    console.print(f"{len(completed)}/{len(results)} sweep points completed")
    if not completed:
        raise typer.Exit(code=EXIT_INFEASIBLE)


@app.command("compare")
@handle_cli_exceptions
def compare(
    config: Optional[Path] = ConfigOption,
    out: Path = OutOption,
    seed: Optional[int] = SeedOption,
    tags: Optional[List[int]] = typer.Option(None, "--tags", help="Tag counts to compare; repeat the flag."),
) -> None:
    """Plays Stackelberg, Nash and fixed-power modes on identical scenarios."""
    scenario = _scenario(config, seed, None)
    summary = _service(out).compare_games(scenario, tags or None)

    table = Table(title="Stackelberg vs Nash")
    for column in ("N", "U_B stackelberg", "U_B nash", "U_I stackelberg", "U_I nash", "leader ≥", "follower ≥"):
        table.add_column(column)
    for entry in summary.entries:
        table.add_row(
            str(entry.n_tags), f"{entry.stackelberg.u_b:.6g}", f"{entry.nash.u_b:.6g}",
            f"{entry.stackelberg.u_i:.6g}", f"{entry.nash.u_i:.6g}",
            str(entry.leader_dominance), str(entry.follower_dominance))
    console.print(table)


@app.command("oracle-check")
@handle_cli_exceptions
def oracle_check(
    config: Optional[Path] = ConfigOption,
    out: Path = OutOption,
    seed: Optional[int] = SeedOption,
    instances: int = typer.Option(ORACLE_INSTANCES, "--instances", min=1, help="Random instances to certify."),
) -> None:
    """Certifies the solvers against the brute-force oracles; exits 2 unless every criterion holds."""
    scenario = _scenario(config, seed, None)
    report = _service(out).oracle_check(scenario, instances)
    console.print(
        f"instances={report.instances} interior={report.interior_instances} "
        f"follower_breaches={report.follower_breaches} "
        f"follower_stationarity_breaches={report.follower_stationarity_breaches} "
        f"curvature_breaches={report.curvature_breaches} multiplier_breaches={report.multiplier_breaches} "
        f"leader_grid_breaches={report.leader_grid_breaches} "
        f"hessian_checked={report.hessian_checked} hessian_negative_definite={report.hessian_negative_definite} "
        f"fallback_rate={report.fallback_rate:.3f}")
    if not report.passed:
        _logger.log_error(message="oracle check did not pass")
        raise typer.Exit(code=EXIT_NOT_CONVERGED)


if __name__ == "__main__":
    app()
