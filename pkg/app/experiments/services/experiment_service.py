"""
Experiment drivers: configuration loading, single runs, ρ sweeps, mode comparisons and the
certification suite.
"""

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import ValidationError

from app.core.config.application_config import (
    FOLLOWER_STATIONARITY_TOLERANCE, ORACLE_INSTANCES, ORACLE_MAX_FALLBACK_RATE,
    STATIONARITY_TOLERANCE, SWEEP_WORKERS)
from app.experiments.repositories.result_repository import ResultRepository
from app.experiments.schemas.result_schemas import (ComparisonEntry,
                                                    ComparisonSummary,
                                                    OracleReport, ResultRow,
                                                    ScenarioSummary,
                                                    SweepPoint, SweepSummary)
from app.experiments.schemas.scenario_config import (ScenarioConfig,
                                                     TagPlacement)
from app.game.schemas.game_trace import GameTrace
from app.game.services.game_service import GameService
from app.interferer.schemas.follower_state import FollowerState
from app.link_model.schemas.system_params import ChannelState, SystemParams
from app.link_model.services.link_model import build_channel_state
from app.oracle.schemas.grid_spec import GridSpec
from app.oracle.services.oracle_service import (finite_diff_hessian,
                                                grid_max_follower,
                                                grid_max_leader)
from app.utils.constants.constants import (COMPARE_FILE_NAME,
                                           COMPARE_SUMMARY_FILE_NAME,
                                           LEADER_GRID_RESOLUTION,
                                           ORACLE_GRID_RESOLUTION,
                                           ORACLE_INTERIOR_RADIUS,
                                           ORACLE_INTERIOR_RHO,
                                           ORACLE_REPORT_FILE_NAME,
                                           ROWS_FILE_NAME, SUMMARY_FILE_NAME,
                                           SWEEP_FILE_NAME,
                                           SWEEP_SUMMARY_FILE_NAME)
from app.utils.enums.game_mode import GameMode
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions
from app.utils.errors.exceptions import (BaseGameException,
                                         BoundaryPointException,
                                         ConfigValidationException)
from app.utils.logger.application_logger import ApplicationLogger
from app.wsn.schemas.leader_state import LeaderState

_COMPONENT = "ExperimentService"
_logger: ApplicationLogger = ApplicationLogger(name=__name__, log_to_console=False)

DOMINANCE_SLACK = 1e-9


def _format_validation_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first.get("loc", ())) or "<root>"
    return f"{location}: {first.get('msg', 'invalid value')}"


def load_config(path: Path) -> ScenarioConfig:
    """
    Reads and validates a JSON scenario file.

    Args:
        path (Path): JSON file; ``{}`` yields the default scenario.

    Returns:
        ScenarioConfig: Validated configuration.

    Raises:
        ConfigValidationException: Unreadable file, malformed JSON or an invalid field.
        DegenerateGameException: If Γ0 = Γ1.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigValidationException(details=f"cannot read {path}: {e}") from e
    try:
        config = ScenarioConfig.model_validate_json(text)
    except ValidationError as e:
        _logger.log_error(message=f"invalid configuration {path}: {_format_validation_error(e)}")
        raise ConfigValidationException(details=_format_validation_error(e)) from e
    config.to_system_params()
    return config


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LOAD_CONFIG)
def build_scenario(config: ScenarioConfig) -> Tuple[SystemParams, ChannelState]:
    """Linear parameters and channel gains for ``config``."""
    params = config.to_system_params()
    return params, build_channel_state(params, config.geometry())


class ExperimentService:
    """
    Runs scenarios and writes their results through a ResultRepository.
    """

    def __init__(self, repository: ResultRepository) -> None:
        self._repository = repository

    @staticmethod
    def summarize(scenario_id: str, game: GameService, trace: GameTrace) -> ScenarioSummary:
        report = game.detect_equilibrium(trace)
        last = trace.last
        paths = trace.solver_path_counts()
        steps = paths["closed_form"] + paths["fallback"]
        return ScenarioSummary(
            scenario_id=scenario_id,
            mode=trace.mode,
            n_tags=game.params.n_tags,
            converged=trace.converged,
            convergence_round=trace.convergence_round,
            rounds=last.round,
            u_b=last.u_b,
            u_i=last.u_i,
            p_i_watts=last.follower.p_i,
            attacked_channel=last.follower.attacked_channel,
            rho=last.leader.rho,
            p_t_watts=last.leader.p_t,
            channels=last.leader.active_channels,
            solver_paths=paths,
            fallback_rate=paths["fallback"] / steps if steps else 0.0,
            follower_residual=report.follower_residual,
            leader_residual=report.leader_residual,
            feasibility=report.feasibility,
        )

    @staticmethod
    def _play(config: ScenarioConfig, mode: GameMode, fixed_rho: Optional[float] = None) -> Tuple[GameService, GameTrace]:
        params, channels = build_scenario(config)
        game = GameService(params, channels)
        trace = game.play(mode, max_rounds=config.max_rounds, fixed_rho=fixed_rho,
                          fixed_power=config.fixed_interference_watts())
        return game, trace

    def run_scenario(self, config: ScenarioConfig) -> ScenarioSummary:
        """
        Plays ``config.mode`` and writes one row per round plus a summary.

        Raises:
            InfeasibleScenarioException: If the leader's constraint set is empty.
        """
        _logger.log_event("run_started", scenario=config.scenario_id, mode=config.mode.value, n_tags=config.n_tags)
        game, trace = self._play(config, config.mode)
        summary = self.summarize(config.scenario_id, game, trace)
        self._repository.write_rows(ResultRow.from_trace(config.scenario_id, trace), ROWS_FILE_NAME)
        self._repository.write_summary(summary, SUMMARY_FILE_NAME)
        return summary

    def _sweep_point(self, config: ScenarioConfig, rho: float) -> SweepPoint:
        try:
            _, trace = self._play(config, config.mode, fixed_rho=rho)
        except BaseGameException as e:
            _logger.log_warning(f"sweep point rho={rho} failed: {e.message} {e.details}")
            return SweepPoint(rho=rho, failed=True, error=f"{e.message} {e.details}")
        return SweepPoint(rho=rho, u_b=trace.last.u_b, converged=trace.converged)

    def sweep_rho(self, config: ScenarioConfig, rho_grid: Optional[List[float]] = None) -> List[SweepPoint]:
        """
        Plays the game with ρ held at each grid value and records the final U_B.

        Points run concurrently; output order follows ``rho_grid``. Failed points are kept with a
        failure marker and do not stop the sweep.

        Raises:
            ConfigValidationException: If a grid value lies outside (0, 1).
        """
        grid = rho_grid if rho_grid is not None else config.rho_grid
        if grid is None:
            grid = np.linspace(0.01, 0.99, 50).tolist()
        if not grid or any(not 0 < rho < 1 for rho in grid):
            raise ConfigValidationException(details="rho_grid: values must lie strictly inside (0, 1)")
        with ThreadPoolExecutor(max_workers=SWEEP_WORKERS) as pool:
            points = list(pool.map(lambda rho: self._sweep_point(config, float(rho)), grid))

        completed = [point for point in points if not point.failed]
        best = max(completed, key=lambda point: point.u_b, default=None)
        self._repository.write_sweep(points, SWEEP_FILE_NAME)
        self._repository.write_summary(SweepSummary(
            scenario_id=config.scenario_id,
            mode=config.mode,
            points=len(points),
            failed_points=len(points) - len(completed),
            best_rho=None if best is None else best.rho,
            best_u_b=None if best is None else best.u_b,
        ), SWEEP_SUMMARY_FILE_NAME)
        _logger.log_event("sweep_finished", points=len(points), failed=len(points) - len(completed))
        return points

    def compare_games(self, config: ScenarioConfig, tag_counts: Optional[List[int]] = None) -> ComparisonSummary:
        """
        Plays Stackelberg, Nash and fixed-power modes on identical scenarios for every tag count.
        """
        rows: List[ResultRow] = []
        entries: List[ComparisonEntry] = []
        for n_tags in tag_counts or config.compare_tag_counts:
            scenario = config.model_copy(update={
                "n_tags": n_tags,
                "tags": config.tags if config.tags is not None and len(config.tags) == n_tags else None,
            })
            scenario_id = f"{config.scenario_id}-n{n_tags}"
            summaries = {}
            for mode in (GameMode.STACKELBERG, GameMode.NASH, GameMode.FIXED_POWER):
                game, trace = self._play(scenario, mode)
                rows.extend(ResultRow.from_trace(scenario_id, trace))
                summaries[mode] = self.summarize(scenario_id, game, trace)
            stackelberg, nash = summaries[GameMode.STACKELBERG], summaries[GameMode.NASH]
            entries.append(ComparisonEntry(
                n_tags=n_tags,
                scenario_id=scenario_id,
                stackelberg=stackelberg,
                nash=nash,
                fixed_power=summaries[GameMode.FIXED_POWER],
                leader_dominance=stackelberg.u_b >= nash.u_b - DOMINANCE_SLACK,
                follower_dominance=stackelberg.u_i >= nash.u_i - DOMINANCE_SLACK,
            ))
            _logger.log_event("comparison_finished", n_tags=n_tags,
                              leader_dominance=entries[-1].leader_dominance,
                              follower_dominance=entries[-1].follower_dominance)
        summary = ComparisonSummary(scenario_id=config.scenario_id, entries=entries)
        self._repository.write_rows(rows, COMPARE_FILE_NAME)
        self._repository.write_summary(summary, COMPARE_SUMMARY_FILE_NAME)
        return summary

    @staticmethod
    def _interior_instance(config: ScenarioConfig, rng: np.random.Generator) -> Tuple[ScenarioConfig, float]:
        """One tag close to the H-AP with ρ held mid-range, where the anticipated optimum is interior."""
        tag = TagPlacement(r_hap=float(rng.uniform(*ORACLE_INTERIOR_RADIUS)), r_interferer=config.placement.r_interferer)
        scenario = config.model_copy(update={"n_tags": 1, "tags": [tag], "seed": int(rng.integers(0, 2 ** 31))})
        return scenario, float(rng.uniform(*ORACLE_INTERIOR_RHO))

    @staticmethod
    def _certify_follower(game: GameService, leader: LeaderState, zeta: List[float],
                          rng: np.random.Generator, tally: Counter) -> float:
        params = game.params
        closed_form = game.interferer.optimal_interference_power(leader, zeta)
        grid_power, _ = grid_max_follower(game.interferer, leader, zeta)
        error = abs(closed_form - grid_power)
        tally["follower"] += int(error > 1e-5 * params.p_i_max)
        if 0.0 < closed_form < params.p_i_max:
            price = params.cost_interferer + float(np.sum(zeta))
            residual = game.interferer.check_stationarity(leader, closed_form, zeta)
            tally["follower_stationarity"] += int(abs(residual) > FOLLOWER_STATIONARITY_TOLERANCE * price)

        sample_power = float(rng.uniform(0.1, 0.9) * params.p_i_max)
        derived = game.interferer.curvature(leader, sample_power)
        numeric = finite_diff_hessian(
            lambda x: game.interferer.utility(leader, float(x[0])), [sample_power], 1e-4 * params.p_i_max).matrix[0][0]
        tally["curvature"] += int(not derived < 0 or abs(numeric - derived) > 1e-3 * abs(derived))
        return error

    @staticmethod
    def _certify_leader(game: GameService, leader: LeaderState, fixed_rho: Optional[float], tally: Counter) -> float:
        params = game.params
        lower, upper = params.rho_bounds
        follower = game.interferer.best_response(leader, FollowerState.silent(params.n_tags))
        zeta = follower.zeta
        response = game.wsn.leader_best_response(
            game.profile_of(follower), leader, zeta=zeta, anticipate=True, fixed_rho=fixed_rho)
        tally["leader_steps"] += response.closed_form_steps + response.fallback_steps
        tally["fallback_steps"] += response.fallback_steps
        multipliers = [*np.ravel(response.alpha), *response.beta, *response.mu, response.nu, response.tau, *np.ravel(response.gamma)]
        tally["multiplier"] += int(any(value < 0 for value in multipliers))

        coeffs = game.wsn.coefficients(response, zeta)
        printed = np.asarray(game.wsn.printed_hessian_entries(response, coeffs).p_t_p_t, dtype=float)
        transmitting = (np.asarray(response.p_t) > 0) & (np.asarray(coeffs.a) > 0)
        tally["printed_curvature"] += int(np.any(~(printed[transmitting] < 0)))

        # All multipliers zero: the Lagrangian the grid maximizes is U_B itself.
        bare = LeaderState.initial(params.n_tags, params.n_channels, p_t=params.p_t_max, rho=response.rho)
        bare = bare.model_copy(update={"p_t": response.p_t, "delta": response.delta})
        if fixed_rho is None:
            grid = GridSpec(bounds=[(0.0, params.p_t_max), (lower, upper)], resolution=ORACLE_GRID_RESOLUTION)
        else:
            grid = GridSpec(bounds=[(0.0, params.p_t_max)], resolution=LEADER_GRID_RESOLUTION)
        _, grid_value = grid_max_leader(game.wsn, bare, zeta=zeta, grid=grid, fixed_rho=fixed_rho)
        accepted = game.wsn.anticipated_utility_wsn(response, zeta)
        gap = (grid_value - accepted) / max(abs(grid_value), 1e-300)
        tally["leader_grid"] += int(gap > STATIONARITY_TOLERANCE)

        def anticipated(x: np.ndarray) -> float:
            update = {"p_t": [float(x[0])] + response.p_t[1:]}
            if fixed_rho is None:
                update["rho"] = float(x[1])
            return game.wsn.anticipated_utility_wsn(response.model_copy(update=update), zeta)

        if fixed_rho is None:
            point = [response.p_t[0], response.rho]
            step = [1e-5 * params.p_t_max, 1e-5 * (upper - lower)]
            bounds = [(0.0, params.p_t_max), (lower, upper)]
        else:
            point = [response.p_t[0]]
            step = [1e-3 * max(response.p_t[0], 1e-6 * params.p_t_max)]
            bounds = [(0.0, params.p_t_max)]
        try:
            verdict = finite_diff_hessian(anticipated, point, step, bounds=bounds)
            tally["hessian_checked"] += 1
            tally["hessian_negative"] += int(verdict.negative_definite)
        except BoundaryPointException:
            tally["hessian_boundary"] += 1
        return max(gap, 0.0)

    def oracle_check(self, config: ScenarioConfig, instances: int = ORACLE_INSTANCES) -> OracleReport:
        """
        Certifies the solvers on random instances drawn around ``config``.

        Even instances redraw the placement and start from a random ρ; odd ones hold ρ fixed for a
        single tag close to the H-AP, where the anticipated optimum lies inside the power box. Per
        instance: the interferer's closed-form power against the grid oracle and its first-order
        residual, the sign and finite-difference agreement of its curvature, then one anticipated
        leader best response checked for multiplier non-negativity, the sign of the published
        ∂²U_B/∂P_t², agreement with the leader grid oracle and the Hessian verdict at the accepted action.
        """
        rng = np.random.default_rng(config.seed)
        tally: Counter = Counter()
        max_error = max_gap = 0.0
        interior_instances = 0
        for index in range(instances):
            fixed_rho: Optional[float] = None
            if index % 2:
                scenario, fixed_rho = self._interior_instance(config, rng)
                interior_instances += 1
            else:
                scenario = config.model_copy(update={"seed": int(rng.integers(0, 2 ** 31)), "tags": None})
            params, channels = build_scenario(scenario)
            game = GameService(params, channels)
            lower, upper = params.rho_bounds
            leader = LeaderState.initial(
                params.n_tags, params.n_channels, p_t=float(rng.uniform(0.1, 1.0) * params.p_t_max),
                rho=fixed_rho if fixed_rho is not None else float(rng.uniform(lower, upper)))
            zeta = rng.uniform(0.0, 0.1 * params.cost_interferer + 1e-3, size=params.n_tags).tolist()

            max_error = max(max_error, self._certify_follower(game, leader, zeta, rng, tally))
            max_gap = max(max_gap, self._certify_leader(game, leader, fixed_rho, tally))
            _logger.log_debug(f"oracle instance {index} done")

        leader_steps = tally["leader_steps"]
        fallback_rate = tally["fallback_steps"] / leader_steps if leader_steps else 0.0
        breaches = ("follower", "follower_stationarity", "curvature", "printed_curvature", "multiplier", "leader_grid")
        passed = (
            all(tally[kind] == 0 for kind in breaches)
            and fallback_rate < ORACLE_MAX_FALLBACK_RATE
            and tally["hessian_checked"] > 0
            and tally["hessian_negative"] == tally["hessian_checked"]
        )
        report = OracleReport(
            instances=instances,
            interior_instances=interior_instances,
            follower_breaches=tally["follower"],
            max_follower_error=max_error,
            follower_stationarity_breaches=tally["follower_stationarity"],
            curvature_breaches=tally["curvature"],
            printed_curvature_breaches=tally["printed_curvature"],
            multiplier_breaches=tally["multiplier"],
            leader_grid_breaches=tally["leader_grid"],
            max_leader_grid_gap=max_gap,
            leader_steps=leader_steps,
            fallback_steps=tally["fallback_steps"],
            fallback_rate=fallback_rate,
            hessian_checked=tally["hessian_checked"],
            hessian_negative_definite=tally["hessian_negative"],
            hessian_boundary=tally["hessian_boundary"],
            passed=passed,
        )
        self._repository.write_summary(report, ORACLE_REPORT_FILE_NAME)
        _logger.log_event("oracle_check_finished", level=logging.INFO if passed else logging.WARNING,
                          passed=passed, fallback_rate=fallback_rate, hessian_checked=report.hessian_checked,
                          leader_grid_breaches=report.leader_grid_breaches)
        return report
