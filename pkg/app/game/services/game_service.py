"""
Game engine: alternating leader/follower play, the simultaneous-move baseline, the fixed-power
baseline, and equilibrium detection.
"""

from typing import List, Optional, Tuple

import numpy as np

from app.core.config.application_config import (DEFAULT_MAX_ROUNDS,
                                                GAME_RELATIVE_TOLERANCE)
from app.game.schemas.game_trace import (EquilibriumReport, GameTrace,
                                         RoundRecord)
from app.interferer.schemas.follower_state import FollowerState
from app.interferer.services.interferer_service import InterfererSolverService
from app.link_model.schemas.system_params import ChannelState, SystemParams
from app.utils.enums.game_mode import GameMode
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions
from app.utils.errors.exceptions import DomainException
from app.utils.logger.application_logger import ApplicationLogger
from app.wsn.schemas.leader_state import LeaderState
from app.wsn.services.wsn_service import WsnSolverService

_COMPONENT = "GameService"
_logger: ApplicationLogger = ApplicationLogger(name=__name__, log_to_console=False)


def _relative_change(previous: float, current: float) -> float:
    scale = max(abs(previous), abs(current))
    return 0.0 if scale == 0 else abs(current - previous) / scale


class GameService:
    """
    Plays the leader/follower game on one scenario.

    Args:
        params (SystemParams): Scenario constants.
        channels (ChannelState): Per-tag gains.
        tolerance (float): Relative utility change below which a round counts as settled.
    """

    def __init__(self, params: SystemParams, channels: ChannelState, tolerance: float = GAME_RELATIVE_TOLERANCE):
        self.params = params
        self.channels = channels
        self.tolerance = tolerance
        self.interferer = InterfererSolverService(params, channels)
        self.wsn = WsnSolverService(params, channels, self.interferer)

    def initial_states(self, fixed_rho: Optional[float] = None) -> Tuple[LeaderState, FollowerState]:
        """P_t,n = P_t,max/2, ρ = 0.5 (or ``fixed_rho``), every tag on sub-channel 0, silent interferer."""
        leader = LeaderState.initial(
            n_tags=self.params.n_tags,
            n_channels=self.params.n_channels,
            p_t=self.params.p_t_max / 2.0,
            rho=0.5 if fixed_rho is None else fixed_rho,
        )
        return leader, FollowerState.silent(self.params.n_tags)

    def profile_of(self, follower: FollowerState) -> List[float]:
        return self.interferer.interference_profile(follower.p_i, follower.attacked_channel).tolist()

    def _record(self, index: int, previous: LeaderState, leader: LeaderState, follower: FollowerState) -> RoundRecord:
        profile = self.profile_of(follower)
        return RoundRecord(
            round=index,
            leader=leader,
            follower=follower,
            p_i_profile=profile,
            u_b=self.wsn.utility_wsn(leader, profile),
            u_i=self.interferer.utility(leader, follower.p_i, follower.attacked_channel),
            channel_shift=leader.delta != previous.delta,
            fallback_steps=leader.fallback_steps,
        )

    def _settled(self, rounds: List[RoundRecord]) -> bool:
        if len(rounds) < 2:
            return False
        before, after = rounds[-2], rounds[-1]
        return (_relative_change(before.u_b, after.u_b) < self.tolerance
                and _relative_change(before.u_i, after.u_i) < self.tolerance)

    def _finish(self, trace: GameTrace) -> GameTrace:
        last = trace.last
        _logger.log_event(
            "game_finished", mode=trace.mode.value, rounds=last.round, converged=trace.converged,
            u_b=last.u_b, u_i=last.u_i)
        if not trace.converged:
            _logger.log_warning(f"{trace.mode.value} play did not converge within {last.round} rounds")
        return trace

    def _play(self, mode: GameMode, step, max_rounds: int, fixed_rho: Optional[float],
              leader: Optional[LeaderState], follower: Optional[FollowerState]) -> GameTrace:
        if max_rounds < 1:
            raise DomainException(details=f"max_rounds must be >= 1, got {max_rounds}.")
        default_leader, default_follower = self.initial_states(fixed_rho)
        leader = leader or default_leader
        follower = follower or default_follower
        trace = GameTrace(mode=mode, fixed_rho=fixed_rho)
        for index in range(1, max_rounds + 1):
            previous = leader
            leader, follower = step(leader, follower)
            trace.rounds.append(self._record(index, previous, leader, follower))
            _logger.log_event("round_completed", mode=mode.value, round=index,
                              u_b=trace.rounds[-1].u_b, u_i=trace.rounds[-1].u_i)
            if self._settled(trace.rounds):
                trace.converged = True
                trace.convergence_round = index
                break
        return self._finish(trace)

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.PLAY)
    def play_stackelberg(
        self,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
        fixed_rho: Optional[float] = None,
        leader: Optional[LeaderState] = None,
        follower: Optional[FollowerState] = None,
    ) -> GameTrace:
        """
        Each round the follower answers the current leader action, then the leader re-optimizes
        against that answer while anticipating the follower's reaction.

        Raises:
            InfeasibleScenarioException: Propagated from the leader solver.
        """
        def step(current_leader: LeaderState, current_follower: FollowerState):
            new_follower = self.interferer.best_response(current_leader, current_follower)
            new_leader = self.wsn.leader_best_response(
                self.profile_of(new_follower), current_leader, zeta=new_follower.zeta,
                anticipate=True, fixed_rho=fixed_rho)
            return new_leader, new_follower

        return self._play(GameMode.STACKELBERG, step, max_rounds, fixed_rho, leader, follower)

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.PLAY)
    def play_nash(
        self,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
        fixed_rho: Optional[float] = None,
        leader: Optional[LeaderState] = None,
        follower: Optional[FollowerState] = None,
    ) -> GameTrace:
        """
        Simultaneous best responses: both players answer the opponent's previous-round action, and
        the leader optimizes at the observed interference without anticipating a reaction.
        """
        def step(current_leader: LeaderState, current_follower: FollowerState):
            new_follower = self.interferer.best_response(current_leader, current_follower)
            new_leader = self.wsn.leader_best_response(
                self.profile_of(current_follower), current_leader, zeta=current_follower.zeta,
                anticipate=False, fixed_rho=fixed_rho)
            return new_leader, new_follower

        return self._play(GameMode.NASH, step, max_rounds, fixed_rho, leader, follower)

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.PLAY)
    def play_fixed_power(
        self,
        power: float,
        max_rounds: int = DEFAULT_MAX_ROUNDS,
        fixed_rho: Optional[float] = None,
    ) -> GameTrace:
        """The interferer always transmits ``power`` on the strongest-signal sub-channel."""
        def step(current_leader: LeaderState, current_follower: FollowerState):
            new_follower = self.interferer.fixed_power_response(current_leader, power)
            new_leader = self.wsn.leader_best_response(
                self.profile_of(new_follower), current_leader, anticipate=False, fixed_rho=fixed_rho)
            return new_leader, new_follower

        return self._play(GameMode.FIXED_POWER, step, max_rounds, fixed_rho, None, None)

    def play(self, mode: GameMode, max_rounds: int = DEFAULT_MAX_ROUNDS, fixed_rho: Optional[float] = None,
             fixed_power: Optional[float] = None) -> GameTrace:
        match GameMode(mode):
            case GameMode.STACKELBERG:
                return self.play_stackelberg(max_rounds, fixed_rho)
            case GameMode.NASH:
                return self.play_nash(max_rounds, fixed_rho)
            case GameMode.FIXED_POWER:
                power = self.params.p_i_max if fixed_power is None else fixed_power
                return self.play_fixed_power(power, max_rounds, fixed_rho)

    @staticmethod
    def convergence_round(trace: GameTrace, tol: float = GAME_RELATIVE_TOLERANCE) -> Optional[int]:
        """
        First round after which every relative change of U_B and U_I stays below ``tol``.

        The round must precede the last one, so a single-round trace never counts as converged.
        """
        rounds = trace.rounds
        candidate = None
        for position in range(len(rounds) - 1, 0, -1):
            before, after = rounds[position - 1], rounds[position]
            if (_relative_change(before.u_b, after.u_b) < tol
                    and _relative_change(before.u_i, after.u_i) < tol):
                candidate = before.round
            else:
                break
        return candidate

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.STATIONARITY_CHECK)
    def detect_equilibrium(self, trace: GameTrace, tol: float = GAME_RELATIVE_TOLERANCE) -> EquilibriumReport:
        """
        Convergence round plus stationarity residuals and feasibility slacks at the last round.

        Raises:
            DomainException: If the trace has no rounds.
        """
        if not trace.rounds:
            raise DomainException(details="cannot detect an equilibrium on an empty trace.")
        last = trace.last
        converged_at = self.convergence_round(trace, tol)
        zeta = np.asarray(last.follower.zeta, dtype=float)
        coefficients = self.wsn.coefficients(last.leader, zeta)
        if trace.mode is GameMode.STACKELBERG:
            interference = {"zeta": zeta}
        else:
            interference = {"p_i_profile": last.p_i_profile}
        return EquilibriumReport(
            mode=trace.mode,
            converged=converged_at is not None,
            convergence_round=converged_at,
            rounds=last.round,
            u_b=last.u_b,
            u_i=last.u_i,
            leader=last.leader,
            follower=last.follower,
            follower_residual=self.interferer.check_stationarity(last.leader, last.follower.p_i, zeta),
            leader_residual=self.wsn.check_leader_stationarity(
                last.leader, coefficients, **interference, rho_fixed=trace.fixed_rho is not None),
            feasibility=self.wsn.check_leader_feasibility(last.leader, last.p_i_profile),
            solver_paths=trace.solver_path_counts(),
        )
