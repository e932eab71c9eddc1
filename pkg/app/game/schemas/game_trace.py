"""
Pydantic schemas for played games: per-round records, whole traces and equilibrium reports.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from app.interferer.schemas.follower_state import FollowerState
from app.utils.enums.game_mode import GameMode
from app.wsn.schemas.leader_state import (FeasibilityReport, LeaderState,
                                          StationarityResidual)


class RoundRecord(BaseModel):
    """
    One round of play.

    Attributes:
        round (int): Round index, starting at 1.
        leader (LeaderState): Leader action and multipliers after the round.
        follower (FollowerState): Follower action and multipliers after the round.
        p_i_profile (List[float]): Interference power per sub-channel produced by ``follower``.
        u_b (float): U_B of ``leader`` under ``p_i_profile``.
        u_i (float): U_I of ``follower`` against ``leader``.
        channel_shift (bool): Whether any tag changed sub-channel this round.
        fallback_steps (int): Leader steps of this round taken by the numerical fallback.
    """

    round: int = Field(..., ge=1)
    leader: LeaderState
    follower: FollowerState
    p_i_profile: List[float]
    u_b: float
    u_i: float
    channel_shift: bool = False
    fallback_steps: int = 0


class GameTrace(BaseModel):
    """
    Ordered rounds of one game.

    Attributes:
        mode (GameMode): How the game was played.
        rounds (List[RoundRecord]): Round records, indices strictly increasing from 1.
        converged (bool): Both utilities settled before the round cap.
        convergence_round (Optional[int]): Round at which the settling was detected.
        fixed_rho (Optional[float]): ρ held constant during play, if any.
    """

    mode: GameMode
    rounds: List[RoundRecord] = Field(default_factory=list)
    converged: bool = False
    convergence_round: Optional[int] = None
    fixed_rho: Optional[float] = None

    @property
    def last(self) -> RoundRecord:
        return self.rounds[-1]

    def solver_path_counts(self) -> Dict[str, int]:
        """Leader steps per solver path over the whole game."""
        fallback = sum(record.leader.fallback_steps for record in self.rounds)
        closed_form = sum(record.leader.closed_form_steps for record in self.rounds)
        return {"closed_form": closed_form, "fallback": fallback}


class EquilibriumReport(BaseModel):
    """
    Convergence verdict and last-round diagnostics of a trace.

    When ``converged`` is False the report only describes the last round; it claims no equilibrium.
    """

    mode: GameMode
    converged: bool
    convergence_round: Optional[int] = None
    rounds: int
    u_b: float
    u_i: float
    leader: LeaderState
    follower: FollowerState
    follower_residual: float
    leader_residual: StationarityResidual
    feasibility: FeasibilityReport
    solver_paths: Dict[str, int]
