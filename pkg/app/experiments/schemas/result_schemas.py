"""
Pydantic schemas for everything the experiment drivers write to disk.
"""

from typing import Dict, List, Optional

from pydantic import BaseModel

from app.game.schemas.game_trace import GameTrace, RoundRecord
from app.utils.constants.constants import LIST_SEPARATOR
from app.utils.enums.game_mode import GameMode
from app.wsn.schemas.leader_state import (FeasibilityReport,
                                          StationarityResidual)


def _join(values) -> str:
    return LIST_SEPARATOR.join(repr(float(v)) if isinstance(v, float) else str(v) for v in values)


class ResultRow(BaseModel):
    """
    One CSV row per round per scenario.

    ``p_t_watts_list`` and ``channels`` hold per-tag values joined with ``;``.
    """

    scenario_id: str
    mode: GameMode
    round: int
    u_b: float
    u_i: float
    p_i_watts: float
    rho: float
    p_t_watts_list: str
    channels: str
    converged: bool

    @classmethod
    def from_record(cls, scenario_id: str, trace: GameTrace, record: RoundRecord) -> "ResultRow":
        return cls(
            scenario_id=scenario_id,
            mode=trace.mode,
            round=record.round,
            u_b=record.u_b,
            u_i=record.u_i,
            p_i_watts=record.follower.p_i,
            rho=record.leader.rho,
            p_t_watts_list=_join(record.leader.p_t),
            channels=_join(record.leader.active_channels),
            converged=trace.converged,
        )

    @classmethod
    def from_trace(cls, scenario_id: str, trace: GameTrace) -> List["ResultRow"]:
        return [cls.from_record(scenario_id, trace, record) for record in trace.rounds]


class ScenarioSummary(BaseModel):
    """
    Final state and diagnostics of one played scenario.
    """

    scenario_id: str
    mode: GameMode
    n_tags: int
    converged: bool
    convergence_round: Optional[int] = None
    rounds: int
    u_b: float
    u_i: float
    p_i_watts: float
    attacked_channel: int
    rho: float
    p_t_watts: List[float]
    channels: List[int]
    solver_paths: Dict[str, int]
    fallback_rate: float
    follower_residual: float
    leader_residual: StationarityResidual
    feasibility: FeasibilityReport


class SweepPoint(BaseModel):
    """
    Converged leader utility at one fixed ρ; failed points carry the error instead.
    """

    rho: float
    u_b: Optional[float] = None
    converged: bool = False
    failed: bool = False
    error: Optional[str] = None


class SweepSummary(BaseModel):
    scenario_id: str
    mode: GameMode
    points: int
    failed_points: int
    best_rho: Optional[float] = None
    best_u_b: Optional[float] = None


class ComparisonEntry(BaseModel):
    """
    Final-round utilities of the three play modes on one tag count.

    Attributes:
        leader_dominance (bool): U_B(Stackelberg) ≥ U_B(Nash) − 1e-9.
        follower_dominance (bool): U_I(Stackelberg) ≥ U_I(Nash) − 1e-9.
    """

    n_tags: int
    scenario_id: str
    stackelberg: ScenarioSummary
    nash: ScenarioSummary
    fixed_power: ScenarioSummary
    leader_dominance: bool
    follower_dominance: bool


class ComparisonSummary(BaseModel):
    scenario_id: str
    entries: List[ComparisonEntry]


class OracleReport(BaseModel):
    """
    Outcome of the certification suite.

    Attributes:
        instances (int): Random instances drawn.
        interior_instances (int): Of those, single-tag fixed-ρ instances whose anticipated optimum is interior.
        follower_breaches (int): Closed-form interferer power off the grid argmax by more than 1e-5·P_I,max.
        max_follower_error (float): Largest such distance, watts.
        follower_stationarity_breaches (int): Interior closed-form interferer powers whose first-order
            residual exceeds FOLLOWER_STATIONARITY_TOLERANCE relative to the price C_I + Σζ.
        curvature_breaches (int): Non-negative derived curvature, or finite differences disagreeing by > 1e-3.
        printed_curvature_breaches (int): Accepted optima where the published ∂²U_B/∂P_t² is not negative.
        multiplier_breaches (int): Negative multipliers after any leader update.
        leader_grid_breaches (int): Accepted optima beaten by the grid oracle by more than STATIONARITY_TOLERANCE.
        max_leader_grid_gap (float): Largest relative amount by which the grid beat an accepted optimum.
        leader_steps (int): Leader steps taken across all instances.
        fallback_steps (int): Steps taken by the numerical fallback.
        fallback_rate (float): fallback_steps / leader_steps.
        hessian_checked (int): Accepted optima where the anticipated objective's Hessian was evaluated.
        hessian_negative_definite (int): Those with a negative-definite verdict.
        hessian_boundary (int): Accepted optima too close to the boundary for the stencil.
        passed (bool): No breach of any kind, a fallback rate below ORACLE_MAX_FALLBACK_RATE, and at
            least one Hessian checked with every checked one negative definite.
    """

    instances: int
    interior_instances: int
    follower_breaches: int
    max_follower_error: float
    follower_stationarity_breaches: int
    curvature_breaches: int
    printed_curvature_breaches: int
    multiplier_breaches: int
    leader_grid_breaches: int
    max_leader_grid_gap: float
    leader_steps: int
    fallback_steps: int
    fallback_rate: float
    hessian_checked: int
    hessian_negative_definite: int
    hessian_boundary: int
    passed: bool
