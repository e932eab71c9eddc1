"""
Pydantic schemas for the backscatter network (leader) side of the game.

This module defines the leader's decision and multiplier state, the composite coefficients of its
closed forms, and the diagnostic reports produced by the feasibility and stationarity checks.
"""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator

from app.utils.enums.game_mode import SolverPath


class LeaderState(BaseModel):
    """
    Leader action and Lagrange multipliers.

    Attributes:
        p_t (List[float]): Per-tag H-AP transmit power P_t,n, watts.
        rho (float): Network-wide time-switching ratio ρ.
        delta (List[List[int]]): N×K sub-channel indicators δ_{k,n}, stored row per tag.
        alpha (List[List[float]]): N×K SINR multipliers α_{k,n}.
        beta (List[float]): Per-tag power-cap multipliers β_n.
        mu (List[float]): Per-tag backscatter-energy multipliers μ_n.
        nu (float): Multiplier of ρ ≤ 1.
        tau (float): Multiplier of ρ ≥ 0.
        gamma (List[List[float]]): N×K harvest-threshold multipliers γ_{k,n}.
        utility (float): Objective value of the last accepted step.
        iteration (int): Leader iteration counter T_B of the last best response.
        feasible (bool): Whether the action met every constraint at acceptance.
        solver_path (Optional[SolverPath]): How the last accepted step was obtained.
        fallback_steps (int): Steps of the last best response that needed the numerical fallback.
        closed_form_steps (int): Steps of the last best response certified in closed form.
    """

    p_t: List[float]
    rho: float = Field(..., ge=0, le=1)
    delta: List[List[int]]
    alpha: List[List[float]]
    beta: List[float]
    mu: List[float]
    nu: float = Field(0.0, ge=0)
    tau: float = Field(0.0, ge=0)
    gamma: List[List[float]]
    utility: float = float("-inf")
    iteration: int = 0
    feasible: bool = True
    solver_path: Optional[SolverPath] = None
    fallback_steps: int = 0
    closed_form_steps: int = 0

    class Config:
        frozen = True

    @field_validator("beta", "mu")
    @classmethod
    def _nonnegative_vector(cls, value: List[float]) -> List[float]:
        if any(v < 0 for v in value):
            raise ValueError("multipliers must be >= 0")
        return value

    @field_validator("alpha", "gamma")
    @classmethod
    def _nonnegative_matrix(cls, value: List[List[float]]) -> List[List[float]]:
        if any(v < 0 for row in value for v in row):
            raise ValueError("multipliers must be >= 0")
        return value

    @classmethod
    def initial(cls, n_tags: int, n_channels: int, p_t: float, rho: float = 0.5, channel: int = 0) -> "LeaderState":
        """
        Builds the default starting point: equal power, one shared channel, all multipliers zero.
        """
        delta = np.zeros((n_tags, n_channels), dtype=int)
        delta[:, channel] = 1
        zeros_nk = np.zeros((n_tags, n_channels)).tolist()
        return cls(
            p_t=[p_t] * n_tags,
            rho=rho,
            delta=delta.tolist(),
            alpha=zeros_nk,
            beta=[0.0] * n_tags,
            mu=[0.0] * n_tags,
            gamma=zeros_nk,
        )

    @property
    def active_channels(self) -> List[int]:
        """Index of the set indicator in every δ row (first one when several are set)."""
        return [int(np.argmax(row)) for row in self.delta]

    def active_entries(self, matrix: List[List[float]]) -> np.ndarray:
        """Values of an N×K multiplier on each tag's active sub-channel."""
        values = np.asarray(matrix, dtype=float)
        return values[np.arange(values.shape[0]), self.active_channels]


class LeaderCoefficients(BaseModel):
    """
    Per-tag composites of the leader closed forms, evaluated on each tag's active sub-channel.

    Attributes:
        a (List[float]): A_{k,n}.
        b (List[float]): B_{k,n} = l_n·P_t,n·A_{k,n}.
        c (List[float]): C_n = C_I + ζ_n.
        d (List[float]): D_{k,n} = η(ρ−1)h_n(μ_n T + γ_{k,n}) − C_B − β_n.
        e (List[float]): E_{k,n} = η h_n T P_t,n + t_n T P_B,TH + ν − τ.
        f (List[float]): F_{k,n} = C_n/(A_{k,n} P_t,n)·((1+α_{k,n}) B_{k,n}/(2 E_{k,n}))².
        g (List[complex]): G_{k,n} as printed; complex when a radicand is negative.
    """

    a: List[float]
    b: List[float]
    c: List[float]
    d: List[float]
    e: List[float]
    f: List[float]
    g: List[complex]

    class Config:
        frozen = True


class LeaderStepQuantities(BaseModel):
    """
    Post-step quantities consumed by the multiplier updates.

    Attributes:
        sinr (List[float]): SINR*_{k,n} on each tag's active sub-channel.
        p_t (List[float]): Accepted transmit powers P*_t,n.
        rho (float): Accepted ρ*.
        energy (List[float]): Harvested energy E*_n.
    """

    sinr: List[float]
    p_t: List[float]
    rho: float
    energy: List[float]


class FeasibilityReport(BaseModel):
    """
    Signed slack of every leader constraint; non-negative means satisfied.

    Attributes:
        sinr (List[float]): SINR_n − SINR_TH.
        backscatter_energy (List[float]): E_n − ρ T P_B,TH t_n.
        power_cap (List[float]): P_t,max − P_t,n.
        binary_delta (List[float]): 0 for a valid δ row, minus the number of defects otherwise.
        rho_box (float): min(ρ, 1 − ρ).
        harvest (List[float]): E_n − η(1−ρ) T P_EH,TH.
        feasible (bool): All normalized slacks ≥ −tolerance.
        binding (Optional[str]): Name of the most violated constraint, if any.
    """

    sinr: List[float]
    backscatter_energy: List[float]
    power_cap: List[float]
    binary_delta: List[float]
    rho_box: float
    harvest: List[float]
    feasible: bool
    binding: Optional[str] = None

    def nonnegative_count(self) -> int:
        """Number of individual slacks that are ≥ 0."""
        values = [*self.sinr, *self.backscatter_energy, *self.power_cap, *self.binary_delta, self.rho_box, *self.harvest]
        return sum(1 for v in values if v >= 0)


class LagrangianGradient(BaseModel):
    """
    Analytic gradient of the leader's Lagrangian, with the follower's reaction folded in when anticipated.

    Attributes:
        power (List[float]): ∂L/∂P_t,n.
        rho (float): ∂L/∂ρ.
        power_scale (List[float]): Sum of the absolute terms of each ∂L/∂P_t,n.
        rho_scale (float): Sum of the absolute terms of ∂L/∂ρ.
    """

    power: List[float]
    rho: float
    power_scale: List[float]
    rho_scale: float


class StationarityResidual(BaseModel):
    """
    KKT residuals of the leader's Lagrangian with respect to P_t,n and ρ.

    Attributes:
        power (List[float]): Per-tag residual of the printed transmit-power condition.
        rho (List[float]): Per-tag residual of the printed time-switching condition.
        boundary (bool): True when the point is not interior.
        gradient (Optional[LagrangianGradient]): Analytic gradient, when an interference model was given.
        kkt_satisfied (Optional[bool]): Verdict of the box KKT conditions on ``gradient``.
    """

    power: List[float]
    rho: List[float]
    boundary: bool = False
    gradient: Optional[LagrangianGradient] = None
    kkt_satisfied: Optional[bool] = None


class PrintedHessian(BaseModel):
    """
    Published second-derivative entries of U_B, evaluated per tag.

    Attributes:
        p_t_p_t (List[float]): ∂²U_B/∂P_t,n².
        rho_rho (List[float]): ∂²U_B/∂ρ².
        cross (List[complex]): ∂²U_B/∂P_t,n∂ρ; complex when D·(ρ − ρ²)/C_n < 0.
    """

    p_t_p_t: List[float]
    rho_rho: List[float]
    cross: List[complex]
