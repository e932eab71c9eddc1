"""
Follower-side solver: the smart interferer's utility, closed-form power and best-response loop.
"""

from typing import List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import bisect

from app.core.config.application_config import (SOLVER_MAX_ITERATIONS,
                                                SOLVER_RELATIVE_TOLERANCE)
from app.interferer.schemas.follower_state import FollowerState
from app.link_model.schemas.system_params import ChannelState, SystemParams
from app.link_model.services.link_model import backscatter_signal
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions
from app.utils.errors.exceptions import DegenerateGameException
from app.utils.logger.application_logger import ApplicationLogger
from app.wsn.schemas.leader_state import LeaderState

_COMPONENT = "InterfererSolverService"
_logger: ApplicationLogger = ApplicationLogger(name=__name__, log_to_console=False)


def _as_float(value):
    return float(value) if np.ndim(value) == 0 else value


class InterfererSolverService:
    """
    Solves the interferer's power-control problem against an observed leader action.

    The interferer puts P_I on one attacked sub-channel and ε·P_I on every other one. Its utility
    is the negative sum of the tags' SINR numerators over their interference-plus-noise power, minus
    C_I·P_I.
    """

    def __init__(self, params: SystemParams, channels: ChannelState):
        self.params = params
        self.channels = channels
        self._l = np.asarray(channels.l, dtype=float)

    def signal_terms(self, leader: LeaderState) -> np.ndarray:
        """
        Per-tag SINR numerators s_n = ((1−ρ)/ρ)·P_t,n·A_n on each tag's active sub-channel.
        """
        occupied = np.asarray(leader.delta, dtype=float).max(axis=1)
        return backscatter_signal(self.params, self.channels, leader.rho, leader.p_t, occupied)

    @staticmethod
    def attacked_channel_for(delta: np.ndarray, signal: np.ndarray) -> int:
        """
        Sub-channel carrying the largest aggregate signal; ties go to the lowest index.

        Raises:
            DegenerateGameException: If no tag is assigned a sub-channel.
        """
        if not np.any(delta > 0):
            raise DegenerateGameException(details="no tag occupies any sub-channel.")
        per_channel = delta.T @ signal
        if not np.any(per_channel > 0):
            per_channel = delta.sum(axis=0)
        return int(np.argmax(per_channel))

    def select_attacked_channel(self, leader: LeaderState) -> int:
        """Attacked sub-channel for an observed leader action."""
        return self.attacked_channel_for(np.asarray(leader.delta, dtype=float), self.signal_terms(leader))

    def exposure_for(self, active_channels: np.ndarray, attacked_channel: int) -> np.ndarray:
        """Effective interference gain w_n·l_n, w_n = 1 on the attacked sub-channel and ε elsewhere."""
        on_target = np.asarray(active_channels) == attacked_channel
        return np.where(on_target, 1.0, self.params.leakage_fraction) * self._l

    def exposure(self, leader: LeaderState, attacked_channel: int) -> np.ndarray:
        return self.exposure_for(np.array(leader.active_channels), attacked_channel)

    def interference_profile(self, p_i: float, attacked_channel: int) -> np.ndarray:
        """Per-sub-channel interference power seen by the network."""
        profile = np.full(self.params.n_channels, self.params.leakage_fraction * p_i)
        profile[attacked_channel] = p_i
        return profile

    def utility(self, leader: LeaderState, p_i: ArrayLike, attacked_channel: Optional[int] = None) -> ArrayLike:
        """
        U_I(P_I) = −Σ_n s_n/(w_n·l_n·P_I + N_B) − C_I·P_I, vectorized over ``p_i``.
        """
        channel = self.select_attacked_channel(leader) if attacked_channel is None else attacked_channel
        s = self.signal_terms(leader)
        g = self.exposure(leader, channel)
        p = np.asarray(p_i, dtype=float)
        terms = s / (np.multiply.outer(p, g) + self.params.noise_power)
        return _as_float(-terms.sum(axis=-1) - self.params.cost_interferer * p)

    def lagrangian(self, leader: LeaderState, p_i: float, zeta: ArrayLike, attacked_channel: Optional[int] = None) -> float:
        """U_I plus Σ_n ζ_n·(P_I,max − P_I)."""
        penalty = float(np.sum(zeta)) * (self.params.p_i_max - p_i)
        return self.utility(leader, p_i, attacked_channel) + penalty

    def _marginal_terms(self, leader: LeaderState, attacked_channel: int) -> Tuple[np.ndarray, np.ndarray]:
        s = self.signal_terms(leader)
        g = self.exposure(leader, attacked_channel)
        active = (s > 0) & (g > 0)
        return s[active], g[active]

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.CLOSED_FORM)
    def optimal_interference_power(self, leader: LeaderState, zeta: ArrayLike) -> float:
        """
        Power maximizing the Lagrangian for fixed ζ, projected onto [0, P_I,max].

        With a single contributing tag the root of the first-order condition is
        (√(g·s/C) − N_B)/g with C = C_I + Σζ; with several tags the condition is monotone in
        P_I and is solved by bisection.
        """
        attacked = self.select_attacked_channel(leader)
        s, g = self._marginal_terms(leader, attacked)
        return self.power_for_signal(s, g, zeta)

    def power_for_signal(self, signal: np.ndarray, gain: np.ndarray, zeta: ArrayLike) -> float:
        """
        Projected root of Σ_n s_n·g_n/(g_n·P + N_B)² = C_I + Σζ over the tags with s_n, g_n > 0.
        """
        active = (signal > 0) & (gain > 0)
        s, g = signal[active], gain[active]
        price = self.params.cost_interferer + float(np.sum(zeta))
        noise = self.params.noise_power
        p_max = self.params.p_i_max
        if s.size == 0:
            return 0.0
        if price <= 0:
            return p_max
        if s.size == 1:
            power = (np.sqrt(g[0] * s[0] / price) - noise) / g[0]
            return float(np.clip(power, 0.0, p_max))

        def marginal(p: float) -> float:
            return float(np.sum(s * g / (g * p + noise) ** 2)) - price

        if marginal(0.0) <= 0:
            return 0.0
        if marginal(p_max) >= 0:
            return p_max
        return float(bisect(marginal, 0.0, p_max, xtol=1e-15, rtol=1e-13, maxiter=SOLVER_MAX_ITERATIONS))

    def update_zeta(self, zeta: ArrayLike, p_i_star: float) -> List[float]:
        """ζ_n ← [ζ_n − ω_1·(P_I,max − P*_I)]⁺."""
        step = self.params.step_sizes.omega_1 * (self.params.p_i_max - p_i_star)
        return np.maximum(np.asarray(zeta, dtype=float) - step, 0.0).tolist()

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.BEST_RESPONSE)
    def best_response(
        self,
        leader: LeaderState,
        state: FollowerState,
        max_iterations: int = SOLVER_MAX_ITERATIONS,
    ) -> FollowerState:
        """
        Iterates closed-form power and ζ updates, keeping a candidate only if it strictly improves U_I.

        Args:
            leader (LeaderState): Observed leader action.
            state (FollowerState): Starting power and multipliers.
            max_iterations (int): Iteration cap; hitting it clears the ``converged`` flag.

        Returns:
            FollowerState: Best power found with its utility and the latest multipliers.
        """
        attacked = self.select_attacked_channel(leader)
        zeta = list(state.zeta)
        best_power = min(state.p_i, self.params.p_i_max)
        best_utility = self.utility(leader, best_power, attacked)
        converged = False
        iteration = 0
        for iteration in range(1, max_iterations + 1):
            candidate = self.optimal_interference_power(leader, zeta)
            candidate_utility = self.utility(leader, candidate, attacked)
            margin = SOLVER_RELATIVE_TOLERANCE * max(abs(best_utility), 1e-300)
            if candidate_utility > best_utility + margin:
                best_power, best_utility = candidate, candidate_utility
                zeta = self.update_zeta(zeta, candidate)
            else:
                converged = True
                break
        if not converged:
            _logger.log_event("follower_iteration_cap", iterations=iteration, p_i=best_power)
        return FollowerState(
            p_i=best_power,
            zeta=zeta,
            attacked_channel=attacked,
            utility=best_utility,
            iteration=iteration,
            converged=converged,
        )

    def fixed_power_response(self, leader: LeaderState, power: float) -> FollowerState:
        """Non-adaptive interferer: constant power on the strongest-signal sub-channel."""
        attacked = self.select_attacked_channel(leader)
        p_i = float(min(max(power, 0.0), self.params.p_i_max))
        return FollowerState(
            p_i=p_i,
            zeta=[0.0] * self.params.n_tags,
            attacked_channel=attacked,
            utility=self.utility(leader, p_i, attacked),
            iteration=0,
            converged=True,
        )

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.STATIONARITY_CHECK)
    def check_stationarity(self, leader: LeaderState, p_i: float, zeta: ArrayLike) -> float:
        """
        Residual of ∂L_I/∂P_I = Σ s_n·g_n/(g_n·P_I + N_B)² − C_I − Σζ at ``p_i``.
        """
        attacked = self.select_attacked_channel(leader)
        s, g = self._marginal_terms(leader, attacked)
        marginal = float(np.sum(s * g / (g * p_i + self.params.noise_power) ** 2))
        return marginal - self.params.cost_interferer - float(np.sum(zeta))

    def curvature(self, leader: LeaderState, p_i: float) -> float:
        """∂²U_I/∂P_I² = −Σ 2·s_n·g_n²/(g_n·P_I + N_B)³; strictly negative whenever a tag transmits."""
        attacked = self.select_attacked_channel(leader)
        s, g = self._marginal_terms(leader, attacked)
        return float(-np.sum(2.0 * s * g ** 2 / (g * p_i + self.params.noise_power) ** 3))

    def printed_curvature(self, leader: LeaderState, p_i: float) -> float:
        """Published form of the second derivative, which carries an extra ρ² factor."""
        return leader.rho ** 2 * self.curvature(leader, p_i)
