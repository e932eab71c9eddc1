"""
Leader-side solver: the backscatter network's utility, sub-channel shifting, closed-form transmit
power and time-switching ratio, multiplier updates and the best-response loop.

Every accepted closed-form step is certified against the KKT conditions of the leader's Lagrangian,
using its analytic gradient with the follower's reaction folded in when the leader anticipates it.
The printed stationarity residuals are reported as a diagnostic only. Steps that fail certification
are replaced by a numerical maximization of the same Lagrangian (golden-section search on ρ
alternated with bounded scalar searches on each P_t,n).
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize_scalar

from app.core.config.application_config import (FALLBACK_SWEEPS,
                                                FEASIBILITY_TOLERANCE,
                                                GOLDEN_SECTION_TOLERANCE,
                                                SINGULAR_PERTURBATION,
                                                SOLVER_MAX_ITERATIONS,
                                                SOLVER_RELATIVE_TOLERANCE,
                                                STATIONARITY_TOLERANCE)
from app.interferer.services.interferer_service import InterfererSolverService
from app.link_model.schemas.system_params import ChannelState, SystemParams
from app.link_model.services.link_model import (backscatter_power,
                                                backscatter_signal,
                                                coefficient_a,
                                                harvested_energy)
from app.link_model.services.link_model import sinr as received_sinr
from app.utils.enums.game_mode import SolverPath
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions
from app.utils.errors.exceptions import (DomainException,
                                         InfeasibleScenarioException,
                                         SingularCoefficientException)
from app.utils.logger.application_logger import ApplicationLogger
from app.utils.numerics.golden_section import golden_section_maximize
from app.wsn.schemas.leader_state import (FeasibilityReport,
                                          LagrangianGradient,
                                          LeaderCoefficients, LeaderState,
                                          LeaderStepQuantities, PrintedHessian,
                                          StationarityResidual)

_COMPONENT = "WsnSolverService"
_logger: ApplicationLogger = ApplicationLogger(name=__name__, log_to_console=False)

Objective = Callable[[np.ndarray, float], float]
Gradient = Callable[[LeaderState], LagrangianGradient]


def _real_or_none(value: complex) -> Optional[float]:
    if not np.isfinite(value):
        return None
    if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
        return None
    return float(value.real)


class WsnSolverService:
    """
    Solves the leader's constrained problem against an observed (or anticipated) interferer.

    Args:
        params (SystemParams): Scenario constants.
        channels (ChannelState): Per-tag gains h_n and l_n.
        interferer (Optional[InterfererSolverService]): Follower model used for anticipation.
    """

    def __init__(
        self,
        params: SystemParams,
        channels: ChannelState,
        interferer: Optional[InterfererSolverService] = None,
    ):
        self.params = params
        self.channels = channels
        self.interferer = interferer or InterfererSolverService(params, channels)
        self._h = np.asarray(channels.h, dtype=float)
        self._l = np.asarray(channels.l, dtype=float)
        self._a_unit = coefficient_a(1.0, params, self._h, params.time_slot)

    def _signal(self, p_t: np.ndarray, rho: float, delta: np.ndarray) -> np.ndarray:
        return backscatter_signal(self.params, self.channels, rho, p_t, delta.max(axis=1))

    def _anticipated_profile(self, p_t: np.ndarray, rho: float, delta: np.ndarray, zeta: np.ndarray) -> np.ndarray:
        """Interference profile the follower would answer the action (p_t, ρ, δ) with."""
        signal = self._signal(p_t, rho, delta)
        attacked = self.interferer.attacked_channel_for(delta, signal)
        gain = self.interferer.exposure_for(np.argmax(delta, axis=1), attacked)
        p_i = self.interferer.power_for_signal(signal, gain, zeta)
        return self.interferer.interference_profile(p_i, attacked)

    def _sinr(self, p_t: np.ndarray, rho: float, delta: np.ndarray, profile: np.ndarray) -> np.ndarray:
        """Harvest, backscatter, receive: each tag's SINR with the profile entry of its sub-channel."""
        p_b = backscatter_power(self._energy(p_t, rho), rho, self.params, self.params.time_slot)
        seen = profile[np.argmax(delta, axis=1)]
        return received_sinr(delta.max(axis=1), p_b, self._h, self.params, seen, self._l)

    def _energy(self, p_t: np.ndarray, rho: float) -> np.ndarray:
        return harvested_energy(self.params, rho, self._h, p_t)

    @staticmethod
    def _arrays(state: LeaderState) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(state.p_t, dtype=float), np.asarray(state.delta, dtype=float)

    def sinr_per_tag(self, state: LeaderState, p_i_profile: ArrayLike) -> np.ndarray:
        """SINR of every tag on its active sub-channel under the given interference profile."""
        p_t, delta = self._arrays(state)
        return self._sinr(p_t, state.rho, delta, np.asarray(p_i_profile, dtype=float))

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
    def utility_wsn(self, state: LeaderState, p_i_profile: ArrayLike) -> float:
        """
        U_B = Σ_n SINR_n − C_B·Σ_n P_t,n, with tag n seeing the profile entry of its sub-channel.

        Raises:
            DomainException: If ρ = 0.
        """
        p_t, _ = self._arrays(state)
        return float(np.sum(self.sinr_per_tag(state, p_i_profile)) - self.params.cost_wsn * np.sum(p_t))

    def anticipated_profile(self, state: LeaderState, zeta: ArrayLike) -> np.ndarray:
        p_t, delta = self._arrays(state)
        return self._anticipated_profile(p_t, state.rho, delta, np.asarray(zeta, dtype=float))

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
    def anticipated_utility_wsn(self, state: LeaderState, zeta: ArrayLike) -> float:
        """U_B evaluated at the follower's optimal response to ``state``."""
        return self.utility_wsn(state, self.anticipated_profile(state, zeta))

    def _lagrangian_at(self, p_t: np.ndarray, rho: float, state: LeaderState, profile: np.ndarray) -> float:
        params = self.params
        delta = np.asarray(state.delta, dtype=float)
        alpha = state.active_entries(state.alpha)
        gamma = state.active_entries(state.gamma)
        sinr = self._sinr(p_t, rho, delta, profile)
        energy = self._energy(p_t, rho)
        t_n = params.time_slot
        value = np.sum((1.0 + alpha) * sinr) - params.cost_wsn * np.sum(p_t)
        value += np.sum(np.asarray(state.beta) * (params.p_t_max - p_t))
        value += np.sum(np.asarray(state.mu) * (energy - rho * params.block_time * params.backscatter_power_threshold * t_n))
        value += np.sum(gamma * (params.eta * self._h * p_t - params.eta * params.block_time * params.harvest_power_threshold))
        value += state.nu * (1.0 - rho) + state.tau * rho
        value -= np.sum(alpha) * params.sinr_threshold
        return float(value)

    def _objective(self, state: LeaderState, observed: np.ndarray, zeta: np.ndarray, anticipate: bool) -> Objective:
        delta = np.asarray(state.delta, dtype=float)

        def objective(p_t: np.ndarray, rho: float) -> float:
            profile = self._anticipated_profile(p_t, rho, delta, zeta) if anticipate else observed
            return self._lagrangian_at(p_t, rho, state, profile)

        return objective

    def _gradient(self, observed: np.ndarray, zeta: np.ndarray, anticipate: bool) -> Gradient:
        if anticipate:
            return lambda state: self.lagrangian_gradient(state, zeta=zeta)
        return lambda state: self.lagrangian_gradient(state, p_i_profile=observed)

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
    def lagrangian(
        self,
        state: LeaderState,
        p_i_profile: Optional[ArrayLike] = None,
        zeta: Optional[ArrayLike] = None,
    ) -> float:
        """
        Leader Lagrangian at ``state`` with its own multipliers.

        With ``zeta`` given the interference is the follower's anticipated response; otherwise the
        fixed ``p_i_profile`` is used.
        """
        p_t, delta = self._arrays(state)
        if zeta is not None:
            profile = self._anticipated_profile(p_t, state.rho, delta, np.asarray(zeta, dtype=float))
        else:
            profile = np.asarray(p_i_profile, dtype=float)
        return self._lagrangian_at(p_t, state.rho, state, profile)

    def allocate_subchannel(self, state: LeaderState, p_i_profile: ArrayLike) -> List[List[int]]:
        """
        Moves every tag whose required power on its current sub-channel exceeds P_t,max to the
        sub-channel with the highest SINR; ties go to the lowest index.
        """
        profile = np.asarray(p_i_profile, dtype=float)
        noise = self.params.noise_power
        gain = backscatter_signal(self.params, self.channels, state.rho, 1.0)
        delta = np.asarray(state.delta, dtype=int).copy()
        for n, k in enumerate(state.active_channels):
            with np.errstate(divide="ignore"):
                required = self.params.sinr_threshold * (profile[k] * self._l[n] + noise) / gain[n]
            if required > self.params.p_t_max:
                sinr_per_unit_power = gain[n] / (profile * self._l[n] + noise)
                delta[n] = 0
                delta[n, int(np.argmax(sinr_per_unit_power))] = 1
        return delta.tolist()

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.CLOSED_FORM)
    def coefficients(self, state: LeaderState, zeta: ArrayLike) -> LeaderCoefficients:
        """
        Composites A … G at ``state``.

        A zero E_{k,n} is replaced by a 1e-12-scale perturbation.
        """
        params = self.params
        rho = state.rho
        p_t = np.asarray(state.p_t, dtype=float)
        occupied = np.asarray(state.delta, dtype=float).max(axis=1)
        alpha = state.active_entries(state.alpha)
        gamma = state.active_entries(state.gamma)
        a = occupied * self._a_unit
        b = self._l * p_t * a
        c = params.cost_interferer + np.asarray(zeta, dtype=float)
        d = params.eta * (rho - 1.0) * self._h * (np.asarray(state.mu) * params.block_time + gamma) \
            - params.cost_wsn - np.asarray(state.beta)
        e = params.eta * self._h * params.block_time * p_t \
            + params.time_slot * params.block_time * params.backscatter_power_threshold + state.nu - state.tau
        e = np.where(e == 0, SINGULAR_PERTURBATION, e)
        f = c * a * p_t * self._l ** 2 * (1.0 + alpha) ** 2 / (4.0 * e ** 2)
        return LeaderCoefficients(
            a=a.tolist(), b=b.tolist(), c=c.tolist(), d=d.tolist(), e=e.tolist(), f=f.tolist(),
            g=[self._printed_g(value) for value in f],
        )

    @staticmethod
    def _printed_g(f: float) -> complex:
        if f == 0:
            return complex(0.25)
        cbrt2 = 2.0 ** (1.0 / 3.0)
        q = complex(3.0 * f * np.sqrt(complex(768.0 * f + 81.0)) - 27.0 * f)
        if q == 0:
            return complex(np.nan, np.nan)
        root = q ** (1.0 / 3.0)
        return 0.25 - cbrt2 * 12.0 * f / root + root / (3.0 * cbrt2)

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.CLOSED_FORM)
    def optimal_transmit_power(self, coeffs: LeaderCoefficients, rho: float, alpha: ArrayLike) -> List[float]:
        """
        Published transmit power [C/(A·l·(1−ρ))·((1+α)(1−ρ)A/(2E))²]⁺, clamped to [0, P_t,max].

        Raises:
            SingularCoefficientException: If A·l·(1−ρ) is zero for some tag.
        """
        a, c, e = np.asarray(coeffs.a), np.asarray(coeffs.c), np.asarray(coeffs.e)
        denominator = a * self._l * (1.0 - rho)
        if np.any(denominator == 0):
            raise SingularCoefficientException(
                details=f"A·l·(1−ρ) vanishes for tags {np.flatnonzero(denominator == 0).tolist()}.")
        e = np.where(e == 0, SINGULAR_PERTURBATION, e)
        power = c / denominator * ((1.0 + np.asarray(alpha, dtype=float)) * (1.0 - rho) * a / (2.0 * e)) ** 2
        return np.clip(power, 0.0, self.params.p_t_max).tolist()

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.CLOSED_FORM)
    def stationary_transmit_power(self, state: LeaderState, zeta: ArrayLike, rho: float) -> List[float]:
        """
        Transmit power zeroing ∂L/∂P_t,n at ``rho`` against the anticipated follower, clamped to [0, P_t,max].

        P_t,n = C·A_n·(1−ρ)(1+α_n)² / (4ρ·g_n·S_n²), with C = C_I + Σζ, g_n = w_n·l_n the tag's
        exposure and S_n = C_B + β_n − η·h_n·(μ_n(1−ρ)T + γ_n). Exact for a tag the follower answers
        alone with an interior power. Tags with S_n ≤ 0 or no exposure, or a free follower, take P_t,max.

        Raises:
            DomainException: If ``rho`` is outside (0, 1).
        """
        params = self.params
        if not 0 < rho < 1:
            raise DomainException(details=f"rho must lie in (0, 1), got {rho}.")
        p_t, delta = self._arrays(state)
        alpha = state.active_entries(state.alpha)
        gamma = state.active_entries(state.gamma)
        attacked = self.interferer.attacked_channel_for(delta, self._signal(p_t, rho, delta))
        exposure = self.interferer.exposure_for(np.argmax(delta, axis=1), attacked)
        price = params.cost_interferer + float(np.sum(zeta))
        pressure = params.cost_wsn + np.asarray(state.beta) \
            - params.eta * self._h * (np.asarray(state.mu) * (1.0 - rho) * params.block_time + gamma)
        a = delta.max(axis=1) * self._a_unit
        with np.errstate(divide="ignore", invalid="ignore"):
            power = price * a * (1.0 - rho) * (1.0 + alpha) ** 2 / (4.0 * rho * exposure * pressure ** 2)
        solvable = (pressure > 0) & (exposure > 0) & (price > 0) & np.isfinite(power)
        return np.clip(np.where(solvable, power, params.p_t_max), 0.0, params.p_t_max).tolist()

    def optimal_time_switching(self, coeffs: LeaderCoefficients) -> List[Optional[float]]:
        """
        Published ρ* = [−1/4 + ½(√G − (½ − G − G^(−1/4)))]⁺ per tag, projected into [ρ_min, 1 − ρ_min].

        A tag whose expression is complex or not finite yields None.
        """
        lower, upper = self.params.rho_bounds
        values: List[Optional[float]] = []
        for g in coeffs.g:
            g = complex(g)
            with np.errstate(all="ignore"):
                raw = -0.25 + 0.5 * (np.sqrt(g) - (0.5 - g - g ** -0.25)) if g != 0 else complex(np.nan)
            real = _real_or_none(complex(raw))
            values.append(None if real is None else float(np.clip(max(real, 0.0), lower, upper)))
        return values

    def quartic_time_switching(self, coeffs: LeaderCoefficients) -> List[List[float]]:
        """Real roots of ρ⁴ − ρ³ + F = 0 inside [ρ_min, 1 − ρ_min], per tag."""
        lower, upper = self.params.rho_bounds
        roots: List[List[float]] = []
        for f in coeffs.f:
            candidates = np.roots([1.0, -1.0, 0.0, 0.0, f])
            real = sorted(float(r.real) for r in candidates if abs(r.imag) <= 1e-9 and lower <= r.real <= upper)
            roots.append(real)
        return roots

    def step_quantities(self, state: LeaderState, p_i_profile: ArrayLike) -> LeaderStepQuantities:
        p_t, _ = self._arrays(state)
        return LeaderStepQuantities(
            sinr=self.sinr_per_tag(state, p_i_profile).tolist(),
            p_t=p_t.tolist(),
            rho=state.rho,
            energy=self._energy(p_t, state.rho).tolist(),
        )

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.MULTIPLIER_UPDATE)
    def update_leader_multipliers(self, state: LeaderState, quantities: LeaderStepQuantities) -> LeaderState:
        """
        Projected-gradient updates of α, β, μ, τ, ν and γ; α and γ change on active entries only.
        """
        params = self.params
        steps = params.step_sizes
        p_t = np.asarray(quantities.p_t)
        rho = quantities.rho
        rows = np.arange(params.n_tags)
        active = state.active_channels

        alpha = np.asarray(state.alpha, dtype=float)
        alpha[rows, active] = np.maximum(
            alpha[rows, active] - steps.omega_2 * (np.asarray(quantities.sinr) - params.sinr_threshold), 0.0)
        gamma = np.asarray(state.gamma, dtype=float)
        gamma[rows, active] = np.maximum(
            gamma[rows, active] - steps.omega_7 * (params.eta * self._h * p_t - params.eta * params.block_time * params.harvest_power_threshold), 0.0)
        beta = np.maximum(np.asarray(state.beta) - steps.omega_3 * (params.p_t_max - p_t), 0.0)
        required_energy = rho * params.block_time * params.backscatter_power_threshold * params.time_slot
        mu = np.maximum(np.asarray(state.mu) - steps.omega_4 * (np.asarray(quantities.energy) - required_energy), 0.0)
        tau = max(state.tau - steps.omega_5 * rho, 0.0)
        nu = max(state.nu - steps.omega_6 * (1.0 - rho), 0.0)

        return state.model_copy(update={
            "alpha": alpha.tolist(),
            "beta": beta.tolist(),
            "mu": mu.tolist(),
            "tau": tau,
            "nu": nu,
            "gamma": gamma.tolist(),
        })

    def _is_boundary(self, p_t: np.ndarray, rho: float, rho_fixed: bool = False) -> bool:
        lower, upper = self.params.rho_bounds
        power_edge = np.any(p_t <= 0) or np.any(p_t >= self.params.p_t_max * (1.0 - 1e-12))
        rho_edge = not rho_fixed and (rho <= lower * (1.0 + 1e-9) or rho >= upper * (1.0 - 1e-12))
        return bool(power_edge or rho_edge)

    def _printed_terms(self, state: LeaderState, coeffs: LeaderCoefficients) -> Tuple[np.ndarray, np.ndarray]:
        rho = state.rho
        p_t = np.asarray(state.p_t, dtype=float)
        alpha = state.active_entries(state.alpha)
        a, b, c = np.asarray(coeffs.a), np.asarray(coeffs.b), np.asarray(coeffs.c)
        with np.errstate(divide="ignore", invalid="ignore"):
            power_term = (1.0 + alpha) * (1.0 - rho) * a / (2.0 * np.sqrt((1.0 - rho) * b / c))
            rho_term = -(1.0 + alpha) * b / (2.0 * rho ** 2 * np.sqrt((1.0 - rho) * p_t * a / (rho * c)))
        return power_term, rho_term

    def _response_sensitivity(self, signal: np.ndarray, gain: np.ndarray, p_i: float) -> np.ndarray:
        """dP_I/ds_n of the follower's answer; zero while the answer sits on a bound of [0, P_I,max]."""
        active = (signal > 0) & (gain > 0)
        if not 0 < p_i < self.params.p_i_max or not np.any(active):
            return np.zeros_like(signal)
        denominator = gain * p_i + self.params.noise_power
        curvature = np.sum(2.0 * signal[active] * gain[active] ** 2 / denominator[active] ** 3)
        return np.where(gain > 0, gain / denominator ** 2, 0.0) / curvature

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.STATIONARITY_CHECK)
    def lagrangian_gradient(
        self,
        state: LeaderState,
        p_i_profile: Optional[ArrayLike] = None,
        zeta: Optional[ArrayLike] = None,
    ) -> LagrangianGradient:
        """
        ∂L/∂P_t,n and ∂L/∂ρ of the leader Lagrangian at ``state``.

        With ``zeta`` the interference is the follower's answer and moves with the action: an
        interior answer shifts by dP_I/ds_n = [g_n/(g_n P_I + N_B)²] / Σ_j 2 s_j g_j²/(g_j P_I + N_B)³,
        a clamped one stays put. The attacked sub-channel is held fixed. Otherwise ``p_i_profile``
        is held fixed.
        """
        params = self.params
        p_t, delta = self._arrays(state)
        rho = state.rho
        occupied = delta.max(axis=1)
        active = np.argmax(delta, axis=1)
        alpha = state.active_entries(state.alpha)
        gamma = state.active_entries(state.gamma)
        mu = np.asarray(state.mu, dtype=float)
        noise = params.noise_power

        signal = self._signal(p_t, rho, delta)
        if zeta is not None:
            attacked = self.interferer.attacked_channel_for(delta, signal)
            gain = self.interferer.exposure_for(active, attacked)
            p_i = self.interferer.power_for_signal(signal, gain, np.asarray(zeta, dtype=float))
            sensitivity = self._response_sensitivity(signal, gain, p_i)
            denominator = gain * p_i + noise
        else:
            profile = np.asarray(p_i_profile, dtype=float)
            gain = self._l
            sensitivity = np.zeros_like(signal)
            denominator = profile[active] * self._l + noise

        weight = 1.0 + alpha
        coupling = float(np.sum(weight * signal * gain / denominator ** 2))
        direct = weight / denominator
        unit_signal = backscatter_signal(params, self.channels, rho, 1.0, occupied)
        with np.errstate(divide="ignore", invalid="ignore"):
            signal_slope = -signal / (rho * (1.0 - rho))

        harvest_slope = params.eta * self._h
        power_linear = harvest_slope * (mu * (1.0 - rho) * params.block_time + gamma) \
            - params.cost_wsn - np.asarray(state.beta)
        energy_slope = float(np.sum(mu * (harvest_slope * params.block_time * p_t
                                          + params.block_time * params.backscatter_power_threshold * params.time_slot)))
        rho_linear = state.tau - state.nu - energy_slope

        power = (direct - coupling * sensitivity) * unit_signal + power_linear
        rho_gradient = float(np.sum((direct - coupling * sensitivity) * signal_slope)) + rho_linear
        power_scale = (direct + coupling * sensitivity) * unit_signal \
            + np.abs(harvest_slope * (mu * (1.0 - rho) * params.block_time + gamma)) + params.cost_wsn + np.asarray(state.beta)
        rho_scale = float(np.sum((direct + coupling * sensitivity) * np.abs(signal_slope))) + energy_slope + state.tau + state.nu
        return LagrangianGradient(
            power=power.tolist(), rho=rho_gradient, power_scale=power_scale.tolist(), rho_scale=rho_scale)

    def _satisfies_kkt(self, state: LeaderState, gradient: LagrangianGradient, rho_fixed: bool) -> bool:
        """Zero slope in the interior of the box, a slope pointing out of it on a bound."""
        slope = np.asarray(gradient.power)
        if not (np.all(np.isfinite(slope)) and np.isfinite(gradient.rho)):
            return False
        p_t = np.asarray(state.p_t, dtype=float)
        allowance = STATIONARITY_TOLERANCE * np.asarray(gradient.power_scale)
        power_ok = np.where(
            p_t <= 0, slope <= allowance,
            np.where(p_t >= self.params.p_t_max * (1.0 - 1e-12), slope >= -allowance, np.abs(slope) <= allowance))
        if rho_fixed:
            return bool(np.all(power_ok))
        lower, upper = self.params.rho_bounds
        rho_allowance = STATIONARITY_TOLERANCE * gradient.rho_scale
        if state.rho <= lower * (1.0 + 1e-9):
            rho_ok = gradient.rho <= rho_allowance
        elif state.rho >= upper * (1.0 - 1e-12):
            rho_ok = gradient.rho >= -rho_allowance
        else:
            rho_ok = abs(gradient.rho) <= rho_allowance
        return bool(np.all(power_ok) and rho_ok)

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.STATIONARITY_CHECK)
    def check_leader_stationarity(
        self,
        state: LeaderState,
        coeffs: LeaderCoefficients,
        p_i_profile: Optional[ArrayLike] = None,
        zeta: Optional[ArrayLike] = None,
        rho_fixed: bool = False,
    ) -> StationarityResidual:
        """
        Printed KKT residuals (P_t term + D) and (ρ term + E) per tag, with the Lagrangian gradient.

        The printed P_t term is (1+α)(1−ρ)A/(2√((1−ρ)B/C)); the ρ term is
        −(1+α)B/(2ρ²√((1−ρ)P_t A/(ρC))). They are diagnostics: certification uses the analytic
        gradient, which is attached (with its KKT verdict) when ``zeta`` or ``p_i_profile`` is given.
        Points with P_t on {0, P_t,max} or ρ on the projection bounds are flagged as boundary points.
        """
        power_term, rho_term = self._printed_terms(state, coeffs)
        gradient = kkt_satisfied = None
        if zeta is not None or p_i_profile is not None:
            gradient = self.lagrangian_gradient(state, p_i_profile=p_i_profile, zeta=zeta)
            kkt_satisfied = self._satisfies_kkt(state, gradient, rho_fixed)
        return StationarityResidual(
            power=(power_term + np.asarray(coeffs.d)).tolist(),
            rho=(rho_term + np.asarray(coeffs.e)).tolist(),
            boundary=self._is_boundary(np.asarray(state.p_t, dtype=float), state.rho, rho_fixed),
            gradient=gradient,
            kkt_satisfied=kkt_satisfied,
        )

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.FEASIBILITY_CHECK)
    def check_leader_feasibility(self, state: LeaderState, p_i_profile: ArrayLike) -> FeasibilityReport:
        """
        Signed slack of every leader constraint.

        Slacks are normalized by their threshold term before the feasibility verdict; the binding
        constraint is the one with the most negative normalized slack.
        """
        params = self.params
        p_t, delta = self._arrays(state)
        rho = state.rho
        profile = np.asarray(p_i_profile, dtype=float)
        sinr = self._sinr(p_t, rho, delta, profile) if rho > 0 else np.zeros_like(p_t)
        energy = self._energy(p_t, rho)
        required_energy = rho * params.block_time * params.backscatter_power_threshold * params.time_slot
        harvest_floor = params.eta * (1.0 - rho) * params.block_time * params.harvest_power_threshold
        binary = -(np.abs(delta.sum(axis=1) - 1.0) + np.sum((delta != 0) & (delta != 1), axis=1))

        slacks = {
            "sinr": (sinr - params.sinr_threshold, params.sinr_threshold),
            "backscatter_energy": (energy - required_energy, max(required_energy, np.finfo(float).tiny)),
            "power_cap": (params.p_t_max - p_t, params.p_t_max),
            "binary_delta": (binary, 1.0),
            "rho_box": (np.array([min(rho, 1.0 - rho)]), 1.0),
            "harvest": (energy - harvest_floor, max(harvest_floor, np.finfo(float).tiny)),
        }
        worst_name, worst_value = None, -FEASIBILITY_TOLERANCE
        for name, (slack, scale) in slacks.items():
            normalized = float(np.min(slack / scale))
            if normalized < worst_value:
                worst_name, worst_value = name, normalized
        return FeasibilityReport(
            sinr=slacks["sinr"][0].tolist(),
            backscatter_energy=slacks["backscatter_energy"][0].tolist(),
            power_cap=slacks["power_cap"][0].tolist(),
            binary_delta=binary.tolist(),
            rho_box=min(rho, 1.0 - rho),
            harvest=slacks["harvest"][0].tolist(),
            feasible=worst_name is None,
            binding=worst_name,
        )

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.FEASIBILITY_CHECK)
    def assert_feasible_scenario(self) -> None:
        """
        Rejects scenarios where some tag misses a threshold even at P_t,max, ρ_min and no interference.

        Raises:
            InfeasibleScenarioException: Naming the first failing constraint and tag.
        """
        params = self.params
        rho = params.rho_min
        full_power = np.full(params.n_tags, params.p_t_max)
        energy = self._energy(full_power, rho)
        p_b = backscatter_power(energy, rho, params, params.time_slot)
        best_sinr = received_sinr(1.0, p_b, self._h, params, 0.0, self._l)
        required_energy = rho * params.block_time * params.backscatter_power_threshold * params.time_slot
        checks = (
            ("sinr", best_sinr < params.sinr_threshold, "SINR threshold unreachable at P_t,max"),
            ("harvest", self._h * params.p_t_max <= params.harvest_power_threshold, "harvest threshold unreachable at P_t,max"),
            ("backscatter_energy", energy < required_energy, "backscatter energy threshold unreachable at P_t,max"),
        )
        for constraint, failing, reason in checks:
            if np.any(failing):
                tag = int(np.flatnonzero(failing)[0])
                _logger.log_event("infeasible_scenario", level=logging.ERROR, constraint=constraint, tag=tag)
                raise InfeasibleScenarioException(
                    constraint=constraint, tag=tag, details=f"{reason} for tag {tag}.")

    def printed_hessian_entries(self, state: LeaderState, coeffs: LeaderCoefficients) -> PrintedHessian:
        """
        Published ∂²U_B/∂P_t², ∂²U_B/∂ρ² and ∂²U_B/∂P_t∂ρ per tag, evaluated verbatim.
        """
        rho = state.rho
        p_t = np.asarray(state.p_t, dtype=float)
        a, b, c, d = (np.asarray(v) for v in (coeffs.a, coeffs.b, coeffs.c, coeffs.d))
        with np.errstate(divide="ignore", invalid="ignore"):
            p_t_p_t = -(1.0 - rho) * a / 4.0 * np.sqrt(c / (self._l * rho * (1.0 - rho) * a * p_t ** 3))
            rho_rho = b * (4.0 * rho - 3.0) / (4.0 * (rho ** 4 - rho ** 3) * np.sqrt(a * p_t * (rho - rho ** 2) / c))
            cross = -d * (1.0 - 2.0 * rho) * a * (rho - 1.0) / (4.0 * c * np.emath.sqrt(d * (rho - rho ** 2) / c))
        return PrintedHessian(
            p_t_p_t=p_t_p_t.tolist(), rho_rho=rho_rho.tolist(), cross=[complex(v) for v in np.atleast_1d(cross)])

    def _numerical_step(self, objective: Objective, p_t: np.ndarray, rho: float, fixed_rho: bool) -> Tuple[np.ndarray, float]:
        lower, upper = self.params.rho_bounds
        p_max = self.params.p_t_max
        p_t = np.clip(p_t.copy(), 0.0, p_max)
        for _ in range(FALLBACK_SWEEPS):
            if not fixed_rho:
                rho, _ = golden_section_maximize(lambda r: objective(p_t, r), lower, upper, GOLDEN_SECTION_TOLERANCE)
            for n in range(p_t.size):
                def negative(x: float, n: int = n) -> float:
                    trial = p_t.copy()
                    trial[n] = x
                    return -objective(trial, rho)

                result = minimize_scalar(negative, bounds=(0.0, p_max), method="bounded", options={"xatol": p_max * 1e-9})
                best_x, best_value = float(result.x), -float(result.fun)
                for edge in (0.0, p_max):
                    value = -negative(edge)
                    if value > best_value:
                        best_x, best_value = edge, value
                p_t[n] = best_x
        return p_t, rho

    def _candidate(
        self,
        state: LeaderState,
        zeta: np.ndarray,
        objective: Objective,
        gradient: Gradient,
        fixed_rho: Optional[float],
    ) -> Tuple[SolverPath, np.ndarray, float]:
        """
        Closed-form candidates by family in order printed, quartic, KKT; within a family the
        candidates are ranked by the Lagrangian and the first one meeting the KKT conditions wins.
        The numerical maximizer otherwise.
        """
        alpha = state.active_entries(state.alpha)
        coeffs = self.coefficients(state, zeta)
        n_tags = self.params.n_tags

        families: Dict[SolverPath, List[Tuple[np.ndarray, float]]] = {}
        printed = [fixed_rho] if fixed_rho is not None else [r for r in self.optimal_time_switching(coeffs) if r is not None]
        families[SolverPath.PRINTED] = [
            (np.asarray(self.optimal_transmit_power(coeffs, rho, alpha)), rho) for rho in printed]
        quartic = [] if fixed_rho is not None else sorted({r for roots in self.quartic_time_switching(coeffs) for r in roots})
        families[SolverPath.QUARTIC] = [
            (np.asarray(self.stationary_transmit_power(state, zeta, rho)), rho) for rho in quartic]
        bounding = [fixed_rho] if fixed_rho is not None else list(self.params.rho_bounds)
        kkt: List[Tuple[np.ndarray, float]] = []
        for rho in bounding:
            if 0 < rho < 1:
                kkt.append((np.asarray(self.stationary_transmit_power(state, zeta, rho)), rho))
            kkt.append((np.full(n_tags, self.params.p_t_max), rho))
            kkt.append((np.zeros(n_tags), rho))
        families[SolverPath.KKT] = kkt

        for path, options in families.items():
            for p_t, rho in sorted(options, key=lambda option: -objective(*option)):
                trial = state.model_copy(update={"p_t": p_t.tolist(), "rho": rho})
                if self._satisfies_kkt(trial, gradient(trial), fixed_rho is not None):
                    return path, p_t, rho

        _logger.log_event("closed_form_rejected", level=logging.WARNING, fallback="numerical", rho=state.rho)
        p_t, rho = self._numerical_step(
            objective, np.asarray(state.p_t, dtype=float), state.rho if fixed_rho is None else fixed_rho, fixed_rho is not None)
        return SolverPath.FALLBACK, p_t, rho

    def _iterate(
        self,
        working: LeaderState,
        observed: np.ndarray,
        zeta: np.ndarray,
        anticipate: bool,
        fixed_rho: Optional[float],
        max_iterations: int,
    ) -> LeaderState:
        """Candidate steps and multiplier updates from ``working`` while U_B improves."""
        def utility_of(candidate: LeaderState) -> float:
            return self.anticipated_utility_wsn(candidate, zeta) if anticipate else self.utility_wsn(candidate, observed)

        gradient = self._gradient(observed, zeta, anticipate)
        best, best_utility = working, utility_of(working)
        best_path = working.solver_path
        closed_form_steps = fallback_steps = 0
        iteration = 0
        for iteration in range(1, max_iterations + 1):
            objective = self._objective(working, observed, zeta, anticipate)
            path, p_t, rho = self._candidate(working, zeta, objective, gradient, fixed_rho)
            if path is SolverPath.FALLBACK:
                fallback_steps += 1
            else:
                closed_form_steps += 1
            trial = working.model_copy(update={"p_t": p_t.tolist(), "rho": float(rho)})
            trial_utility = utility_of(trial)
            margin = SOLVER_RELATIVE_TOLERANCE * max(abs(best_utility), 1e-300)
            profile = self.anticipated_profile(trial, zeta) if anticipate else observed
            working = self.update_leader_multipliers(trial, self.step_quantities(trial, profile))
            if trial_utility > best_utility + margin:
                best, best_utility, best_path = trial, trial_utility, path
            else:
                break

        return working.model_copy(update={
            "p_t": best.p_t,
            "rho": best.rho,
            "utility": best_utility,
            "iteration": iteration,
            "solver_path": best_path,
            "closed_form_steps": closed_form_steps,
            "fallback_steps": fallback_steps,
        })

    @handle_solver_exceptions(component=_COMPONENT, operation=Operations.BEST_RESPONSE)
    def leader_best_response(
        self,
        p_i_profile: ArrayLike,
        state: LeaderState,
        zeta: Optional[ArrayLike] = None,
        anticipate: bool = True,
        fixed_rho: Optional[float] = None,
        max_iterations: int = SOLVER_MAX_ITERATIONS,
    ) -> LeaderState:
        """
        Shifts sub-channels, then iterates candidate steps and multiplier updates while U_B improves.

        When the shift moves some tag, the iteration also runs on the unshifted assignment and the
        better of the two outcomes is kept.

        Args:
            p_i_profile (ArrayLike): Observed per-sub-channel interference power.
            state (LeaderState): Current action and multipliers.
            zeta (Optional[ArrayLike]): ζ announced by the follower; zeros when absent.
            anticipate (bool): Optimize against the follower's reaction instead of the observed profile.
            fixed_rho (Optional[float]): Hold ρ at this value and optimize only the powers.
            max_iterations (int): Iteration cap.

        Returns:
            LeaderState: Best action found, the latest multipliers, and its solver diagnostics.

        Raises:
            InfeasibleScenarioException: If the constraint set is empty for this scenario.
        """
        self.assert_feasible_scenario()
        observed = np.asarray(p_i_profile, dtype=float)
        zeta = np.zeros(self.params.n_tags) if zeta is None else np.asarray(zeta, dtype=float)

        update = {"p_t": np.clip(state.p_t, 0.0, self.params.p_t_max).tolist()}
        if fixed_rho is not None:
            update["rho"] = fixed_rho
        staying = state.model_copy(update=update)
        delta = self.allocate_subchannel(staying, observed)
        result = self._iterate(
            staying.model_copy(update={"delta": delta}), observed, zeta, anticipate, fixed_rho, max_iterations)
        if delta != state.delta:
            moved = [n for n, (old, new) in enumerate(zip(state.delta, delta)) if old != new]
            unshifted = self._iterate(staying, observed, zeta, anticipate, fixed_rho, max_iterations)
            if unshifted.utility > result.utility + SOLVER_RELATIVE_TOLERANCE * max(abs(result.utility), 1e-300):
                _logger.log_event("channel_shift_declined", tags=moved, shifted=result.utility, kept=unshifted.utility)
                result = unshifted
            else:
                _logger.log_event("channel_shift", level=logging.WARNING, tags=moved)

        profile = self.anticipated_profile(result, zeta) if anticipate else observed
        report = self.check_leader_feasibility(result, profile)
        if not report.feasible:
            _logger.log_event("leader_infeasible_action", level=logging.WARNING, binding=report.binding)
        return result.model_copy(update={"feasible": report.feasible})
