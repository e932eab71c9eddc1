"""
Deterministic link-budget formulas used by both players.

Friis gains for the H-AP and interferer links, harvested energy, tag backscatter power, received
SINR and the composite coefficient A_{k,n}. Every function accepts scalars or numpy arrays and
broadcasts; none keeps state.
"""

from typing import List

import numpy as np
from numpy.typing import ArrayLike

from app.link_model.schemas.system_params import (ChannelState, SystemParams,
                                                  TagGeometry)
from app.utils.enums.game_mode import ConversionDirection
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions
from app.utils.errors.exceptions import (DomainException,
                                         InvalidGeometryException)

_COMPONENT = "LinkModel"


def _check_distance(quantity: str, r: ArrayLike) -> None:
    values = np.asarray(r, dtype=float)
    if np.any(~(values > 0)):
        raise InvalidGeometryException(quantity=quantity, value=float(np.min(values)))


def _check_ratio(rho: ArrayLike, allow_zero: bool = True) -> None:
    values = np.asarray(rho, dtype=float)
    lower_ok = values >= 0 if allow_zero else values > 0
    if np.any(~lower_ok) or np.any(~(values <= 1)):
        bound = "[0, 1]" if allow_zero else "(0, 1]"
        raise DomainException(details=f"rho must lie in {bound}, got {rho}.")


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
def channel_gain_hap(params: SystemParams, r: ArrayLike) -> ArrayLike:
    """
    Friis gain of the H-AP to tag link, G_t·G_r·λ_B² / (4πr)².

    Args:
        params (SystemParams): Antenna gains and wavelength.
        r (ArrayLike): Distance in meters, strictly positive.

    Returns:
        ArrayLike: Linear gain, same shape as ``r``.

    Raises:
        InvalidGeometryException: If any distance is not strictly positive.
    """
    _check_distance("r_hap", r)
    return params.gain_hap_tx * params.gain_tag * params.wavelength_hap ** 2 / (4.0 * np.pi * np.asarray(r, dtype=float)) ** 2


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
def channel_gain_interferer(params: SystemParams, r: ArrayLike) -> ArrayLike:
    """
    Friis gain of the interferer to tag link, G_i·G_t·λ_j² / (4πr)².

    The receive-side factor is G_t, as in the reference link model.

    Raises:
        InvalidGeometryException: If any distance is not strictly positive.
    """
    _check_distance("r_interferer", r)
    return params.gain_interferer * params.gain_hap_tx * params.wavelength_interferer ** 2 / (4.0 * np.pi * np.asarray(r, dtype=float)) ** 2


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
def harvested_energy(params: SystemParams, rho: ArrayLike, h: ArrayLike, p_t: ArrayLike) -> ArrayLike:
    """
    Energy harvested during the (1 − ρ)T portion of the block, η·(1−ρ)·T·h·P_t.

    Raises:
        DomainException: If ``rho`` is outside [0, 1].
    """
    _check_ratio(rho)
    return params.eta * (1.0 - np.asarray(rho, dtype=float)) * params.block_time * np.asarray(h, dtype=float) * np.asarray(p_t, dtype=float)


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
def backscatter_power(e_n: ArrayLike, rho: ArrayLike, params: SystemParams, t_n: float) -> ArrayLike:
    """
    Average tag transmit power E_n / (ρ·T·t_n).

    Raises:
        DomainException: If ``rho`` is 0 (no backscatter time) or above 1, or ``t_n`` ≤ 0.
    """
    _check_ratio(rho, allow_zero=False)
    if not t_n > 0:
        raise DomainException(details=f"time slot must be > 0, got {t_n}.")
    return np.asarray(e_n, dtype=float) / (np.asarray(rho, dtype=float) * params.block_time * t_n)


def sinr(
    delta: ArrayLike,
    p_b: ArrayLike,
    h: ArrayLike,
    params: SystemParams,
    p_i: ArrayLike,
    l: ArrayLike,
) -> ArrayLike:
    """
    Received SINR δ·P_B·h·|Γ0−Γ1|² / (P_I·l + N_B).
    """
    numerator = np.asarray(delta, dtype=float) * np.asarray(p_b, dtype=float) * np.asarray(h, dtype=float) * params.reflection_differential
    return numerator / (np.asarray(p_i, dtype=float) * np.asarray(l, dtype=float) + params.noise_power)


def coefficient_a(delta: ArrayLike, params: SystemParams, h: ArrayLike, t_n: float) -> ArrayLike:
    """
    Composite coefficient A_{k,n} = δ·η·h²·|Γ0−Γ1|²/t_n. The only place it is computed.
    """
    return np.asarray(delta, dtype=float) * params.eta * np.asarray(h, dtype=float) ** 2 * params.reflection_differential / t_n


def backscatter_signal(
    params: SystemParams,
    channels: ChannelState,
    rho: float,
    p_t: ArrayLike,
    occupied: ArrayLike = 1.0,
) -> np.ndarray:
    """
    Per-tag SINR numerator ((1−ρ)/ρ)·P_t,n·A_n on each tag's active sub-channel.

    This is δ·η·((1−ρ)/(ρ t_n))·h_n²·P_t,n·|Γ0−Γ1|², shared by both utilities. ``occupied`` is
    the δ of the tag's active sub-channel (0 for a tag without one).

    Raises:
        DomainException: If ``rho`` is outside (0, 1].
    """
    _check_ratio(rho, allow_zero=False)
    a = coefficient_a(occupied, params, np.asarray(channels.h), params.time_slot)
    return (1.0 - rho) / rho * np.asarray(p_t, dtype=float) * a


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
def power_unit_convert(value: ArrayLike, direction: ConversionDirection) -> ArrayLike:
    """
    Converts between logarithmic and linear power units.

    Args:
        value (ArrayLike): Finite input value(s).
        direction (ConversionDirection): One of dBm↔watts or dB↔linear.

    Returns:
        ArrayLike: Converted value(s).

    Raises:
        DomainException: For non-finite input, or non-positive input to a log direction.
    """
    values = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(values)):
        raise DomainException(details=f"value must be finite, got {value}.")
    match ConversionDirection(direction):
        case ConversionDirection.DBM_TO_WATTS:
            return 10.0 ** (values / 10.0) * 1e-3
        case ConversionDirection.DB_TO_LINEAR:
            return 10.0 ** (values / 10.0)
        case ConversionDirection.WATTS_TO_DBM:
            if np.any(values <= 0):
                raise DomainException(details=f"watts must be > 0 for dBm conversion, got {value}.")
            return 10.0 * np.log10(values / 1e-3)
        case ConversionDirection.LINEAR_TO_DB:
            if np.any(values <= 0):
                raise DomainException(details=f"linear ratio must be > 0 for dB conversion, got {value}.")
            return 10.0 * np.log10(values)


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.LINK_BUDGET)
def build_channel_state(params: SystemParams, geometry: List[TagGeometry]) -> ChannelState:
    """
    Computes h_n and l_n for every tag placement.

    Raises:
        DomainException: If the tag count or any time slot disagrees with ``params``.
    """
    if len(geometry) != params.n_tags:
        raise DomainException(
            details=f"expected {params.n_tags} tag placements, got {len(geometry)}.")
    for index, tag in enumerate(geometry):
        if tag.time_slot != params.time_slot:
            raise DomainException(
                details=f"tag {index} time slot {tag.time_slot} differs from 1/N = {params.time_slot}.")
    r_hap = np.array([tag.r_hap for tag in geometry])
    r_interferer = np.array([tag.r_interferer for tag in geometry])
    return ChannelState(
        h=channel_gain_hap(params, r_hap).tolist(),
        l=channel_gain_interferer(params, r_interferer).tolist(),
        geometry=geometry,
    )
