"""
Pydantic schemas for the physical-layer quantities shared by both players.

All fields are linear SI quantities (watts, joules, seconds, meters, linear gains). Human units
(dBm, dB, dBi, GHz) are accepted only by the scenario configuration, which converts them.
"""

from typing import List

from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.config.application_config import RHO_MIN
from app.utils.errors.exceptions import (DegenerateGameException,
                                         InvalidGeometryException)


class StepSizes(BaseModel):
    """
    Positive iteration steps of the projected-gradient multiplier updates.

    Attributes:
        omega_1 (float): Follower power-cap multiplier ζ.
        omega_2 (float): SINR multiplier α.
        omega_3 (float): Transmit-power cap multiplier β.
        omega_4 (float): Backscatter-energy multiplier μ.
        omega_5 (float): ρ ≥ 0 multiplier τ.
        omega_6 (float): ρ ≤ 1 multiplier ν.
        omega_7 (float): Harvest-threshold multiplier γ.
    """

    omega_1: float = Field(0.1, gt=0)
    omega_2: float = Field(0.1, gt=0)
    omega_3: float = Field(0.1, gt=0)
    omega_4: float = Field(0.1, gt=0)
    omega_5: float = Field(0.1, gt=0)
    omega_6: float = Field(0.1, gt=0)
    omega_7: float = Field(0.1, gt=0)

    class Config:
        frozen = True


class SystemParams(BaseModel):
    """
    Scenario constants in linear units.

    Attributes:
        eta (float): Energy-harvesting efficiency η in (0, 1].
        block_time (float): Block transmission time T, seconds.
        n_tags (int): Number of tags N.
        n_channels (int): Number of sub-channels K.
        gamma0 (float): Reflection coefficient Γ0.
        gamma1 (float): Reflection coefficient Γ1.
        noise_power (float): Noise power N_B, watts.
        cost_interferer (float): Interferer price per unit power C_I.
        cost_wsn (float): Network price per unit power C_B.
        sinr_threshold (float): Minimum SINR, linear.
        backscatter_power_threshold (float): Minimum tag input power P_B,TH, watts.
        harvest_power_threshold (float): Minimum harvested power P_EH,TH, watts.
        p_t_max (float): H-AP transmit cap, watts.
        p_i_max (float): Interferer power cap, watts.
        gain_hap_tx (float): H-AP antenna gain G_t, linear.
        gain_tag (float): Tag antenna gain G_r, linear.
        gain_interferer (float): Interferer antenna gain G_i, linear.
        wavelength_hap (float): H-AP carrier wavelength λ_B, meters.
        wavelength_interferer (float): Interferer carrier wavelength λ_j, meters.
        step_sizes (StepSizes): ω_1 … ω_7.
        leakage_fraction (float): Share ε of P_I landing on each non-attacked sub-channel.
        rho_min (float): Distance of the ρ projection interval from 0 and 1.
    """

    eta: float = Field(..., gt=0, le=1, description="Energy-harvesting efficiency")
    block_time: float = Field(..., gt=0, description="Block time T in seconds")
    n_tags: int = Field(..., ge=1)
    n_channels: int = Field(..., ge=1)
    gamma0: float
    gamma1: float
    noise_power: float = Field(..., gt=0)
    cost_interferer: float = Field(..., ge=0)
    cost_wsn: float = Field(..., ge=0)
    sinr_threshold: float = Field(..., gt=0)
    backscatter_power_threshold: float = Field(..., gt=0)
    harvest_power_threshold: float = Field(..., gt=0)
    p_t_max: float = Field(..., gt=0)
    p_i_max: float = Field(..., gt=0)
    gain_hap_tx: float = Field(..., gt=0)
    gain_tag: float = Field(..., gt=0)
    gain_interferer: float = Field(..., gt=0)
    wavelength_hap: float = Field(..., gt=0)
    wavelength_interferer: float = Field(..., gt=0)
    step_sizes: StepSizes = Field(default_factory=StepSizes)
    leakage_fraction: float = Field(0.0, ge=0, lt=1)
    rho_min: float = Field(RHO_MIN, gt=0, lt=0.5)

    class Config:
        frozen = True
        json_schema_extra = {
            "example": {
                "eta": 0.5,
                "block_time": 1.0,
                "n_tags": 3,
                "n_channels": 14,
                "gamma0": 1.0,
                "gamma1": -1.0,
                "noise_power": 1e-12,
                "cost_interferer": 1.0,
                "cost_wsn": 1.0,
                "sinr_threshold": 10.0,
                "backscatter_power_threshold": 1.585e-5,
                "harvest_power_threshold": 6.31e-6,
                "p_t_max": 0.1,
                "p_i_max": 1.0,
                "gain_hap_tx": 3.981,
                "gain_tag": 1.514,
                "gain_interferer": 3.981,
                "wavelength_hap": 0.1249,
                "wavelength_interferer": 0.1249,
            }
        }

    @model_validator(mode="after")
    def _reject_zero_reflection_differential(self) -> "SystemParams":
        if self.reflection_differential <= 0.0:
            raise DegenerateGameException(
                details=f"|gamma0 - gamma1|^2 must be > 0, got gamma0={self.gamma0}, gamma1={self.gamma1}.")
        return self

    @property
    def reflection_differential(self) -> float:
        """|Γ0 − Γ1|²."""
        return abs(self.gamma0 - self.gamma1) ** 2

    @property
    def time_slot(self) -> float:
        """Equal TDMA share t_n = 1/N."""
        return 1.0 / self.n_tags

    @property
    def rho_bounds(self) -> tuple[float, float]:
        return self.rho_min, 1.0 - self.rho_min


class TagGeometry(BaseModel):
    """
    Placement of one tag.

    Attributes:
        r_hap (float): Distance H-AP to tag, meters.
        r_interferer (float): Distance interferer to tag, meters.
        time_slot (float): TDMA share t_n; equals 1/N for every tag.
    """

    r_hap: float
    r_interferer: float
    time_slot: float = Field(..., gt=0, le=1)

    class Config:
        frozen = True

    @field_validator("r_hap", "r_interferer")
    @classmethod
    def _positive_distance(cls, value: float, info) -> float:
        if not value > 0:
            raise InvalidGeometryException(quantity=info.field_name, value=value)
        return value


class ChannelState(BaseModel):
    """
    Per-tag channel gains, always produced from a geometry by ``build_channel_state``.

    Attributes:
        h (List[float]): Forward gains h_n from the H-AP.
        l (List[float]): Interference gains l_n from the interferer.
        geometry (List[TagGeometry]): The placements the gains were computed from.
    """

    h: List[float]
    l: List[float]
    geometry: List[TagGeometry]

    class Config:
        frozen = True

    @property
    def n_tags(self) -> int:
        return len(self.h)
