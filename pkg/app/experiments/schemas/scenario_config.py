"""
Scenario configuration in human units and its conversion to the solver's linear parameters.
"""

from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from app.core.config.application_config import (DEFAULT_MAX_ROUNDS,
                                                DEFAULT_SEED, RHO_MIN)
from app.link_model.schemas.system_params import (StepSizes, SystemParams,
                                                  TagGeometry)
from app.link_model.services.link_model import power_unit_convert
from app.utils.constants.constants import GIGAHERTZ, SPEED_OF_LIGHT
from app.utils.enums.game_mode import ConversionDirection, GameMode


class TagPlacement(BaseModel):
    """
    Explicit placement of one tag.

    Attributes:
        r_hap (float): Distance to the H-AP, meters.
        r_interferer (float): Distance to the interferer, meters.
    """

    r_hap: float = Field(..., gt=0)
    r_interferer: float = Field(10.0, gt=0)

    class Config:
        extra = "forbid"


class RandomPlacement(BaseModel):
    """
    Seeded placement drawn uniformly over an annulus around the H-AP.

    Attributes:
        min_radius (float): Inner radius, meters.
        radius (float): Coverage radius, meters; at most 5 m.
        r_interferer (float): Interferer distance shared by every tag, meters.
    """

    min_radius: float = Field(0.5, gt=0)
    radius: float = Field(3.0, gt=0, le=5.0)
    r_interferer: float = Field(10.0, gt=0)

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def _ordered_radii(self) -> "RandomPlacement":
        if not self.min_radius < self.radius:
            raise ValueError(f"min_radius {self.min_radius} must be < radius {self.radius}")
        return self


class ScenarioConfig(BaseModel):
    """
    One scenario: physical parameters, tag placement and how to play it.

    Absent keys take the reference evaluation values: N = 3, K = 14, η = 0.5, T = 1 s,
    Γ0 = 1, Γ1 = −1, SINR_TH = 10 dB, P_B,TH = −18 dBm, P_EH,TH = −22 dBm, P_t,max = 20 dBm,
    P_I,max = 30 dBm, G_t = G_i = 6 dBi, G_r = 1.8 dBi, 2.4 GHz carriers and C_I = C_B = 1.
    """

    scenario_id: str = "default"
    n_tags: int = Field(3, ge=1)
    n_channels: int = Field(14, ge=1)
    eta: float = Field(0.5, gt=0, le=1)
    block_time_s: float = Field(1.0, gt=0)
    gamma0: float = 1.0
    gamma1: float = -1.0
    noise_dbm: float = -90.0
    cost_interferer: float = Field(1.0, ge=0)
    cost_wsn: float = Field(1.0, ge=0)
    sinr_threshold_db: float = 10.0
    backscatter_power_threshold_dbm: float = -18.0
    harvest_power_threshold_dbm: float = -22.0
    p_t_max_dbm: float = 20.0
    p_i_max_dbm: float = 30.0
    gain_hap_tx_dbi: float = 6.0
    gain_tag_dbi: float = 1.8
    gain_interferer_dbi: float = 6.0
    carrier_hap_ghz: float = Field(2.4, gt=0)
    carrier_interferer_ghz: float = Field(2.4, gt=0)
    step_sizes: StepSizes = Field(default_factory=StepSizes)
    leakage_fraction: float = Field(0.0, ge=0, lt=1)
    rho_min: float = Field(RHO_MIN, gt=0, lt=0.5)
    tags: Optional[List[TagPlacement]] = None
    placement: RandomPlacement = Field(default_factory=RandomPlacement)
    mode: GameMode = GameMode.STACKELBERG
    max_rounds: int = Field(DEFAULT_MAX_ROUNDS, ge=1)
    seed: int = Field(DEFAULT_SEED, ge=0)
    fixed_interference_dbm: Optional[float] = None
    rho_grid: Optional[List[float]] = None
    compare_tag_counts: List[int] = Field(default_factory=lambda: [3, 5, 10])

    class Config:
        extra = "forbid"
        json_schema_extra = {
            "example": {
                "scenario_id": "three-tags",
                "n_tags": 3,
                "mode": "stackelberg",
                "seed": 0,
                "tags": [{"r_hap": 1.0}, {"r_hap": 2.0}, {"r_hap": 3.0}],
            }
        }

    @field_validator("compare_tag_counts")
    @classmethod
    def _positive_counts(cls, value: List[int]) -> List[int]:
        if not value or any(n < 1 for n in value):
            raise ValueError("tag counts must be a non-empty list of integers >= 1")
        return value

    @field_validator("rho_grid")
    @classmethod
    def _open_unit_interval(cls, value: Optional[List[float]]) -> Optional[List[float]]:
        if value is not None and (not value or any(not 0 < rho < 1 for rho in value)):
            raise ValueError("rho_grid values must lie strictly inside (0, 1)")
        return value

    @model_validator(mode="after")
    def _tag_count_matches(self) -> "ScenarioConfig":
        if self.tags is not None and len(self.tags) != self.n_tags:
            raise ValueError(f"tags lists {len(self.tags)} placements but n_tags is {self.n_tags}")
        return self

    def to_system_params(self) -> SystemParams:
        """
        Linear-unit parameters for the solvers.

        Raises:
            DegenerateGameException: If Γ0 = Γ1.
        """
        watts = ConversionDirection.DBM_TO_WATTS
        linear = ConversionDirection.DB_TO_LINEAR
        return SystemParams(
            eta=self.eta,
            block_time=self.block_time_s,
            n_tags=self.n_tags,
            n_channels=self.n_channels,
            gamma0=self.gamma0,
            gamma1=self.gamma1,
            noise_power=float(power_unit_convert(self.noise_dbm, watts)),
            cost_interferer=self.cost_interferer,
            cost_wsn=self.cost_wsn,
            sinr_threshold=float(power_unit_convert(self.sinr_threshold_db, linear)),
            backscatter_power_threshold=float(power_unit_convert(self.backscatter_power_threshold_dbm, watts)),
            harvest_power_threshold=float(power_unit_convert(self.harvest_power_threshold_dbm, watts)),
            p_t_max=float(power_unit_convert(self.p_t_max_dbm, watts)),
            p_i_max=float(power_unit_convert(self.p_i_max_dbm, watts)),
            gain_hap_tx=float(power_unit_convert(self.gain_hap_tx_dbi, linear)),
            gain_tag=float(power_unit_convert(self.gain_tag_dbi, linear)),
            gain_interferer=float(power_unit_convert(self.gain_interferer_dbi, linear)),
            wavelength_hap=SPEED_OF_LIGHT / (self.carrier_hap_ghz * GIGAHERTZ),
            wavelength_interferer=SPEED_OF_LIGHT / (self.carrier_interferer_ghz * GIGAHERTZ),
            step_sizes=self.step_sizes,
            leakage_fraction=self.leakage_fraction,
            rho_min=self.rho_min,
        )

    def fixed_interference_watts(self) -> Optional[float]:
        if self.fixed_interference_dbm is None:
            return None
        return float(power_unit_convert(self.fixed_interference_dbm, ConversionDirection.DBM_TO_WATTS))

    def geometry(self) -> List[TagGeometry]:
        """Explicit placements, or a draw from ``placement`` seeded with ``seed``."""
        time_slot = 1.0 / self.n_tags
        if self.tags is not None:
            return [TagGeometry(r_hap=tag.r_hap, r_interferer=tag.r_interferer, time_slot=time_slot) for tag in self.tags]
        rng = np.random.default_rng(self.seed)
        inner, outer = self.placement.min_radius, self.placement.radius
        radii = np.sqrt(rng.uniform(inner ** 2, outer ** 2, size=self.n_tags))
        return [
            TagGeometry(r_hap=float(r), r_interferer=self.placement.r_interferer, time_slot=time_slot)
            for r in radii
        ]
