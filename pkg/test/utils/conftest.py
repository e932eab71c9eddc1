import json
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pytest

from app.experiments.schemas.scenario_config import ScenarioConfig, TagPlacement
from app.game.services.game_service import GameService
from app.interferer.services.interferer_service import InterfererSolverService
from app.link_model.schemas.system_params import (ChannelState, SystemParams,
                                                  TagGeometry)
from app.link_model.services.link_model import build_channel_state
from app.wsn.schemas.leader_state import LeaderState
from app.wsn.services.wsn_service import WsnSolverService


def make_unit_params(**overrides: Any) -> SystemParams:
    """
    Parameters where a tag at 1 m sees h = l = 1 and A = 1 (one tag, unit gains, λ = 4π, η = 1/4).
    """
    values: Dict[str, Any] = {
        "eta": 0.25,
        "block_time": 1.0,
        "n_tags": 1,
        "n_channels": 2,
        "gamma0": 1.0,
        "gamma1": -1.0,
        "noise_power": 0.1,
        "cost_interferer": 1.0,
        "cost_wsn": 1.0,
        "sinr_threshold": 0.5,
        "backscatter_power_threshold": 0.01,
        "harvest_power_threshold": 0.01,
        "p_t_max": 10.0,
        "p_i_max": 10.0,
        "gain_hap_tx": 1.0,
        "gain_tag": 1.0,
        "gain_interferer": 1.0,
        "wavelength_hap": 4.0 * np.pi,
        "wavelength_interferer": 4.0 * np.pi,
    }
    values.update(overrides)
    return SystemParams(**values)


def make_channels(params: SystemParams, r_hap: float = 1.0, r_interferer: float = 1.0) -> ChannelState:
    geometry = [
        TagGeometry(r_hap=r_hap, r_interferer=r_interferer, time_slot=params.time_slot)
        for _ in range(params.n_tags)
    ]
    return build_channel_state(params, geometry)


def make_leader(params: SystemParams, p_t: float = 1.0, rho: float = 0.5, channel: int = 0) -> LeaderState:
    return LeaderState.initial(params.n_tags, params.n_channels, p_t=p_t, rho=rho, channel=channel)


# --- Parameter Fixtures ---
@pytest.fixture
def unit_params() -> SystemParams:
    """Single-tag, two-channel scenario with h = l = A = 1 at 1 m."""
    return make_unit_params()


@pytest.fixture
def unit_channels(unit_params: SystemParams) -> ChannelState:
    """Gains of one tag 1 m from both transmitters."""
    return make_channels(unit_params)


@pytest.fixture
def two_tag_params() -> SystemParams:
    """Two tags sharing the unit geometry; t_n = 1/2 so A = 2."""
    return make_unit_params(n_tags=2)


@pytest.fixture
def two_tag_channels(two_tag_params: SystemParams) -> ChannelState:
    return make_channels(two_tag_params)


# --- Service Fixtures ---
@pytest.fixture
def interferer_service(unit_params: SystemParams, unit_channels: ChannelState) -> InterfererSolverService:
    return InterfererSolverService(unit_params, unit_channels)


@pytest.fixture
def wsn_service(unit_params: SystemParams, unit_channels: ChannelState) -> WsnSolverService:
    return WsnSolverService(unit_params, unit_channels)


@pytest.fixture
def game_service(unit_params: SystemParams, unit_channels: ChannelState) -> GameService:
    return GameService(unit_params, unit_channels)


# --- Leader Fixtures ---
@pytest.fixture
def unit_leader(unit_params: SystemParams) -> LeaderState:
    """P_t = 1 W, ρ = 0.5 on sub-channel 0, so the SINR numerator is 1."""
    return make_leader(unit_params)


# --- Scenario Fixtures ---
@pytest.fixture
def small_scenario() -> ScenarioConfig:
    """Published physical constants with two close tags, two sub-channels and a short round cap."""
    return ScenarioConfig(
        scenario_id="small",
        n_tags=2,
        n_channels=2,
        max_rounds=3,
        tags=[TagPlacement(r_hap=1.0), TagPlacement(r_hap=2.0)],
    )


@pytest.fixture
def write_config(tmp_path: Path):
    """Returns a helper writing a scenario dictionary (or raw text) to a JSON file in ``tmp_path``."""
    def _write(content: Any, name: str = "scenario.json") -> Path:
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps(content)
        path.write_text(text, encoding="utf-8")
        return path

    return _write


@pytest.fixture
def output_dir(tmp_path: Path) -> Path:
    return tmp_path / "results"
