# Link model imports
from app.link_model.schemas.system_params import ChannelState, SystemParams
from app.link_model.services.link_model import build_channel_state

# Player imports
from app.interferer.services.interferer_service import InterfererSolverService
from app.wsn.services.wsn_service import WsnSolverService

# Game imports
from app.game.services.game_service import GameService

# Exceptions
from app.utils.errors.exceptions import (BaseGameException, DomainException,
                                         InfeasibleScenarioException)

__all__: list[str] = [
    "ChannelState",
    "SystemParams",
    "build_channel_state",
    "InterfererSolverService",
    "WsnSolverService",
    "GameService",
    "BaseGameException",
    "DomainException",
    "InfeasibleScenarioException",
]
