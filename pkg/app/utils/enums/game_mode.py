"""
Enumerations describing how a game is played and how a leader step was obtained.
"""

from enum import Enum


class GameMode(str, Enum):
    """
    Play modes for a scenario.

    Attributes:
        STACKELBERG (str): Hierarchical play; the leader anticipates the follower's reaction.
        NASH (str): Simultaneous best responses to the opponent's previous action.
        FIXED_POWER (str): Non-smart interferer transmitting a constant power.
    """
    STACKELBERG = "stackelberg"
    NASH = "nash"
    FIXED_POWER = "fixed-power"


class SolverPath(str, Enum):
    """
    Source of an accepted leader step.

    Attributes:
        PRINTED (str): The printed closed forms passed the stationarity check.
        QUARTIC (str): ρ from the quartic root, transmit power from the stationary closed form.
        KKT (str): A KKT point at a fixed or bounding ρ, with the stationary transmit power or a power bound.
        FALLBACK (str): Numerical maximization of the Lagrangian.
    """
    PRINTED = "printed"
    QUARTIC = "quartic"
    KKT = "kkt"
    FALLBACK = "fallback"


class ConversionDirection(str, Enum):
    """
    Directions supported by the unit converter.
    """
    DBM_TO_WATTS = "dbm_to_watts"
    WATTS_TO_DBM = "watts_to_dbm"
    DB_TO_LINEAR = "db_to_linear"
    LINEAR_TO_DB = "linear_to_db"
