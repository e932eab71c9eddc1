"""
Defines the Operations enumeration for solver actions in the simulator.

This module provides a standardized set of operation names to be used for logging and exception
handling throughout the solver, game and experiment services.
"""

from enum import Enum


class Operations(Enum):
    """
    Enumeration of the different operations performed by the simulator services.

    Attributes:
        LINK_BUDGET (str): Evaluating channel gains, energies and SINR.
        BEST_RESPONSE (str): Computing a player's best response.
        CLOSED_FORM (str): Evaluating a closed-form optimizer.
        MULTIPLIER_UPDATE (str): Projected-gradient update of Lagrange multipliers.
        STATIONARITY_CHECK (str): Evaluating KKT stationarity residuals.
        FEASIBILITY_CHECK (str): Evaluating constraint slacks.
        PLAY (str): Playing a game to convergence.
        GRID_SEARCH (str): Brute-force oracle evaluation.
        LOAD_CONFIG (str): Reading a scenario configuration.
        WRITE_RESULTS (str): Writing result files.
    """

    LINK_BUDGET = "Evaluating Link Budget"
    BEST_RESPONSE = "Computing Best Response"
    CLOSED_FORM = "Evaluating Closed Form"
    MULTIPLIER_UPDATE = "Updating Multipliers"
    STATIONARITY_CHECK = "Checking Stationarity"
    FEASIBILITY_CHECK = "Checking Feasibility"
    PLAY = "Playing Game"
    GRID_SEARCH = "Searching Grid"
    LOAD_CONFIG = "Loading Configuration"
    WRITE_RESULTS = "Writing Results"
