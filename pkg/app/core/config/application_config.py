"""
Application configuration settings.

This module loads environment variables and provides application-wide configuration constants
for logging, solver tolerances, iteration caps and experiment defaults. Scenario parameters are
not configured here; they come from the JSON scenario file.
"""

import os

from dotenv import load_dotenv

load_dotenv()

# Application configuration settings
APP_VERSION: str = os.getenv("APP_VERSION", "1.0.0")
APP_NAME: str = os.getenv("APP_NAME", "Backscatter Stackelberg Simulator")
# Debug mode
DEBUG: bool = os.getenv("DEBUG", "False").lower() in ("true", "1", "yes")
# Logging configuration
LOG_DIR: str = os.getenv("LOG_DIR", "logs")
LOG_TO_FILE: bool = os.getenv("LOG_TO_FILE", "True").lower() in ("true", "1", "yes")
LOG_LEVEL: str = os.getenv("LOG_LEVEL", "DEBUG" if DEBUG else "INFO").upper()
# Best-response iteration caps and acceptance tolerances
SOLVER_MAX_ITERATIONS: int = int(os.getenv("SOLVER_MAX_ITERATIONS", 500))
SOLVER_RELATIVE_TOLERANCE: float = float(os.getenv("SOLVER_RELATIVE_TOLERANCE", 1e-9))
# Round-to-round utility change below which a game counts as converged
GAME_RELATIVE_TOLERANCE: float = float(os.getenv("GAME_RELATIVE_TOLERANCE", 1e-6))
# KKT residual contracts
STATIONARITY_TOLERANCE: float = float(os.getenv("STATIONARITY_TOLERANCE", 1e-5))
FOLLOWER_STATIONARITY_TOLERANCE: float = float(
    os.getenv("FOLLOWER_STATIONARITY_TOLERANCE", 1e-6))
FEASIBILITY_TOLERANCE: float = float(os.getenv("FEASIBILITY_TOLERANCE", 1e-6))
# Time-switching ratio is projected into [RHO_MIN, 1 - RHO_MIN]
RHO_MIN: float = float(os.getenv("RHO_MIN", 1e-3))
SINGULAR_PERTURBATION: float = float(os.getenv("SINGULAR_PERTURBATION", 1e-12))
# Numerical fallback for the leader
FALLBACK_SWEEPS: int = int(os.getenv("FALLBACK_SWEEPS", 3))
GOLDEN_SECTION_TOLERANCE: float = float(os.getenv("GOLDEN_SECTION_TOLERANCE", 1e-7))
# Experiments
ORACLE_INSTANCES: int = int(os.getenv("ORACLE_INSTANCES", 200))
ORACLE_MAX_FALLBACK_RATE: float = float(os.getenv("ORACLE_MAX_FALLBACK_RATE", 0.2))
SWEEP_WORKERS: int = int(os.getenv("SWEEP_WORKERS", 4))
DEFAULT_SEED: int = int(os.getenv("DEFAULT_SEED", 0))
DEFAULT_MAX_ROUNDS: int = int(os.getenv("DEFAULT_MAX_ROUNDS", 50))
