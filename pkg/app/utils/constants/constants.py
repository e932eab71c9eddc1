"""
Constants used throughout the simulator.

Physical constants, output-file layout and process exit codes shared by the solver services,
the experiment drivers and the command-line interface.
"""

from typing import List, Tuple


SPEED_OF_LIGHT: float = 299_792_458.0  # m/s
GIGAHERTZ: float = 1e9

EXIT_CONVERGED: int = 0
EXIT_UNKNOWN_ERROR: int = 1
EXIT_NOT_CONVERGED: int = 2
EXIT_INFEASIBLE: int = 3
EXIT_CONFIG_ERROR: int = 4

RESULT_COLUMNS: List[str] = [
    "scenario_id",
    "mode",
    "round",
    "u_b",
    "u_i",
    "p_i_watts",
    "rho",
    "p_t_watts_list",
    "channels",
    "converged",
]
SWEEP_COLUMNS: List[str] = ["rho", "u_b", "converged", "failed", "error"]
LIST_SEPARATOR: str = ";"

ROWS_FILE_NAME: str = "rows.csv"
SUMMARY_FILE_NAME: str = "summary.json"
SWEEP_FILE_NAME: str = "sweep_rho.csv"
SWEEP_SUMMARY_FILE_NAME: str = "sweep_rho_summary.json"
COMPARE_FILE_NAME: str = "compare_rows.csv"
COMPARE_SUMMARY_FILE_NAME: str = "compare_summary.json"
ORACLE_REPORT_FILE_NAME: str = "oracle_report.json"

# Default 1-D and 2-D oracle grids
FOLLOWER_GRID_RESOLUTION: int = 10_000
LEADER_GRID_RESOLUTION: int = 400
GRID_REFINEMENT_DEPTH: int = 2
GRID_ZOOM: float = 10.0
MIN_GRID_RESOLUTION: int = 16
# Certification suite: 2-D leader grid, and the single-tag instances with an interior optimum
ORACLE_GRID_RESOLUTION: int = 32
ORACLE_INTERIOR_RADIUS: Tuple[float, float] = (1.0, 1.5)
ORACLE_INTERIOR_RHO: Tuple[float, float] = (0.5, 0.9)
