"""
Brute-force and finite-difference verifiers.

These routines only evaluate utilities and Lagrangians; none of them calls a closed-form solver.
"""

from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from app.interferer.services.interferer_service import InterfererSolverService
from app.oracle.schemas.grid_spec import GridSpec, HessianReport
from app.utils.constants.constants import LEADER_GRID_RESOLUTION
from app.utils.enums.operations import Operations
from app.utils.errors.exception_handlers import handle_solver_exceptions
from app.utils.errors.exceptions import BoundaryPointException
from app.wsn.schemas.leader_state import LeaderState
from app.wsn.services.wsn_service import WsnSolverService

_COMPONENT = "OracleService"


def _zoom_window(center: float, lo: float, hi: float, grid: GridSpec, axis: int) -> Tuple[float, float]:
    lower, upper = grid.bounds[axis]
    span = hi - lo
    half = max(span / grid.zoom, 2.0 * span / (grid.resolution - 1)) / 2.0
    lo, hi = max(lower, center - half), min(upper, center + half)
    return lo, hi


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.GRID_SEARCH)
def grid_max_follower(
    interferer: InterfererSolverService,
    leader: LeaderState,
    zeta: ArrayLike,
    grid: Optional[GridSpec] = None,
) -> Tuple[float, float]:
    """
    Exhaustive maximization of the interferer Lagrangian over [0, P_I,max] with zooming passes.

    Returns:
        Tuple[float, float]: The argmax P_I and the Lagrangian value there; ties go to the lowest P_I.
    """
    params = interferer.params
    grid = grid or GridSpec(bounds=[(0.0, params.p_i_max)])
    attacked = interferer.select_attacked_channel(leader)
    price = float(np.sum(zeta))
    lo, hi = grid.bounds[0]
    best_p, best_value = lo, -np.inf
    for _ in range(grid.refinement_depth):
        points = np.linspace(lo, hi, grid.resolution)
        values = interferer.utility(leader, points, attacked) + price * (params.p_i_max - points)
        index = int(np.argmax(values))
        if values[index] > best_value:
            best_p, best_value = float(points[index]), float(values[index])
        lo, hi = _zoom_window(best_p, lo, hi, grid, 0)
    return best_p, best_value


@handle_solver_exceptions(component=_COMPONENT, operation=Operations.GRID_SEARCH)
def grid_max_leader(
    wsn: WsnSolverService,
    state: LeaderState,
    p_i_profile: Optional[ArrayLike] = None,
    zeta: Optional[ArrayLike] = None,
    grid: Optional[GridSpec] = None,
    fixed_rho: Optional[float] = None,
) -> Tuple[Tuple[float, float], float]:
    """
    Exhaustive maximization of the leader Lagrangian over a common P_t for all tags and ρ.

    The multipliers and sub-channels of ``state`` are held fixed. With ``zeta`` the interference is
    the anticipated follower response, otherwise ``p_i_profile``. With ``fixed_rho`` only P_t is
    searched and ``grid`` carries a single (P_t) bound.

    Returns:
        Tuple[Tuple[float, float], float]: ((P_t, ρ) argmax, Lagrangian value). Ties go to the lowest
        grid index in row-major (P_t, ρ) order.
    """
    params = wsn.params
    if fixed_rho is None:
        grid = grid or GridSpec(bounds=[(0.0, params.p_t_max), params.rho_bounds], resolution=LEADER_GRID_RESOLUTION)
        (p_lo, p_hi), (r_lo, r_hi) = grid.bounds
    else:
        grid = grid or GridSpec(bounds=[(0.0, params.p_t_max)], resolution=LEADER_GRID_RESOLUTION)
        (p_lo, p_hi), (r_lo, r_hi) = grid.bounds[0], (fixed_rho, fixed_rho)
    best, best_value = (p_lo, r_lo), -np.inf
    n_tags = len(state.p_t)
    for _ in range(grid.refinement_depth):
        powers = np.linspace(p_lo, p_hi, grid.resolution)
        ratios = np.linspace(r_lo, r_hi, grid.resolution) if fixed_rho is None else [fixed_rho]
        for power in powers:
            for rho in ratios:
                candidate = state.model_copy(update={"p_t": [float(power)] * n_tags, "rho": float(rho)})
                value = wsn.lagrangian(candidate, p_i_profile=p_i_profile, zeta=zeta)
                if value > best_value:
                    best, best_value = (float(power), float(rho)), value
        p_lo, p_hi = _zoom_window(best[0], p_lo, p_hi, grid, 0)
        if fixed_rho is None:
            r_lo, r_hi = _zoom_window(best[1], r_lo, r_hi, grid, 1)
    return best, best_value


def finite_diff_hessian(
    objective: Callable[[np.ndarray], float],
    point: ArrayLike,
    step: ArrayLike,
    bounds: Optional[Sequence[Tuple[float, float]]] = None,
) -> HessianReport:
    """
    Central-difference Hessian of ``objective`` at ``point``.

    Args:
        objective (Callable[[np.ndarray], float]): Scalar function of a 1-D array.
        point (ArrayLike): Interior evaluation point.
        step (ArrayLike): Step per coordinate (a scalar applies to every coordinate).
        bounds (Optional[Sequence[Tuple[float, float]]]): Domain box; stencils must stay inside it.

    Raises:
        BoundaryPointException: If a stencil point leaves ``bounds``.
    """
    x = np.atleast_1d(np.asarray(point, dtype=float))
    h = np.broadcast_to(np.asarray(step, dtype=float), x.shape).copy()
    if bounds is not None:
        lower = np.array([b[0] for b in bounds])
        upper = np.array([b[1] for b in bounds])
        if np.any(x - h < lower) or np.any(x + h > upper):
            raise BoundaryPointException(details=f"point {x.tolist()} is within one step {h.tolist()} of the boundary.")

    size = x.size
    f0 = objective(x)
    hessian = np.zeros((size, size))
    unit = np.eye(size)
    for i in range(size):
        ei = unit[i] * h[i]
        hessian[i, i] = (objective(x + ei) - 2.0 * f0 + objective(x - ei)) / h[i] ** 2
        for j in range(i + 1, size):
            ej = unit[j] * h[j]
            value = (objective(x + ei + ej) - objective(x + ei - ej)
                     - objective(x - ei + ej) + objective(x - ei - ej)) / (4.0 * h[i] * h[j])
            hessian[i, j] = hessian[j, i] = value

    minors = [np.linalg.det(hessian[:k, :k]) for k in range(1, size + 1)]
    negative_definite = all((-1) ** k * minor > 0 for k, minor in enumerate(minors, start=1))
    return HessianReport(matrix=hessian.tolist(), negative_definite=bool(negative_definite))
