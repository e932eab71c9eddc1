"""
Unit tests for the brute-force and finite-difference verifiers.
"""

import numpy as np
import pytest
from pydantic import ValidationError

from app.interferer.services.interferer_service import InterfererSolverService
from app.oracle.schemas.grid_spec import GridSpec
from app.oracle.services.oracle_service import (finite_diff_hessian,
                                                grid_max_follower,
                                                grid_max_leader)
from app.utils.errors.exceptions import BoundaryPointException
from app.wsn.schemas.leader_state import LeaderState
from app.wsn.services.wsn_service import WsnSolverService
from test.utils.conftest import (interferer_service, two_tag_channels,
                                 two_tag_params, make_leader, unit_channels,
                                 unit_leader, unit_params, wsn_service)


class TestGridSpec:
    """Tests for grid validation."""

    def test_defaults(self):
        """One variable with the default resolution and two passes."""
        # Act
        grid = GridSpec(bounds=[(0.0, 1.0)])

        # Assert
        assert grid.resolution == 10_000
        assert grid.refinement_depth == 2

    @pytest.mark.parametrize("bounds", [[(1.0, 0.0)], [(0.0, 0.0)], [(0.0, float("inf"))], []])
    def test_invalid_bounds(self, bounds):
        """Bounds must be finite with lower < upper."""
        # Act / Assert
        with pytest.raises(ValidationError):
            GridSpec(bounds=bounds)

    def test_resolution_floor(self):
        """Fewer than 16 points per axis is rejected."""
        # Act / Assert
        with pytest.raises(ValidationError):
            GridSpec(bounds=[(0.0, 1.0)], resolution=8)


class TestGridMaxFollower:
    """Tests for the interferer grid oracle."""

    def test_matches_closed_form(self, interferer_service: InterfererSolverService, unit_leader: LeaderState):
        """The zoomed grid lands within one fine step of 0.9 W."""
        # Arrange
        grid = GridSpec(bounds=[(0.0, 10.0)], resolution=1000, refinement_depth=2)

        # Act
        power, value = grid_max_follower(interferer_service, unit_leader, [0.0], grid)

        # Assert
        assert power == pytest.approx(0.9, abs=2e-3)
        assert value == pytest.approx(-1.9, abs=1e-5)

    def test_matches_bisection(self, two_tag_params, two_tag_channels):
        """Two tags: the grid agrees with the bisection root 1.9 W."""
        # Arrange
        service = InterfererSolverService(two_tag_params, two_tag_channels)
        leader = make_leader(two_tag_params)
        grid = GridSpec(bounds=[(0.0, 10.0)], resolution=2000, refinement_depth=3)

        # Act
        power, _ = grid_max_follower(service, leader, [0.0, 0.0], grid)

        # Assert
        assert power == pytest.approx(service.optimal_interference_power(leader, [0.0, 0.0]), abs=1e-3)

    def test_adds_power_cap_term(self, interferer_service: InterfererSolverService, unit_leader: LeaderState):
        """With ζ = 3 the grid maximizes the Lagrangian, not U_I."""
        # Arrange
        grid = GridSpec(bounds=[(0.0, 10.0)], resolution=1000, refinement_depth=2)

        # Act
        power, _ = grid_max_follower(interferer_service, unit_leader, [3.0], grid)

        # Assert
        assert power == pytest.approx(0.4, abs=2e-3)


class TestGridMaxLeader:
    """Tests for the leader grid oracle."""

    def test_clean_channel_corner(self, wsn_service: WsnSolverService, unit_leader: LeaderState):
        """Without interference the grid argmax is (P_t,max, ρ_min)."""
        # Arrange
        grid = GridSpec(bounds=[(0.0, 10.0), (1e-3, 0.999)], resolution=16, refinement_depth=1)

        # Act
        (power, rho), value = grid_max_leader(wsn_service, unit_leader, p_i_profile=[0.0, 0.0], grid=grid)

        # Assert
        assert power == pytest.approx(10.0)
        assert rho == pytest.approx(1e-3)
        assert value == pytest.approx(10.0 * 999.0 / 0.1 - 10.0)

    def test_agrees_with_fixed_rho_best_response(self, wsn_service: WsnSolverService, unit_leader: LeaderState):
        """At ρ = 0.5 the best response and the grid both choose P_t,max."""
        # Arrange
        grid = GridSpec(bounds=[(0.0, 10.0), (0.4999, 0.5001)], resolution=16, refinement_depth=2)
        response = wsn_service.leader_best_response([0.4, 0.0], unit_leader, anticipate=False, fixed_rho=0.5)

        # Act
        (power, _), _ = grid_max_leader(wsn_service, unit_leader, p_i_profile=[0.4, 0.0], grid=grid)

        # Assert
        assert response.p_t[0] == pytest.approx(power)

    def test_fixed_rho_searches_power_only(self, wsn_service: WsnSolverService, unit_leader: LeaderState):
        """Against the anticipated follower at ρ = 0.5 the grid finds the interior optimum P_t = 0.25, U_B = 0.25."""
        # Arrange
        grid = GridSpec(bounds=[(0.0, 10.0)], resolution=400, refinement_depth=2)

        # Act
        (power, rho), value = grid_max_leader(wsn_service, unit_leader, zeta=[0.0], grid=grid, fixed_rho=0.5)

        # Assert
        assert rho == 0.5
        assert power == pytest.approx(0.25, abs=2e-3)
        assert value == pytest.approx(0.25, abs=1e-5)

    def test_fixed_rho_agrees_with_anticipated_best_response(self, wsn_service: WsnSolverService, unit_leader: LeaderState):
        """The grid never beats the solver's fixed-ρ anticipated optimum."""
        # Arrange
        response = wsn_service.leader_best_response([0.0, 0.0], unit_leader, zeta=[0.0], anticipate=True, fixed_rho=0.5)

        # Act
        _, value = grid_max_leader(wsn_service, unit_leader, zeta=[0.0], fixed_rho=0.5)

        # Assert
        assert value <= wsn_service.anticipated_utility_wsn(response, [0.0]) + 1e-9


class TestFiniteDiffHessian:
    """Tests for the central-difference Hessian."""

    def test_concave_quadratic(self):
        """−x² − y² + xy has Hessian [[−2, 1], [1, −2]], which is negative definite."""
        # Act
        report = finite_diff_hessian(lambda x: -x[0] ** 2 - x[1] ** 2 + x[0] * x[1], [0.3, -0.2], 1e-3)

        # Assert
        assert np.asarray(report.matrix) == pytest.approx(np.array([[-2.0, 1.0], [1.0, -2.0]]), abs=1e-6)
        assert report.negative_definite

    def test_saddle_is_not_negative_definite(self):
        """x² − y² is indefinite."""
        # Act
        report = finite_diff_hessian(lambda x: x[0] ** 2 - x[1] ** 2, [0.0, 0.0], 1e-3)

        # Assert
        assert not report.negative_definite

    def test_one_dimensional_curvature(self, interferer_service: InterfererSolverService, unit_leader: LeaderState):
        """The numerical second derivative of U_I matches the derived curvature."""
        # Act
        report = finite_diff_hessian(lambda x: interferer_service.utility(unit_leader, float(x[0])), [0.9], 1e-4)

        # Assert
        assert report.matrix[0][0] == pytest.approx(interferer_service.curvature(unit_leader, 0.9), rel=1e-4)

    def test_stencil_leaving_the_box(self):
        """A point closer to a bound than one step raises BoundaryPointException."""
        # Act / Assert
        with pytest.raises(BoundaryPointException):
            finite_diff_hessian(lambda x: -x[0] ** 2, [5e-4], 1e-3, bounds=[(0.0, 1.0)])
