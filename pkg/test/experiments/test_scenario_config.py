"""
Unit tests for scenario loading and its conversion to linear parameters.
"""

from pathlib import Path

import numpy as np
import pytest

from app.experiments.schemas.scenario_config import ScenarioConfig
from app.experiments.services.experiment_service import (build_scenario,
                                                         load_config)
from app.utils.constants.constants import SPEED_OF_LIGHT
from app.utils.errors.exceptions import (ConfigValidationException,
                                         DegenerateGameException)
from test.utils.conftest import write_config


class TestLoadConfig:
    """Tests for reading and validating scenario files."""

    def test_empty_object_yields_reference_defaults(self, write_config):
        """{} is the default three-tag, fourteen-channel scenario."""
        # Arrange
        path = write_config({})

        # Act
        config = load_config(path)

        # Assert
        assert config.n_tags == 3
        assert config.n_channels == 14
        assert config.eta == 0.5
        assert config.mode.value == "stackelberg"

    def test_out_of_range_field_names_the_field(self, write_config):
        """η = 1.5 is rejected with the field in the message."""
        # Arrange
        path = write_config({"eta": 1.5})

        # Act / Assert
        with pytest.raises(ConfigValidationException) as error:
            load_config(path)
        assert "eta" in error.value.details

    def test_unknown_key_is_rejected(self, write_config):
        """Misspelled keys are not silently ignored."""
        # Arrange
        path = write_config({"n_tag": 3})

        # Act / Assert
        with pytest.raises(ConfigValidationException):
            load_config(path)

    def test_malformed_json(self, write_config):
        """A file that is not JSON is a configuration error."""
        # Arrange
        path = write_config("{not json")

        # Act / Assert
        with pytest.raises(ConfigValidationException):
            load_config(path)

    def test_missing_file(self, tmp_path: Path):
        """An unreadable path is a configuration error."""
        # Act / Assert
        with pytest.raises(ConfigValidationException):
            load_config(tmp_path / "absent.json")

    def test_placement_count_must_match_tags(self, write_config):
        """Explicit placements must list one entry per tag."""
        # Arrange
        path = write_config({"n_tags": 2, "tags": [{"r_hap": 1.0}]})

        # Act / Assert
        with pytest.raises(ConfigValidationException):
            load_config(path)

    def test_equal_reflection_coefficients(self, write_config):
        """Γ0 = Γ1 is a degenerate game."""
        # Arrange
        path = write_config({"gamma0": 1.0, "gamma1": 1.0})

        # Act / Assert
        with pytest.raises(DegenerateGameException):
            load_config(path)

    def test_rho_grid_must_be_open_interval(self, write_config):
        """Sweep values of 0 or 1 are rejected."""
        # Arrange
        path = write_config({"rho_grid": [0.0, 0.5]})

        # Act / Assert
        with pytest.raises(ConfigValidationException):
            load_config(path)


class TestScenarioConversion:
    """Tests for the conversion to linear units and the tag placement."""

    def test_linear_parameters(self):
        """Published dBm and dB values convert to watts and ratios."""
        # Act
        params = ScenarioConfig().to_system_params()

        # Assert
        assert params.p_t_max == pytest.approx(0.1)
        assert params.p_i_max == pytest.approx(1.0)
        assert params.noise_power == pytest.approx(1e-12)
        assert params.sinr_threshold == pytest.approx(10.0)
        assert params.harvest_power_threshold == pytest.approx(6.31e-6, rel=1e-3)
        assert params.wavelength_hap == pytest.approx(SPEED_OF_LIGHT / 2.4e9)

    def test_fixed_interference(self):
        """30 dBm is 1 W; an absent value stays None."""
        # Assert
        assert ScenarioConfig(fixed_interference_dbm=30.0).fixed_interference_watts() == pytest.approx(1.0)
        assert ScenarioConfig().fixed_interference_watts() is None

    def test_random_placement_is_seeded(self):
        """The same seed draws the same radii inside the annulus."""
        # Act
        first = ScenarioConfig(seed=7).geometry()
        second = ScenarioConfig(seed=7).geometry()
        other = ScenarioConfig(seed=8).geometry()

        # Assert
        radii = [tag.r_hap for tag in first]
        assert radii == [tag.r_hap for tag in second]
        assert radii != [tag.r_hap for tag in other]
        assert all(0.5 <= r <= 3.0 for r in radii)
        assert all(tag.time_slot == pytest.approx(1.0 / 3.0) for tag in first)

    def test_explicit_placement_wins(self):
        """Listed placements are used verbatim."""
        # Arrange
        config = ScenarioConfig(n_tags=2, tags=[{"r_hap": 1.0}, {"r_hap": 2.5, "r_interferer": 4.0}])

        # Act
        geometry = config.geometry()

        # Assert
        assert [tag.r_hap for tag in geometry] == [1.0, 2.5]
        assert [tag.r_interferer for tag in geometry] == [10.0, 4.0]

    def test_build_scenario_gains(self):
        """A tag at 1 m sees h ≈ 5.96e-4 under the default antennas."""
        # Arrange
        config = ScenarioConfig(n_tags=1, tags=[{"r_hap": 1.0}])

        # Act
        params, channels = build_scenario(config)

        # Assert
        assert params.n_tags == 1
        assert channels.h[0] == pytest.approx(5.96e-4, rel=1e-2)
        assert np.all(np.asarray(channels.l) > 0)
