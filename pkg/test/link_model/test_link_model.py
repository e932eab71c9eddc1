"""
Unit tests for the link-budget formulas.

Covers the Friis gains, unit conversion, harvested energy, tag backscatter power, SINR and channel
state construction, including the domain errors each formula raises.
"""

import numpy as np
import pytest

from app.link_model.schemas.system_params import SystemParams, TagGeometry
from app.link_model.services.link_model import (backscatter_power,
                                                backscatter_signal,
                                                build_channel_state,
                                                channel_gain_hap,
                                                channel_gain_interferer,
                                                coefficient_a,
                                                harvested_energy,
                                                power_unit_convert, sinr)
from app.utils.enums.game_mode import ConversionDirection
from app.utils.errors.exceptions import (DegenerateGameException,
                                         DomainException,
                                         InvalidGeometryException)
from test.utils.conftest import make_unit_params, unit_channels, unit_params


class TestChannelGains:
    """Tests for the Friis gains of both links."""

    def test_hap_gain_matches_friis_link_budget(self, unit_params: SystemParams):
        """A 6 dBi / 1.8 dBi link at λ = 0.125 m and 5 m has h ≈ 2.385e-5."""
        # Arrange
        params = unit_params.model_copy(update={
            "gain_hap_tx": 10 ** 0.6, "gain_tag": 10 ** 0.18, "wavelength_hap": 0.125})

        # Act
        h = channel_gain_hap(params, 5.0)

        # Assert
        assert h == pytest.approx(2.385e-5, rel=1e-3)

    def test_unit_geometry_gives_unit_gains(self, unit_params: SystemParams):
        """With unit antenna gains and λ = 4π both gains are 1 at 1 m."""
        # Act
        h = channel_gain_hap(unit_params, 1.0)
        l = channel_gain_interferer(unit_params, 1.0)

        # Assert
        assert h == pytest.approx(1.0)
        assert l == pytest.approx(1.0)

    def test_gain_falls_with_distance_squared(self, unit_params: SystemParams):
        """Doubling the distance divides the gain by four."""
        # Act
        gains = channel_gain_hap(unit_params, np.array([1.0, 2.0]))

        # Assert
        assert gains[0] / gains[1] == pytest.approx(4.0)

    @pytest.mark.parametrize("distance", [0.0, -1.0])
    def test_non_positive_distance_is_rejected(self, unit_params: SystemParams, distance: float):
        """Distances that are not strictly positive raise InvalidGeometryException."""
        # Act / Assert
        with pytest.raises(InvalidGeometryException):
            channel_gain_hap(unit_params, distance)
        with pytest.raises(InvalidGeometryException):
            channel_gain_interferer(unit_params, distance)


class TestPowerUnitConvert:
    """Tests for the dBm/dB converter."""

    @pytest.mark.parametrize("dbm, watts", [(20.0, 0.1), (30.0, 1.0), (-90.0, 1e-12), (0.0, 1e-3)])
    def test_dbm_to_watts(self, dbm: float, watts: float):
        """Published power levels convert to the expected watts."""
        # Act
        result = power_unit_convert(dbm, ConversionDirection.DBM_TO_WATTS)

        # Assert
        assert result == pytest.approx(watts, rel=1e-12)

    def test_watts_to_dbm(self):
        """0.1 W is 20 dBm."""
        # Act
        result = power_unit_convert(0.1, ConversionDirection.WATTS_TO_DBM)

        # Assert
        assert result == pytest.approx(20.0)

    def test_db_to_linear(self):
        """10 dB is a factor of 10."""
        # Act
        result = power_unit_convert(10.0, ConversionDirection.DB_TO_LINEAR)

        # Assert
        assert result == pytest.approx(10.0)

    def test_non_positive_watts_are_rejected(self):
        """Logarithmic conversion of zero watts raises DomainException."""
        # Act / Assert
        with pytest.raises(DomainException):
            power_unit_convert(0.0, ConversionDirection.WATTS_TO_DBM)

    def test_non_finite_input_is_rejected(self):
        """NaN input raises DomainException."""
        # Act / Assert
        with pytest.raises(DomainException):
            power_unit_convert(float("nan"), ConversionDirection.DBM_TO_WATTS)


class TestEnergyAndPower:
    """Tests for harvested energy and tag backscatter power."""

    def test_harvested_energy(self, unit_params: SystemParams):
        """η(1−ρ)T·h·P_t with η = 0.25, ρ = 0.5, h = 1 and P_t = 2 is 0.25 J."""
        # Act
        energy = harvested_energy(unit_params, 0.5, 1.0, 2.0)

        # Assert
        assert energy == pytest.approx(0.25)

    def test_full_backscatter_harvests_nothing(self, unit_params: SystemParams):
        """ρ = 1 leaves no time for harvesting."""
        # Act
        energy = harvested_energy(unit_params, 1.0, 1.0, 2.0)

        # Assert
        assert energy == 0.0

    def test_harvested_energy_rejects_ratio_above_one(self, unit_params: SystemParams):
        """ρ outside [0, 1] raises DomainException."""
        # Act / Assert
        with pytest.raises(DomainException):
            harvested_energy(unit_params, 1.5, 1.0, 1.0)

    def test_backscatter_power(self, unit_params: SystemParams):
        """E/(ρ·T·t_n) with E = 0.25, ρ = 0.5 and t_n = 1 is 0.5 W."""
        # Act
        power = backscatter_power(0.25, 0.5, unit_params, 1.0)

        # Assert
        assert power == pytest.approx(0.5)

    def test_backscatter_power_needs_backscatter_time(self, unit_params: SystemParams):
        """ρ = 0 raises DomainException."""
        # Act / Assert
        with pytest.raises(DomainException):
            backscatter_power(0.25, 0.0, unit_params, 1.0)


class TestSinr:
    """Tests for the received SINR and the composite coefficient."""

    def test_sinr_without_interference(self, unit_params: SystemParams):
        """δ·P_B·h·|Γ0−Γ1|²/N_B = 0.1·4/0.1 = 4."""
        # Act
        value = sinr(1, 0.1, 1.0, unit_params, 0.0, 1.0)

        # Assert
        assert value == pytest.approx(4.0)

    def test_unassigned_sub_channel_has_zero_sinr(self, unit_params: SystemParams):
        """δ = 0 zeroes the SINR."""
        # Act
        value = sinr(0, 0.1, 1.0, unit_params, 0.3, 1.0)

        # Assert
        assert value == 0.0

    def test_interference_lowers_sinr(self, unit_params: SystemParams):
        """P_I·l = 0.1 halves the noise-only SINR."""
        # Act
        value = sinr(1, 0.1, 1.0, unit_params, 0.1, 1.0)

        # Assert
        assert value == pytest.approx(2.0)

    def test_coefficient_a(self, unit_params: SystemParams):
        """δ·η·h²·|Γ0−Γ1|²/t_n = 0.25·4 = 1."""
        # Act
        a = coefficient_a(1, unit_params, 1.0, 1.0)

        # Assert
        assert a == pytest.approx(1.0)

    def test_backscatter_signal(self, unit_params: SystemParams, unit_channels):
        """((1−ρ)/ρ)·P_t·A at ρ = 0.2 and P_t = 1 is 4."""
        # Act
        signal = backscatter_signal(unit_params, unit_channels, 0.2, [1.0])

        # Assert
        assert signal[0] == pytest.approx(4.0)


class TestBuildChannelState:
    """Tests for channel construction and parameter validation."""

    def test_builds_one_gain_pair_per_tag(self):
        """Two placements yield two h and two l entries."""
        # Arrange
        params = make_unit_params(n_tags=2)
        geometry = [TagGeometry(r_hap=1.0, r_interferer=2.0, time_slot=0.5),
                    TagGeometry(r_hap=2.0, r_interferer=1.0, time_slot=0.5)]

        # Act
        channels = build_channel_state(params, geometry)

        # Assert
        assert channels.n_tags == 2
        assert channels.h == pytest.approx([1.0, 0.25])
        assert channels.l == pytest.approx([0.25, 1.0])

    def test_tag_count_mismatch_is_rejected(self, unit_params: SystemParams):
        """Placements must match N."""
        # Arrange
        geometry = [TagGeometry(r_hap=1.0, r_interferer=1.0, time_slot=1.0)] * 2

        # Act / Assert
        with pytest.raises(DomainException):
            build_channel_state(unit_params, geometry)

    def test_geometry_rejects_zero_distance(self):
        """A zero distance is rejected when the placement is built."""
        # Act / Assert
        with pytest.raises(InvalidGeometryException):
            TagGeometry(r_hap=0.0, r_interferer=1.0, time_slot=1.0)

    def test_equal_reflection_coefficients_are_degenerate(self):
        """Γ0 = Γ1 leaves no backscatter modulation."""
        # Act / Assert
        with pytest.raises(DegenerateGameException):
            make_unit_params(gamma0=0.5, gamma1=0.5)


class TestLinkProperties:
    """Randomized properties of the link-budget formulas."""

    def test_harvest_backscatter_receive_composition(self, unit_params: SystemParams):
        """SINR from E_n → P_B → SINR equals s/(P_I·l + N_B) with s = η(1−ρ)/(ρ t_n)·h²·P_t·|Γ0−Γ1|²."""
        # Arrange
        rng = np.random.default_rng(7)
        draws = 100
        checked = 0

        for t_n in 1.0 / np.arange(1, 11):
            rho = rng.uniform(1e-3, 1.0 - 1e-3, draws)
            h = 10.0 ** rng.uniform(-6.0, 0.0, draws)
            l = 10.0 ** rng.uniform(-6.0, 0.0, draws)
            p_t = 10.0 ** rng.uniform(-3.0, 1.0, draws)
            p_i = rng.uniform(0.0, 1.0, draws)

            # Act
            p_b = backscatter_power(harvested_energy(unit_params, rho, h, p_t), rho, unit_params, t_n)
            composed = sinr(1.0, p_b, h, unit_params, p_i, l)
            signal = unit_params.eta * (1.0 - rho) / (rho * t_n) * h ** 2 * p_t * unit_params.reflection_differential
            expected = signal / (p_i * l + unit_params.noise_power)

            # Assert
            np.testing.assert_allclose(composed, expected, rtol=1e-12, atol=0.0)
            checked += draws
        assert checked == 1000

    def test_dbm_watts_round_trip(self):
        """dBm → W → dBm and W → dBm → W return their inputs."""
        # Arrange
        rng = np.random.default_rng(11)
        dbm = rng.uniform(-120.0, 50.0, 1000)
        watts = 10.0 ** rng.uniform(-15.0, 2.0, 1000)

        # Act
        dbm_back = power_unit_convert(power_unit_convert(dbm, ConversionDirection.DBM_TO_WATTS), ConversionDirection.WATTS_TO_DBM)
        watts_back = power_unit_convert(power_unit_convert(watts, ConversionDirection.WATTS_TO_DBM), ConversionDirection.DBM_TO_WATTS)

        # Assert
        np.testing.assert_allclose(dbm_back, dbm, rtol=1e-12, atol=1e-10)
        np.testing.assert_allclose(watts_back, watts, rtol=1e-12, atol=0.0)

    def test_sinr_rises_with_backscatter_and_falls_with_interference(self, unit_params: SystemParams):
        """Strictly increasing in P_B at fixed P_I, strictly decreasing in P_I at fixed P_B."""
        # Arrange
        rng = np.random.default_rng(13)
        p_b = np.sort(10.0 ** rng.uniform(-6.0, 0.0, 200))
        p_i = np.sort(rng.uniform(0.0, 10.0, 200))

        # Act
        by_backscatter = sinr(1.0, p_b, 0.5, unit_params, 0.3, 0.2)
        by_interference = sinr(1.0, 0.01, 0.5, unit_params, p_i, 0.2)

        # Assert
        assert np.all(np.diff(by_backscatter) > 0)
        assert np.all(np.diff(by_interference) < 0)

    def test_four_times_the_distance_is_a_sixteenth_of_the_gain(self, unit_params: SystemParams):
        """Both Friis gains scale as 1/r²."""
        # Arrange
        rng = np.random.default_rng(17)
        r = rng.uniform(0.1, 100.0, 500)

        # Act
        hap_ratio = channel_gain_hap(unit_params, 4.0 * r) / channel_gain_hap(unit_params, r)
        interferer_ratio = channel_gain_interferer(unit_params, 4.0 * r) / channel_gain_interferer(unit_params, r)

        # Assert
        np.testing.assert_allclose(hap_ratio, 1.0 / 16.0, rtol=1e-12)
        np.testing.assert_allclose(interferer_ratio, 1.0 / 16.0, rtol=1e-12)

    def test_backscatter_signal_counts_only_occupied_tags(self, unit_params: SystemParams, unit_channels):
        """A tag without a sub-channel contributes no signal."""
        # Act
        signal = backscatter_signal(unit_params, unit_channels, 0.5, [2.0], occupied=[0.0])

        # Assert
        assert signal[0] == 0.0

    def test_backscatter_signal_needs_backscatter_time(self, unit_params: SystemParams, unit_channels):
        """ρ = 0 raises DomainException."""
        # Act / Assert
        with pytest.raises(DomainException):
            backscatter_signal(unit_params, unit_channels, 0.0, [1.0])
