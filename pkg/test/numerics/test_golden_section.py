import pytest

from app.utils.numerics.golden_section import golden_section_maximize


class TestGoldenSectionMaximize:
    """Tests for the bracketed unimodal maximizer."""

    def test_interior_maximum(self):
        """−(x − 0.3)² peaks at 0.3."""
        # Act
        x, value = golden_section_maximize(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, tol=1e-9)

        # Assert
        assert x == pytest.approx(0.3, abs=1e-6)
        assert value == pytest.approx(0.0, abs=1e-12)

    def test_decreasing_function_returns_left_end(self):
        """A monotone decrease is maximized exactly at the left bound."""
        # Act
        x, value = golden_section_maximize(lambda x: -x, 0.1, 0.9)

        # Assert
        assert x == 0.1
        assert value == -0.1

    def test_increasing_function_returns_right_end(self):
        """A monotone increase is maximized exactly at the right bound."""
        # Act
        x, _ = golden_section_maximize(lambda x: x, 0.1, 0.9)

        # Assert
        assert x == 0.9

    def test_constant_function_ties_to_the_left(self):
        """Equal values resolve to the left bound."""
        # Act
        x, _ = golden_section_maximize(lambda x: 1.0, 0.0, 1.0)

        # Assert
        assert x == 0.0
