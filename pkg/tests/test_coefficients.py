import pytest
import os
import sys

import numpy as np

# Add the parent directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from utils.coefficients import CoefficientArray, DyadicGrid
from utils.errors import ConfigurationError, ResolutionError


class TestDyadicGrid:
    """Test cases for sampling grids."""

    def test_zeros_shape(self):
        """Test that a level-3 grid on (0, 1) has 9 samples."""
        grid = DyadicGrid.zeros(3, (0.0, 1.0))
        assert grid.shape == (9,)
        assert grid.spacing == 0.125
        assert grid.offsets == (0,)

    def test_two_dimensional_shape(self):
        """Test tensor grids and their mesh."""
        grid = DyadicGrid.zeros(2, ((0.0, 1.0), (-0.5, 0.5)))
        assert grid.shape == (5, 5)
        x, y = grid.mesh()
        assert x[4, 0] == 1.0
        assert y[0, 0] == -0.5

    def test_misaligned_box_rejected(self):
        """Test that box edges must sit on the level-J lattice."""
        with pytest.raises(ConfigurationError):
            DyadicGrid.zeros(2, (0.0, 0.3))

    def test_negative_level_rejected(self):
        """Test that negative sampling levels are refused."""
        with pytest.raises(ResolutionError):
            DyadicGrid(-1, (0.0, 1.0), np.zeros(1))

    def test_wrong_value_shape_rejected(self):
        """Test that values must match the box."""
        with pytest.raises(ConfigurationError):
            DyadicGrid(2, (0.0, 1.0), np.zeros(4))

    def test_trapezoid_weights_sum_to_volume(self):
        """Test trapezoid weights in one and two dimensions."""
        assert DyadicGrid.zeros(4, (0.0, 2.0)).trapezoid_weights().sum() == pytest.approx(2.0)
        grid = DyadicGrid.zeros(3, ((0.0, 1.0), (0.0, 0.5)))
        assert grid.trapezoid_weights().sum() == pytest.approx(0.5)

    def test_l2_norm_of_constant(self):
        """Test the grid L2 norm of the constant one on the unit interval."""
        grid = DyadicGrid.from_function(lambda x: np.ones_like(x), 5, (0.0, 1.0))
        assert grid.l2_norm() == pytest.approx(1.0)

    def test_l2_norm_with_mask(self):
        """Test that masked samples do not contribute."""
        grid = DyadicGrid.from_function(lambda x: np.ones_like(x), 2, (0.0, 1.0))
        mask = np.array([True, True, True, False, False])
        assert grid.l2_norm(mask) == pytest.approx(np.sqrt(0.125 + 0.25 + 0.25))

    def test_arithmetic_requires_same_grid(self):
        """Test that grids of different levels cannot be combined."""
        a = DyadicGrid.zeros(2, (0.0, 1.0))
        b = DyadicGrid.zeros(3, (0.0, 1.0))
        with pytest.raises(ConfigurationError):
            a - b

    def test_values_are_read_only(self):
        """Test that grid samples cannot be mutated in place."""
        grid = DyadicGrid.zeros(2, (0.0, 1.0))
        with pytest.raises(ValueError):
            grid.values[0] = 1.0


class TestCoefficientArray:
    """Test cases for sparse coefficient arrays."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        self.array = CoefficientArray({(2, 1, 3): 0.5, (-1, 0, 0): 2.0, (0, 1, 0): -1.0, (1, 1, 1): 0.0})

    def test_zero_entries_are_dropped(self):
        """Test that exact zeros are never stored."""
        assert len(self.array) == 3
        assert (1, 1, 1) not in self.array
        assert self.array[(1, 1, 1)] == 0.0

    def test_total_index_order(self):
        """Test iteration from the coarsest level upwards."""
        assert self.array.keys() == [(-1, 0, 0), (0, 1, 0), (2, 1, 3)]
        assert self.array.levels() == [-1, 0, 2]
        assert self.array.max_level == 2

    def test_invalid_keys(self):
        """Test the type conventions of level -1 and wavelet levels."""
        with pytest.raises(ConfigurationError):
            CoefficientArray({(-1, 1, 0): 1.0})
        with pytest.raises(ConfigurationError):
            CoefficientArray({(0, 0, 0): 1.0})
        with pytest.raises(ConfigurationError):
            CoefficientArray({(0, 2, 0): 1.0})
        with pytest.raises(ConfigurationError):
            CoefficientArray({(0, 1, 0): 1.0}, dimension=2)

    def test_two_dimensional_types(self):
        """Test that d = 2 admits wavelet types 1..3."""
        array = CoefficientArray({(0, 3, 1, 1): 1.0, (-1, 0, 0, 0): 1.0}, dimension=2)
        assert len(array) == 2

    def test_arithmetic(self):
        """Test addition, subtraction and scaling."""
        other = CoefficientArray({(0, 1, 0): 1.0, (3, 1, 0): 4.0})
        total = self.array + other
        assert (0, 1, 0) not in total
        assert total[(3, 1, 0)] == 4.0
        assert (self.array - self.array).keys() == []
        assert (2 * self.array)[(-1, 0, 0)] == 4.0

    def test_restrict_and_without(self):
        """Test sub-selection by key sets."""
        kept = self.array.restrict([(0, 1, 0), (5, 1, 0)])
        assert kept.keys() == [(0, 1, 0)]
        rest = self.array.without([(0, 1, 0)])
        assert rest.keys() == [(-1, 0, 0), (2, 1, 3)]

    def test_max_abs_difference(self):
        """Test the sup distance over the union of supports."""
        other = CoefficientArray({(2, 1, 3): 0.25})
        assert self.array.max_abs_difference(other) == pytest.approx(2.0)

    def test_text_format(self):
        """Test the line-oriented text form with comments."""
        text = "# level type shift value\n0 1 4 0.5\n\n-1 0 2 -1.25\n"
        array = CoefficientArray.from_text(text)
        assert array[(0, 1, 4)] == 0.5
        assert array[(-1, 0, 2)] == -1.25
        assert CoefficientArray.from_text(array.to_text()).max_abs_difference(array) == 0.0

    def test_text_format_field_count(self):
        """Test that malformed lines are reported."""
        with pytest.raises(ConfigurationError):
            CoefficientArray.from_text("0 1 0.5\n")

    def test_json_keeps_dimension(self):
        """Test that JSON serialization records the dimension."""
        array = CoefficientArray({(1, 2, 0, 1): 0.1}, dimension=2)
        back = CoefficientArray.from_json(array.to_json())
        assert back.dimension == 2
        assert back[(1, 2, 0, 1)] == 0.1
