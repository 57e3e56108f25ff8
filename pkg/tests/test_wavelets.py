import pytest
import os
import sys
import tempfile

import numpy as np

# Add the parent directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from utils.coefficients import CoefficientArray, DyadicGrid
from utils.errors import ConfigurationError, ResolutionError
from utils.wavelets import (
    analyze,
    biorthogonality_residual,
    build_system,
    evaluate_generator,
    load_filters,
    synthesize,
    unit_key,
    vanishing_moments_check,
)


class TestBuildSystem:
    """Test cases for the built-in CDF families."""

    def test_aliases(self):
        """Test that names and (p, pt) pairs select the same family."""
        assert build_system("cdf22").name == "cdf22"
        assert build_system((2, 2)).name == "cdf22"
        assert build_system("2,4").name == "cdf24"
        assert build_system("Haar").name == "haar"

    def test_unsupported_family(self):
        """Test that unknown families name the supported set."""
        with pytest.raises(ConfigurationError) as info:
            build_system((3, 3))
        assert info.value.field == "family"
        assert "cdf22" in str(info.value)

    def test_unsupported_dimension(self):
        """Test that only d = 1 and d = 2 are supported."""
        with pytest.raises(ConfigurationError):
            build_system("cdf22", dimension=3)

    @pytest.mark.parametrize("family", ["haar", "cdf22", "cdf24"])
    def test_perfect_reconstruction(self, family):
        """Test the filter-bank identities of every family."""
        assert build_system(family).perfect_reconstruction_residual() < 1e-12

    def test_moment_counts(self):
        """Test per-side moment counts and the common vanishing order."""
        assert build_system("haar").vanishing_moments == 0
        assert build_system("cdf22").vanishing_moments == 1
        cdf24 = build_system("cdf24")
        assert cdf24.primal_moments == 4
        assert cdf24.dual_moments == 2
        assert cdf24.vanishing_moments == 1

    def test_wavelet_types(self):
        """Test 2^d - 1 wavelet types."""
        assert build_system("cdf22").wavelet_types == (1,)
        assert build_system("cdf22", 2).wavelet_types == (1, 2, 3)

    def test_regularity_side(self):
        """Test that negative smoothness uses the dual regularity."""
        system = build_system("cdf22")
        assert system.regularity_for(0.5) == system.smoothness
        assert system.regularity_for(-0.5) == system.dual_smoothness

    def test_swapped_exchanges_roles(self):
        """Test that swapping twice gives the original filters."""
        system = build_system("cdf24")
        twice = system.swapped().swapped()
        assert np.allclose(twice.primal_lowpass.taps, system.primal_lowpass.taps)
        assert system.swapped().support_radius == system.support_radius


class TestTransforms:
    """Test cases for analysis, synthesis and the cascade."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        self.rng = np.random.default_rng(3)

    @pytest.mark.parametrize("family", ["cdf22", "cdf24"])
    def test_reconstruction_one_dimensional(self, family):
        """Test that synthesis inverts analysis on the sampling grid."""
        system = build_system(family)
        grid = DyadicGrid.zeros(6, (0.0, 1.0))
        f = grid.with_values(self.rng.standard_normal(grid.shape))
        back = synthesize(system, analyze(system, f, 5), grid)
        assert np.max(np.abs(back.values - f.values)) < 1e-10

    def test_reconstruction_two_dimensional(self):
        """Test tensor-product reconstruction."""
        system = build_system("cdf22", 2)
        grid = DyadicGrid.zeros(4, ((0.0, 1.0), (0.0, 1.0)))
        f = grid.with_values(self.rng.standard_normal(grid.shape))
        back = synthesize(system, analyze(system, f, 3), grid)
        assert np.max(np.abs(back.values - f.values)) < 1e-10

    def test_analysis_resolution(self):
        """Test that a grid must resolve the requested level."""
        grid = DyadicGrid.zeros(3, (0.0, 1.0))
        with pytest.raises(ResolutionError):
            analyze(build_system("cdf22"), grid, 3)

    def test_synthesis_resolution(self):
        """Test that fine coefficients need a fine output grid."""
        c = CoefficientArray({(4, 1, 0): 1.0})
        with pytest.raises(ResolutionError):
            synthesize(build_system("cdf22"), c, DyadicGrid.zeros(4, (0.0, 1.0)))

    def test_empty_synthesis(self):
        """Test that no coefficients synthesize to zero."""
        grid = DyadicGrid.zeros(3, (0.0, 1.0))
        assert not np.any(synthesize(build_system("cdf22"), CoefficientArray(), grid).values)

    def test_hat_function(self):
        """Test that the CDF(2,2) primal scaling function is the hat on [0, 2]."""
        grid = DyadicGrid.zeros(4, (-3.0, 3.0))
        phi = evaluate_generator(build_system("cdf22"), ("primal", 0), grid)
        x = grid.axes()[0]
        assert np.allclose(phi.values, np.maximum(0.0, 1.0 - np.abs(x - 1.0)), atol=1e-12)

    def test_analysis_matches_quadrature(self):
        """Test CDF(2,2) coefficients of f(x) = x against a Gram system solved by Simpson's rule."""
        system = build_system("cdf22")
        coarse = DyadicGrid.from_function(lambda x: x, 4, (0.0, 1.0))
        coefficients = analyze(system, coarse, 3)
        keys = coefficients.keys()
        fine = DyadicGrid.zeros(10, (-8.0, 9.0))
        x = fine.axes()[0]
        f = np.interp(x, np.r_[-1 / 16, coarse.axes()[0], 17 / 16], np.r_[0.0, coarse.values, 0.0])
        atoms = np.array([synthesize(system, CoefficientArray({key: 1.0}), fine).values for key in keys])
        weights = np.full(x.size, 2.0)
        weights[1::2] = 4.0
        weights[[0, -1]] = 1.0
        weights *= fine.spacing / 3.0
        gram = atoms @ (atoms * weights).T
        oracle = np.linalg.solve(gram, atoms @ (weights * f))
        assert np.max(np.abs(oracle - coefficients.values_array(keys))) < 1e-8

    def test_generator_side_validated(self):
        """Test that only primal and dual generators exist."""
        grid = DyadicGrid.zeros(3, (-3.0, 3.0))
        with pytest.raises(ConfigurationError):
            evaluate_generator(build_system("haar"), ("left", 0), grid)

    def test_unit_key(self):
        """Test key construction for scaling and wavelet generators."""
        assert unit_key(1, -1) == (-1, 0, 0)
        assert unit_key(2, 3, 2, (1, 4)) == (3, 2, 1, 4)

    @pytest.mark.parametrize("family", ["haar", "cdf22", "cdf24"])
    def test_vanishing_moments(self, family):
        """Test that moments up to the vanishing order are zero."""
        system = build_system(family)
        residuals = vanishing_moments_check(system, system.vanishing_moments, level=8)
        assert max(residuals.values()) < 1e-10

    def test_first_nonvanishing_moment(self):
        """Test that the CDF(2,2) wavelet has a nonzero second moment."""
        system = build_system("cdf22")
        residuals = vanishing_moments_check(system, 2, level=8)
        assert residuals[(1, 2)] > 1e-3

    @pytest.mark.slow
    def test_biorthogonality(self):
        """Test <psi, psit> = delta across levels and shifts."""
        assert biorthogonality_residual(build_system("cdf22"), max_level=2, shifts=2) < 1e-8


class TestLoadFilters:
    """Test cases for filter files."""

    def test_load_cdf22(self):
        """Test reading the CDF(2,2) pair from text."""
        content = (
            "# CDF(2,2)\n"
            "name mine\n"
            "primal_lowpass 0: 1/4 1/2 1/4\n"
            "dual_lowpass -1: -1/8 1/4 3/4 1/4 -1/8\n"
            "smoothness 1.5 0.44\n"
        )
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "filters.txt")
            with open(path, "w") as handle:
                handle.write(content)
            system = load_filters(path)
        assert system.name == "mine"
        assert system.smoothness == 1.5
        assert system.vanishing_moments == 1

    def test_reject_non_biorthogonal(self):
        """Test that mismatched filters are rejected."""
        content = "primal_lowpass 0: 1/4 1/2 1/4\ndual_lowpass 0: 1/2 1/2\n"
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "filters.txt")
            with open(path, "w") as handle:
                handle.write(content)
            with pytest.raises(ConfigurationError):
                load_filters(path)

    def test_missing_entries(self):
        """Test that both lowpass filters are required."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "filters.txt")
            with open(path, "w") as handle:
                handle.write("primal_lowpass 0: 1/2 1/2\n")
            with pytest.raises(ConfigurationError):
                load_filters(path)
