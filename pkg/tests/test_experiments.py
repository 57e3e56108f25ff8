import pytest
import math
import os
import sys

import numpy as np

# Add the parent directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from utils.besov import BesovParams
from utils.errors import ConfigurationError, ParameterError
from utils.experiments import (
    ORTHONORMAL_CONSTANTS,
    WorstCasePolicy,
    experiment_constants,
    experiment_levels,
    rate_experiment,
    smoothness_gap,
    tail_errors,
)


class TestHelpers:
    """Test cases for experiment bookkeeping."""

    def test_levels(self):
        """Test J = ceil(log2(n_max) / d) + 2."""
        assert experiment_levels(1024) == 12
        assert experiment_levels(1024, 2) == 7
        assert experiment_levels(1) == 3

    def test_smoothness_gap(self):
        """Test t for each operator."""
        source = BesovParams(1.0, 1.0, 2.0)
        assert smoothness_gap("sequence", source, 0.0) == 1.0
        assert smoothness_gap("domain-poisson", source, 0.5) == 2.5
        assert smoothness_gap("single-layer", BesovParams(2.0, 2.0, 2.0), -0.5) == 1.5

    def test_unknown_kind(self):
        """Test that unknown kinds are configuration errors."""
        with pytest.raises(ConfigurationError):
            smoothness_gap("heat", BesovParams(1.0, 1.0, 2.0), 0.0)

    def test_tail_errors(self):
        """Test greedy tails of squared magnitudes."""
        assert np.allclose(tail_errors([4.0, 9.0, 1.0], [0, 1, 3, 5]), [math.sqrt(14), math.sqrt(5), 0, 0])

    def test_policy(self):
        """Test that negative element counts are refused."""
        with pytest.raises(ParameterError):
            WorstCasePolicy(random_elements=-1)
        labels = [label for label, _ in WorstCasePolicy(random_elements=2, seeds=(3, 4)).generators()]
        assert labels == ["random[3:0]", "random[3:1]", "random[4:0]", "random[4:1]"]


class TestRateExperiment:
    """Test cases for worst-case n-term rates."""

    def test_t_condition(self):
        """Test that t <= d(1/p - 1/2)_+ is refused before any work."""
        with pytest.raises(ParameterError):
            rate_experiment("sequence", BesovParams(0.2, 1.0, 2.0), 0.0)

    def test_sequence_rate(self):
        """Test the b^1_{1,2} to l2 worst case decays like n^-1."""
        report = rate_experiment("sequence", BesovParams(1.0, 1.0, 2.0), 0.0, policy=WorstCasePolicy(8))
        assert report.target_slope == -1.0
        assert report.is_monotone
        assert abs(report.slope - report.target_slope) < 0.15
        assert report.metadata["kind"] == "sequence"
        assert report.fit_range == (16, 1024)
        assert set(report.metadata["worst_profile"]) == {16, 32, 64, 128, 256, 512, 1024}

    def test_reproducible(self):
        """Test that a fixed seed reproduces the samples exactly."""
        source = BesovParams(1.5, 2.0 / 3.0, 1.0)
        ns = (8, 16, 32, 64)
        first = rate_experiment("sequence", source, 0.0, n_list=ns, seeds=(11,))
        second = rate_experiment("sequence", source, 0.0, n_list=ns, seeds=(11,))
        assert first.samples == second.samples

    def test_single_layer_rate(self):
        """Test the H^2 to H^-1/2 worst case through the single layer solution operator."""
        report = rate_experiment(
            "single-layer", BesovParams(2.0, 2.0, 2.0), -0.5,
            n_list=(16, 32, 64, 128, 256, 512), policy=WorstCasePolicy(4),
        )
        assert report.target_slope == -1.5
        assert report.is_monotone
        assert abs(report.slope + 1.5) < 0.15

    def test_periodic_is_one_dimensional(self):
        """Test that Fourier experiments refuse d = 2."""
        with pytest.raises(ParameterError):
            rate_experiment("periodic", BesovParams(2.0, 2.0, 2.0, 2), 0.0, n_list=(4, 8, 16, 32))

    def test_domain_poisson(self):
        """Test that the Poisson solution decays faster than its right-hand side."""
        report = rate_experiment(
            "domain-poisson", BesovParams(0.0, 2.0, 2.0), 0.0,
            n_list=(4, 8, 16, 32), policy=WorstCasePolicy(2), levels=7,
        )
        assert report.is_monotone
        assert report.slope < 0
        assert report.metadata["t"] == 2.0
        assert report.fit_range == (4, 32)


class TestConstants:
    """Test cases for the constants attached to reports."""

    def test_orthonormal(self):
        """Test that sequence experiments report A = B = A' = 1."""
        assert experiment_constants("sequence") == ORTHONORMAL_CONSTANTS

    def test_domain_section(self):
        """Test measured constants for the domain frame section."""
        payload = experiment_constants("domain-poisson", levels=4)
        assert payload["section_level"] == 4
        assert 0 < payload["A"] <= payload["B"]
        assert payload["A_prime"] > 0
