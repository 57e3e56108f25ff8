import pytest
import os
import sys

import numpy as np

# Add the parent directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from utils.errors import NumericError
from utils.verification import (
    DEFAULT_TOLERANCES,
    check_frames,
    check_greedy,
    check_operators,
    check_quasi_norms,
    check_thresholding,
    run_verification,
)


class TestRunVerification:
    """Test cases for the invariant suite runner."""

    def test_selected_checks(self):
        """Test that cheap checks pass with the default tolerances."""
        results = run_verification(checks=(check_quasi_norms, check_greedy))
        assert [r.name for r in results] == ["quasi-norm scaling and monotonicity", "greedy matches exhaustive oracle"]
        assert all(r.passed for r in results)

    def test_failing_check_is_reported(self):
        """Test that framewidth errors inside a check become failed results."""
        def broken(tol, rng):
            raise NumericError("no convergence")

        results = run_verification(checks=(broken,))
        assert len(results) == 1
        assert not results[0].passed
        assert results[0].name == "broken"
        assert "no convergence" in results[0].detail

    def test_tolerance_override(self):
        """Test that config tolerances replace the defaults."""
        seen = {}

        def capture(tol, rng):
            seen.update(tol)
            return []

        run_verification(tolerances={"tol_domain": 1e-3}, checks=(capture,))
        assert seen["tol_domain"] == 1e-3
        assert seen["tol_poisson"] == DEFAULT_TOLERANCES["tol_poisson"]

    def test_seeded(self):
        """Test that every check gets a fresh stream from the same seed."""
        draws = []

        def record(tol, rng):
            draws.append(rng.random())
            return []

        run_verification(seed=5, checks=(record, record))
        assert draws[0] == draws[1] == np.random.default_rng(5).random()


class TestChecks:
    """Test cases for individual invariants."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        self.tol = dict(DEFAULT_TOLERANCES)
        self.rng = np.random.default_rng(0)

    def test_frames(self):
        """Test the frame constant invariants."""
        results = check_frames(self.tol, self.rng)
        assert all(r.passed for r in results), [r.detail for r in results if not r.passed]

    def test_thresholding(self):
        """Test the soft-thresholding guarantee on a few trials."""
        result, = check_thresholding(self.tol, self.rng, trials=10)
        assert result.passed, result.detail

    def test_operators(self):
        """Test the operator lab invariants."""
        assert all(r.passed for r in check_operators(self.tol, self.rng))
