import pytest
import json
import math
import os
import sys
import tempfile

import numpy as np

# Add the parent directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from utils.errors import FitError
from utils.rates import default_fit_range, fit_rate


class TestFitRate:
    """Test cases for log-log rate fitting."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        self.ns = [16, 32, 64, 128, 256, 512, 1024]
        self.samples = [(n, 3.0 * n ** -1.5) for n in self.ns]

    def test_exact_power_law(self):
        """Test that an exact power law is fitted exactly."""
        report = fit_rate(self.samples, (16, 1024))
        assert report.slope == pytest.approx(-1.5)
        assert report.intercept == pytest.approx(math.log(3.0))
        assert report.residual == pytest.approx(0.0, abs=1e-12)
        assert report.is_monotone

    def test_fit_window(self):
        """Test that samples outside the window do not enter the fit."""
        samples = self.samples + [(2048, 1.0)]
        report = fit_rate(samples, (16, 1024))
        assert report.slope == pytest.approx(-1.5)
        assert len(report.samples) == 8
        assert not report.is_monotone

    def test_samples_sorted(self):
        """Test that samples are stored in increasing n."""
        report = fit_rate(reversed(self.samples), (16, 1024))
        assert [n for n, _ in report.samples] == self.ns

    def test_too_few_samples(self):
        """Test that a fit needs four samples in range."""
        with pytest.raises(FitError):
            fit_rate(self.samples, (256, 1024))

    def test_nonpositive_error(self):
        """Test that zero errors cannot be fitted in log scale."""
        samples = self.samples[:-1] + [(1024, 0.0)]
        with pytest.raises(FitError):
            fit_rate(samples, (16, 1024))

    def test_confidence_band(self):
        """Test that the band contains the slope."""
        noisy = [(n, e * (1.1 if i % 2 else 0.9)) for i, (n, e) in enumerate(self.samples)]
        report = fit_rate(noisy, (16, 1024))
        assert report.band[0] < report.slope < report.band[1]
        assert report.stderr > 0

    def test_noisy_power_law(self):
        """Test that 1% multiplicative noise on n^-1.5 keeps the slope within 0.05."""
        for seed in range(20):
            rng = np.random.default_rng(seed)
            noisy = [(n, e * (1.0 + 0.01 * rng.standard_normal())) for n, e in self.samples]
            report = fit_rate(noisy, (16, 1024))
            assert abs(report.slope + 1.5) <= 0.05

    def test_with_target_keeps_fit(self):
        """Test attaching a target slope and metadata."""
        report = fit_rate(self.samples, (16, 1024)).with_target(-1.5, kind="sequence")
        assert report.target_slope == -1.5
        assert report.metadata["kind"] == "sequence"
        assert report.slope == pytest.approx(-1.5)


class TestDefaultFitRange:
    """Test cases for the default fit window."""

    def test_full_window(self):
        """Test that [16, 1024] is used when n_list covers it."""
        assert default_fit_range([8, 16, 32, 64, 128, 256, 512, 1024, 2048]) == (16, 1024)

    def test_clipped_to_samples(self):
        """Test that the window is clipped to the sampled n and drops preasymptotic n."""
        assert default_fit_range([128, 64, 32, 16, 8]) == (16, 128)

    def test_fallback_to_sampled_range(self):
        """Test the full sampled range when the clipped window is too small."""
        assert default_fit_range([4, 8, 16, 32]) == (4, 32)
        assert default_fit_range([2, 4, 8, 12]) == (2, 12)


class TestArtifacts:
    """Test cases for report serialization."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        samples = [(n, 1.0 / n) for n in (16, 32, 64, 128)]
        self.report = fit_rate(samples, (16, 128)).with_target(-1.0, t=1.0)

    def test_write_artifacts(self):
        """Test that report.json, errors.csv and plot.dat are written."""
        with tempfile.TemporaryDirectory() as temp_dir:
            out = os.path.join(temp_dir, "nested", "run")
            paths = self.report.write_artifacts(out, extra={"constants": {"A": 1.0}})
            assert sorted(os.listdir(out)) == ["errors.csv", "plot.dat", "report.json"]
            with open(paths["report"]) as handle:
                payload = json.load(handle)
            assert payload["constants"] == {"A": 1.0}
            assert payload["report"]["target_slope"] == -1.0
            assert payload["report"]["samples"][0] == [16, 0.0625]
            assert payload["report"]["monotone"] is True

    def test_csv_format(self):
        """Test header, CRLF line ends and round-trip precision."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "errors.csv")
            self.report.write_csv(path)
            with open(path, "rb") as handle:
                content = handle.read()
        lines = content.split(b"\r\n")
        assert lines[0] == b"n,error"
        assert lines[1] == b"16,0.0625"
        assert float(lines[2].split(b",")[1]) == 1.0 / 32

    def test_csv_is_byte_identical(self):
        """Test that two writes of the same report agree byte for byte."""
        with tempfile.TemporaryDirectory() as temp_dir:
            first = os.path.join(temp_dir, "a.csv")
            second = os.path.join(temp_dir, "b.csv")
            self.report.write_csv(first)
            self.report.write_csv(second)
            with open(first, "rb") as a, open(second, "rb") as b:
                assert a.read() == b.read()

    def test_plot_pairs(self):
        """Test whitespace separated log10 pairs."""
        with tempfile.TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "plot.dat")
            self.report.write_plot(path)
            with open(path) as handle:
                rows = [line.split() for line in handle if not line.startswith("#")]
        assert len(rows) == 4
        assert float(rows[0][0]) == pytest.approx(math.log10(16))
        assert float(rows[0][1]) == pytest.approx(-math.log10(16))
