import pytest
import csv
import json
import logging
import os
import sys
import tempfile
from unittest.mock import patch

# Add the parent directory to the path so we can import our modules
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

import framewidth
from utils.verification import CheckResult


class TestFrameWidthMain:
    """Integration tests for the framewidth command line."""

    def setup_method(self):
        """Set up test fixtures before each test method."""
        self.temp_dir = tempfile.mkdtemp()

    def teardown_method(self):
        """Clean up after each test method."""
        import shutil
        shutil.rmtree(self.temp_dir, ignore_errors=True)
        logging.getLogger("utils").handlers.clear()

    def write_config(self, body):
        path = os.path.join(self.temp_dir, "experiment.ini")
        with open(path, "w") as handle:
            handle.write("[experiment]\n" + body)
        return path

    def test_display_banner(self):
        """Test that the banner displays correctly."""
        with patch('builtins.print') as mock_print:
            framewidth.display_banner()

            calls = [str(call) for call in mock_print.call_args_list]
            banner_text = ' '.join(calls)

            assert 'v0.2.0' in banner_text
            assert 'https://github.com/luhluh-17' in banner_text

    def test_quiet_skips_banner(self):
        """Test that --quiet suppresses the banner."""
        with patch('framewidth.display_banner') as mock_banner:
            status = framewidth.main(["counterexample", "pathological", "--quiet", "--out", self.temp_dir])
        assert status == 0
        mock_banner.assert_not_called()

    def test_unknown_subcommand(self):
        """Test that argparse rejects unknown subcommands."""
        with pytest.raises(SystemExit) as info:
            framewidth.main(["bogus"])
        assert info.value.code == 2

    @patch('builtins.print')
    def test_rates(self, mock_print):
        """Test a small sequence experiment end to end."""
        config = self.write_config(
            "kind = sequence\nsource_s = 1\nsource_p = 1\nsource_q = 2\n"
            "n_list = 4, 8, 16, 32\nrandom_elements = 2\n"
        )
        out = os.path.join(self.temp_dir, "results")
        status = framewidth.main(["rates", "--config", config, "--out", out, "--seed", "3"])

        assert status == 0
        assert sorted(os.listdir(out)) == ["errors.csv", "plot.dat", "report.json"]
        with open(os.path.join(out, "report.json")) as handle:
            payload = json.load(handle)
        assert payload["seed"] == 3
        assert payload["constants"]["A"] == 1.0

    def test_invalid_config(self, capsys):
        """Test that a violated t-condition exits with status 2 and a JSON diagnostic."""
        config = self.write_config("source_s = 0.2\nsource_p = 1\n")
        status = framewidth.main(["rates", "--config", config, "--quiet"])

        assert status == 2
        diagnostic = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert diagnostic["error"] == "ParameterError"
        assert diagnostic["field"] == "target_s"

    def test_bad_seed(self, capsys):
        """Test that --seed is validated like the config value."""
        status = framewidth.main(["verify", "--seed", "minus-one", "--quiet"])
        assert status == 2
        assert '"field": "seed"' in capsys.readouterr().err

    @patch('utils.console.field')
    def test_frame_bounds(self, mock_field):
        """Test measured constants of the tight duplicate frame."""
        status = framewidth.main(["frame-bounds", "tight-duplicate", "--quiet"])
        assert status == 0
        mock_field.assert_any_call("A", "1")
        mock_field.assert_any_call("B", "1")

    @patch('builtins.print')
    def test_frame_bounds_domain(self, mock_print):
        """Test the domain frame section with a stable box."""
        config = self.write_config("domain = interval\nlevels = 4\n")
        status = framewidth.main(["frame-bounds", "domain", "--config", config, "--box", "0.25:0.75"])
        assert status == 0

    def test_domain_box_on_boundary(self, capsys):
        """Test that a stable box touching the boundary is a geometry failure."""
        config = self.write_config("domain = interval\nlevels = 3\n")
        status = framewidth.main(["frame-bounds", "domain", "--config", config, "--box", "0:0.5", "--quiet"])
        assert status == 3
        assert "GeometryError" in capsys.readouterr().err

    def test_malformed_box(self):
        """Test that unparsable boxes are configuration errors."""
        status = framewidth.main(["frame-bounds", "domain", "--box", "left:right", "--quiet"])
        assert status == 2

    @patch('builtins.print')
    def test_stability(self, mock_print):
        """Test the A' estimate of a named frame."""
        assert framewidth.main(["stability", "tight-duplicate", "--size", "4"]) == 0

    @patch('builtins.print')
    def test_threshold_demo(self, mock_print):
        """Test that every soft-thresholding trial honors the guarantee."""
        status = framewidth.main(["threshold-demo", "--trials", "5", "--out", self.temp_dir])
        assert status == 0
        with open(os.path.join(self.temp_dir, "threshold.csv"), newline="") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["n", "m", "error", "bound", "sigma_n"]
        for row in rows[1:]:
            assert int(row[1]) <= 2 * int(row[0])

    @patch('builtins.print')
    def test_counterexample(self, mock_print):
        """Test the pathological frame record."""
        status = framewidth.main(["counterexample", "pathological", "--delta", "0.1", "--out", self.temp_dir])
        assert status == 0
        with open(os.path.join(self.temp_dir, "counterexample.json")) as handle:
            record = json.load(handle)
        assert record["all_below_epsilon"]
        assert record["B_over_A"] < 2.0

    @patch('builtins.print')
    def test_normed_counterexample_defaults(self, mock_print):
        """Test that the normed variant runs with its default accuracy in the default model."""
        status = framewidth.main(["counterexample", "normed-pathological", "--out", self.temp_dir])
        assert status == 0
        with open(os.path.join(self.temp_dir, "counterexample.json")) as handle:
            record = json.load(handle)
        assert record["terms"] == 2
        assert record["samples"] <= 16
        assert record["epsilon"] == pytest.approx(0.06)

    @patch('builtins.print')
    def test_verify_failure(self, mock_print):
        """Test that a failed invariant gives exit status 1."""
        results = [CheckResult("first", True, "fine"), CheckResult("second", False, "broken")]
        with patch('framewidth.run_verification', return_value=results):
            assert framewidth.main(["verify"]) == 1

    @patch('builtins.print')
    def test_verify_success(self, mock_print):
        """Test that passing invariants give exit status 0."""
        with patch('framewidth.run_verification', return_value=[CheckResult("only", True, "fine")]):
            assert framewidth.main(["verify"]) == 0
