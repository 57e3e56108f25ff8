"""Log-log rate fitting and the experiment report record."""

import csv
import json
import logging
import math
import os
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from .errors import FitError

logger = logging.getLogger(__name__)

DEFAULT_FIT_RANGE = (16, 1024)
MIN_FIT_SAMPLES = 4


def default_fit_range(n_list):
    """
    DEFAULT_FIT_RANGE clipped to the sampled n.

    Falls back to the full sampled range when the clipped window keeps
    fewer than ``MIN_FIT_SAMPLES`` values.
    """
    ns = sorted({int(n) for n in n_list})
    lo, hi = max(DEFAULT_FIT_RANGE[0], ns[0]), min(DEFAULT_FIT_RANGE[1], ns[-1])
    if sum(lo <= n <= hi for n in ns) < MIN_FIT_SAMPLES:
        logger.info("fewer than %d n in %s; fitting over [%d, %d]", MIN_FIT_SAMPLES, DEFAULT_FIT_RANGE, ns[0], ns[-1])
        return ns[0], ns[-1]
    return lo, hi


@dataclass(frozen=True)
class RateReport:
    """
    Samples (n, error) with the fitted log-log slope.

    Attributes:
        samples (tuple): ``((n, error), ...)`` in increasing n
        slope (float): Fitted exponent of error ~ n^slope
        intercept (float): Fitted log error at n = 1
        residual (float): RMS of the log residuals inside the fit range
        fit_range (tuple): ``(n_min, n_max)`` used for the fit
        stderr (float): Standard error of the slope
        band (tuple): 95% confidence interval of the slope
        target_slope (float): Theoretical slope for comparison, if known
        metadata (dict): Free-form experiment description
    """

    samples: tuple
    slope: float
    intercept: float
    residual: float
    fit_range: tuple
    stderr: float = 0.0
    band: tuple = (math.nan, math.nan)
    target_slope: float = None
    metadata: dict = field(default_factory=dict, hash=False)

    @property
    def is_monotone(self):
        errors = [e for _, e in self.samples]
        return all(b <= a * (1 + 1e-12) for a, b in zip(errors, errors[1:]))

    def with_target(self, target_slope, **metadata):
        merged = dict(self.metadata)
        merged.update(metadata)
        return RateReport(
            self.samples, self.slope, self.intercept, self.residual, self.fit_range,
            self.stderr, self.band, target_slope, merged,
        )

    def as_dict(self):
        payload = asdict(self)
        payload["samples"] = [[int(n), float(e)] for n, e in self.samples]
        payload["fit_range"] = list(self.fit_range)
        payload["band"] = list(self.band)
        payload["monotone"] = self.is_monotone
        return payload

    def write_csv(self, path):
        """``n,error`` rows; floats in round-trip precision so reruns are byte-identical."""
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\r\n")
            writer.writerow(["n", "error"])
            for n, error in self.samples:
                writer.writerow([int(n), f"{error:.17g}"])

    def write_plot(self, path):
        """Whitespace-separated ``log10(n) log10(error)`` pairs."""
        with open(path, "w") as handle:
            handle.write("# log10(n) log10(error)\n")
            for n, error in self.samples:
                if error > 0:
                    handle.write(f"{math.log10(n):.17g} {math.log10(error):.17g}\n")

    def write_json(self, path, extra=None):
        payload = {"report": self.as_dict()}
        if extra:
            payload.update(extra)
        with open(path, "w") as handle:
            json.dump(payload, handle, indent=2, sort_keys=True, default=_json_default)
            handle.write("\n")

    def write_artifacts(self, directory, extra=None):
        """Write report.json, errors.csv and plot.dat into ``directory``."""
        os.makedirs(directory, exist_ok=True)
        paths = {
            "report": os.path.join(directory, "report.json"),
            "errors": os.path.join(directory, "errors.csv"),
            "plot": os.path.join(directory, "plot.dat"),
        }
        self.write_json(paths["report"], extra)
        self.write_csv(paths["errors"])
        self.write_plot(paths["plot"])
        logger.info("wrote %s", ", ".join(paths.values()))
        return paths


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, tuple):
        return list(value)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def fit_rate(samples, fit_range=DEFAULT_FIT_RANGE):
    """
    Least-squares fit of log(error) against log(n) within ``fit_range``.

    Args:
        samples (iterable): ``(n, error)`` pairs
        fit_range (tuple): Inclusive ``(n_min, n_max)``

    Returns:
        RateReport: Report with slope, intercept and residual

    Raises:
        FitError: If fewer than 4 samples fall in range or an error is not positive
    """
    samples = tuple(sorted((int(n), float(e)) for n, e in samples))
    lo, hi = fit_range
    inside = [(n, e) for n, e in samples if lo <= n <= hi]
    if len(inside) < MIN_FIT_SAMPLES:
        raise FitError(
            f"rate fit needs at least {MIN_FIT_SAMPLES} samples in n in [{lo}, {hi}], got {len(inside)}"
        )
    bad = [(n, e) for n, e in inside if not e > 0]
    if bad:
        raise FitError(f"rate fit needs positive errors; n = {bad[0][0]} has error {bad[0][1]:g}")
    log_n = np.log([n for n, _ in inside])
    log_e = np.log([e for _, e in inside])
    fit = stats.linregress(log_n, log_e)
    predicted = fit.intercept + fit.slope * log_n
    residual = float(np.sqrt(np.mean((log_e - predicted) ** 2)))
    dof = len(inside) - 2
    spread = float(stats.t.ppf(0.975, dof)) * float(fit.stderr)
    report = RateReport(
        samples=samples,
        slope=float(fit.slope),
        intercept=float(fit.intercept),
        residual=residual,
        fit_range=(int(lo), int(hi)),
        stderr=float(fit.stderr),
        band=(float(fit.slope) - spread, float(fit.slope) + spread),
    )
    logger.debug("fitted slope %.4f (stderr %.2e) on %d samples", report.slope, report.stderr, len(inside))
    return report
