"""Continuous soft thresholding and the thresholded frame approximation."""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .coefficients import CoefficientArray
from .errors import ParameterError
from .frames import greedy_frame_error

logger = logging.getLogger(__name__)


def _shrink(values, beta):
    """Dead zone below beta, linear ramp to 2 beta, identity above."""
    values = np.asarray(values, dtype=float)
    magnitude = np.abs(values)
    ramp = 2.0 * np.sign(values) * (magnitude - beta)
    out = np.where(magnitude >= 2.0 * beta, values, ramp)
    return np.where(magnitude <= beta, 0.0, out)


def soft_threshold_map(a, beta):
    """
    Continuous thresholding of every entry.

    a* = a if |a| >= 2 beta, 0 if |a| <= beta, 2 sgn(a)(|a| - beta) in between.
    The map is 2-Lipschitz entrywise and moves no entry by more than beta.

    Args:
        a (CoefficientArray | np.ndarray): Coefficients
        beta (float): Threshold > 0

    Returns:
        Same type as ``a`` with thresholded entries

    Raises:
        ParameterError: If beta is not positive
    """
    if not beta > 0:
        raise ParameterError(f"threshold beta must be positive, got {beta}", field="beta")
    if isinstance(a, CoefficientArray):
        return a.map_values(lambda values: _shrink(values, beta))
    return _shrink(a, beta)


@dataclass(frozen=True)
class ThresholdResult:
    """Outcome of the thresholded approximation.

    Attributes:
        element (np.ndarray): Synthesized approximation
        kept_count (int): Number m of nonzero thresholded coefficients
        beta (float): Threshold used
        error (float): Norm of f minus the approximation
        bound (float): Guaranteed error bound (2B/A')(e + 4 eps)
        sigma_n (float): Canonical greedy n-term error of f
        target_not_certified (bool): e below sigma_n, or m > 2n
    """

    element: np.ndarray
    kept_count: int
    beta: float
    error: float
    bound: float
    sigma_n: float
    target_not_certified: bool

    def as_row(self, n):
        return {
            "n": n,
            "m": self.kept_count,
            "error": self.error,
            "bound": self.bound,
            "sigma_n": self.sigma_n,
            "target_not_certified": self.target_not_certified,
        }


def continuous_n_term(frame, f, n, error_target, epsilon=0.0):
    """
    Soft-thresholded frame expansion with a threshold tuned to an n-term error target.

    The threshold is beta = (e + 4 eps) / (A' sqrt(n)) applied to
    sqrt(w_k) <f, h_k>. When the canonical n-term error of f is at most e,
    at most 2n coefficients survive and the error stays below (2B/A')(e + 4 eps).

    Args:
        frame (FramePair): Frame pair with declared constants
        f (np.ndarray): Element of the ambient space
        n (int): Term budget n >= 1
        error_target (float): e > 0
        epsilon (float): Slack eps >= 0 in the threshold rule

    Returns:
        ThresholdResult: Approximation and diagnostics

    Raises:
        ParameterError: If e <= 0, n < 1 or eps < 0
    """
    if not error_target > 0:
        raise ParameterError(f"error target e must be positive, got {error_target}", field="error_target")
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}", field="n")
    if epsilon < 0:
        raise ParameterError(f"epsilon must be nonnegative, got {epsilon}", field="epsilon")
    f = np.asarray(f, dtype=float)
    constants = frame.constants
    level = error_target + 4.0 * epsilon
    beta = level / (constants.A_prime * math.sqrt(n))
    root_w = np.sqrt(frame.weight)
    scaled = root_w * frame.coefficients(f)
    kept = soft_threshold_map(scaled, beta) / root_w
    element = frame.synthesize(kept)
    kept_count = int(np.count_nonzero(kept))
    sigma_n = greedy_frame_error(frame, f, n)
    uncertified = error_target < sigma_n * (1 - 1e-12) or kept_count > 2 * n
    if uncertified:
        logger.debug("threshold target not certified (e=%.3e, sigma_n=%.3e, m=%d)", error_target, sigma_n, kept_count)
    return ThresholdResult(
        element=element,
        kept_count=kept_count,
        beta=beta,
        error=float(linalg.norm(f - element)),
        bound=2.0 * constants.B / constants.A_prime * level,
        sigma_n=sigma_n,
        target_not_certified=bool(uncertified),
    )
