"""Spectral operator lab: 1D Poisson in the sine basis and the single layer on the unit circle.

Fourier coefficients use f(x) = sum_k c_k e^{ikx} on the torus with the
normalized measure dx / 2pi, so ||f||_{L2} equals the l2 norm of c.
Sine series live on (0, 1): u(x) = sum_{k>=1} b_k sin(k pi x).
"""

import csv
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft, integrate, linalg

from .besov import BesovParams
from .domains import smooth_cutoff
from .errors import ConfigurationError, MeanZeroError, NumericError, ParameterError

logger = logging.getLogger(__name__)

MEAN_ZERO_TOL = 1e-14
MIN_SAMPLES = 256
OPERATOR_KINDS = ("poisson-1d", "single-layer-circle")


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """
    Coefficients c_k for |k| <= K_max, stored in mode order -K_max .. K_max.

    Args:
        values (np.ndarray): Complex array of length 2 K_max + 1
        mean_zero (bool): Declares c_0 = 0; checked on construction
    """

    values: np.ndarray
    mean_zero: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.ndim != 1 or values.size % 2 == 0:
            raise ConfigurationError("Fourier coefficients need an odd-length 1D array (modes -K..K)")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if self.mean_zero and abs(self.c0) > MEAN_ZERO_TOL * max(1.0, float(np.max(np.abs(values)))):
            raise MeanZeroError(f"declared mean-zero but c_0 = {self.c0:.3e}; <f, 1> = 0 is required")

    @classmethod
    def zeros(cls, k_max, mean_zero=False):
        return cls(np.zeros(2 * k_max + 1, dtype=complex), mean_zero)

    @classmethod
    def from_modes(cls, modes, k_max=None, mean_zero=False):
        """Build from ``{k: c_k}``; modes not listed are zero."""
        k_max = max((abs(k) for k in modes), default=0) if k_max is None else k_max
        values = np.zeros(2 * k_max + 1, dtype=complex)
        for k, value in modes.items():
            if abs(k) > k_max:
                raise ConfigurationError(f"mode {k} exceeds K_max = {k_max}")
            values[k + k_max] = value
        return cls(values, mean_zero)

    @classmethod
    def cosine(cls, k, amplitude=1.0, k_max=None):
        """Coefficients of amplitude * cos(k x)."""
        k = abs(int(k))
        if k == 0:
            return cls.from_modes({0: amplitude}, k_max)
        return cls.from_modes({k: amplitude / 2.0, -k: amplitude / 2.0}, k_max, mean_zero=True)

    @property
    def k_max(self):
        return (self.values.size - 1) // 2

    @property
    def modes(self):
        return np.arange(-self.k_max, self.k_max + 1)

    @property
    def c0(self):
        return self.values[self.k_max]

    def __getitem__(self, k):
        if abs(k) > self.k_max:
            return 0.0
        return self.values[k + self.k_max]

    @property
    def is_real(self):
        """Conjugate symmetry c_{-k} = conj(c_k)."""
        return bool(np.allclose(self.values, np.conj(self.values[::-1]), rtol=0, atol=1e-14))

    def with_values(self, values, mean_zero=None):
        return FourierCoefficients(values, self.mean_zero if mean_zero is None else mean_zero)

    def scaled(self, factor):
        return self.with_values(self.values * factor)

    def padded(self, k_max):
        if k_max < self.k_max:
            raise ConfigurationError(f"cannot pad {self.k_max} modes down to {k_max}")
        extra = k_max - self.k_max
        return self.with_values(np.pad(self.values, extra))

    def evaluate(self, x):
        """Samples of sum c_k e^{ikx}; real part when the coefficients are conjugate symmetric."""
        x = np.asarray(x, dtype=float)
        samples = np.exp(1j * np.multiply.outer(x, self.modes)) @ self.values
        return samples.real if self.is_real else samples

    def l2_norm(self):
        return float(linalg.norm(self.values))

    def to_csv(self, path):
        """Rows ``k,re,im`` for every stored mode."""
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\r\n")
            writer.writerow(["k", "re", "im"])
            for k, value in zip(self.modes, self.values):
                writer.writerow([int(k), f"{value.real:.17g}", f"{value.imag:.17g}"])

    @classmethod
    def from_csv(cls, path, mean_zero=None):
        """
        Read ``k,re,im`` rows; ``mean_zero`` defaults to whether c_0 vanishes.

        Raises:
            ConfigurationError: On malformed rows
        """
        modes = {}
        with open(path, newline="") as handle:
            reader = csv.DictReader(handle)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["k", "re", "im"]:
                raise ConfigurationError(f"{path}: expected header k,re,im", field="coefficients")
            for line, row in enumerate(reader, start=2):
                try:
                    modes[int(row["k"])] = complex(float(row["re"]), float(row["im"]))
                except (TypeError, ValueError) as exc:
                    raise ConfigurationError(f"{path}:{line}: bad coefficient row {row}", field="coefficients") from exc
        if mean_zero is None:
            mean_zero = modes.get(0, 0.0) == 0
        return cls.from_modes(modes, mean_zero=mean_zero)


@dataclass(frozen=True, eq=False)
class SineSeries:
    """Coefficients b_1 .. b_K of sum b_k sin(k pi x) on (0, 1)."""

    coefficients: np.ndarray

    def __post_init__(self):
        coefficients = np.array(self.coefficients, dtype=float).ravel()
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def from_modes(cls, modes, k_max=None):
        k_max = max(modes, default=1) if k_max is None else k_max
        coefficients = np.zeros(k_max)
        for k, value in modes.items():
            if not 1 <= k <= k_max:
                raise ConfigurationError(f"sine mode {k} outside 1..{k_max}")
            coefficients[k - 1] = value
        return cls(coefficients)

    @classmethod
    def from_samples(cls, values):
        """Sine coefficients of samples at x_m = m / M, m = 0..M (endpoints ignored)."""
        values = np.asarray(values, dtype=float)
        count = values.size - 1
        return cls(fft.dst(values[1:-1], type=1) / count)

    @property
    def k_max(self):
        return self.coefficients.size

    @property
    def wavenumbers(self):
        return math.pi * np.arange(1, self.k_max + 1)

    def sample(self, level):
        """
        Samples at x_m = m 2^-level, m = 0 .. 2^level, by a type-I DST.

        Raises:
            ParameterError: If the grid cannot resolve K_max modes
        """
        count = 2 ** level
        if self.k_max > count - 1:
            raise ParameterError(f"level {level} resolves at most {count - 1} sine modes, got {self.k_max}", field="levels")
        padded = np.zeros(count - 1)
        padded[: self.k_max] = self.coefficients
        return np.concatenate(([0.0], fft.dst(padded, type=1) / 2.0, [0.0]))

    def evaluate(self, x):
        x = np.asarray(x, dtype=float)
        return np.sin(np.multiply.outer(x, self.wavenumbers)) @ self.coefficients

    def to_fourier(self):
        """Coefficients of the odd 2-periodic extension in the variable theta = pi x."""
        values = np.zeros(2 * self.k_max + 1, dtype=complex)
        values[self.k_max + 1:] = self.coefficients / 2j
        values[: self.k_max] = (-self.coefficients / 2j)[::-1]
        return FourierCoefficients(values, mean_zero=True)

    def scaled(self, factor):
        return SineSeries(self.coefficients * factor)


@dataclass(frozen=True)
class SolutionOperator:
    """
    Diagonal operator A and its solution operator S = A^{-1} on the active modes.

    ``poisson-1d`` acts on sine modes k = 1..K with A = (k pi)^2;
    ``single-layer-circle`` acts on Fourier modes 1 <= |k| <= K with A = 1 / (2|k|).
    """

    kind: str
    k_max: int

    def __post_init__(self):
        if self.kind not in OPERATOR_KINDS:
            raise ConfigurationError(f"unknown operator {self.kind!r}; expected {OPERATOR_KINDS}", field="kind")
        if self.k_max < 1:
            raise ParameterError("solution operators need at least one active mode", field="k_max")

    @property
    def active_modes(self):
        k = np.arange(1, self.k_max + 1)
        if self.kind == "poisson-1d":
            return k
        return np.concatenate((-k[::-1], k))

    def operator_multipliers(self, modes=None):
        k = np.abs(self.active_modes if modes is None else np.asarray(modes)).astype(float)
        if self.kind == "poisson-1d":
            return (math.pi * k) ** 2
        with np.errstate(divide="ignore"):
            return np.where(k > 0, 1.0 / (2.0 * np.where(k > 0, k, 1.0)), 0.0)

    def solution_multipliers(self, modes=None):
        k = np.abs(self.active_modes if modes is None else np.asarray(modes)).astype(float)
        if self.kind == "poisson-1d":
            return 1.0 / (math.pi * np.maximum(k, 1.0)) ** 2 * (k > 0)
        return 2.0 * k

    def section_norms(self):
        """(||S||, ||S^-1||) of the solution operator on the active-mode section."""
        singular = linalg.svdvals(np.diag(self.solution_multipliers()))
        return float(singular[0]), float(1.0 / singular[-1])


def poisson_solve_1d(f):
    """
    Solve -u'' = f on (0, 1) with u(0) = u(1) = 0.

    Args:
        f (SineSeries): Right-hand side in the sine basis

    Returns:
        SineSeries: u with u_k = f_k / (k pi)^2
    """
    operator = SolutionOperator("poisson-1d", max(f.k_max, 1))
    return SineSeries(f.coefficients * operator.solution_multipliers())


def finite_difference_residual(u, f, level=10):
    """Grid L2 norm of -D_h^2 u - f over interior points of the level grid."""
    h = 2.0 ** -level
    values = u.sample(level)
    laplacian = -np.diff(values, 2) / h ** 2
    residual = laplacian - f.sample(level)[1:-1]
    return float(math.sqrt(h * np.sum(residual ** 2)))


def _require_mean_zero(c):
    scale = max(1.0, float(np.max(np.abs(c.values))))
    if abs(c.c0) > MEAN_ZERO_TOL * scale:
        raise MeanZeroError(
            f"single layer operator acts on mean-zero functions (<f, 1> = 0); got c_0 = {c.c0:.3e}"
        )


def single_layer_apply(f):
    """
    Apply the single layer potential on the unit circle: (A f)_k = f_k / (2|k|).

    Raises:
        MeanZeroError: If c_0 does not vanish
    """
    _require_mean_zero(f)
    operator = SolutionOperator("single-layer-circle", max(f.k_max, 1))
    values = np.array(f.values) * operator.operator_multipliers(f.modes)
    return FourierCoefficients(values, mean_zero=True)


def single_layer_solve(phi):
    """
    Invert the single layer potential: f_k = 2|k| phi_k.

    Raises:
        MeanZeroError: If c_0 does not vanish
    """
    _require_mean_zero(phi)
    operator = SolutionOperator("single-layer-circle", max(phi.k_max, 1))
    values = np.array(phi.values) * operator.solution_multipliers(phi.modes)
    return FourierCoefficients(values, mean_zero=True)


def single_layer_quadrature(k):
    """
    Multiplier of cos(k theta) under -(1/2pi) int log|x - y| f(y) dGamma(y).

    On the unit circle |x - y| = 2|sin(phi/2)|, which gives
    -(1/pi) int_0^pi log(2 sin(phi/2)) cos(k phi) d phi. The logarithmic
    endpoint singularity is integrated with an algebraic-log weight.
    """
    singular, _ = integrate.quad(
        lambda phi: math.cos(k * phi), 0.0, math.pi, weight="alg-loga", wvar=(0.0, 0.0), limit=200
    )
    regular, _ = integrate.quad(
        lambda phi: math.log(np.sinc(phi / (2.0 * math.pi))) * math.cos(k * phi), 0.0, math.pi, limit=200
    )
    return -(singular + regular) / math.pi


@lru_cache(maxsize=None)
def confirm_single_layer_multipliers(modes=tuple(range(1, 9)), tol=1e-6):
    """
    Check 1/(2k) against quadrature for each mode.

    Returns:
        dict: ``{k: (quadrature, 1/(2k))}``

    Raises:
        NumericError: If any mode deviates by more than ``tol``
    """
    table = {}
    for k in modes:
        measured = single_layer_quadrature(k)
        expected = 1.0 / (2.0 * k)
        if abs(measured - expected) > tol:
            raise NumericError(f"single layer multiplier for k={k}: quadrature {measured:.10f} vs 1/(2k) {expected:.10f}")
        table[k] = (measured, expected)
    logger.debug("single layer multipliers confirmed for k in %s", list(modes))
    return table


def lp_cutoff(x):
    """Canonical bump: 1 on |x| <= 1, 0 on |x| >= 2, smooth in between."""
    return smooth_cutoff(np.abs(np.asarray(x, dtype=float)) - 1.0)


def lp_block_weights(modes, j):
    """phi_j(k): phi(k) for j = 0 and phi(2^-j k) - phi(2^{1-j} k) for j >= 1."""
    modes = np.asarray(modes, dtype=float)
    if j == 0:
        return lp_cutoff(modes)
    return lp_cutoff(modes * 2.0 ** -j) - lp_cutoff(modes * 2.0 ** (1 - j))


def _sample_count(k_max):
    return max(MIN_SAMPLES, 4 * 2 ** math.ceil(math.log2(k_max + 1)))


def lp_block_norms(c, p):
    """L_p(T) norms of the Littlewood-Paley blocks sum_k phi_j(k) c_k e^{ikx}, j = 0 .. J."""
    p = BesovParams(0, p, 2).p
    size = _sample_count(c.k_max)
    modes = c.modes
    nblocks = (math.ceil(math.log2(c.k_max)) + 2) if c.k_max >= 1 else 1
    norms = []
    for j in range(nblocks):
        weighted = lp_block_weights(modes, j) * c.values
        if not np.any(weighted):
            norms.append(0.0)
            continue
        spectrum = np.zeros(size, dtype=complex)
        spectrum[modes % size] = weighted
        samples = np.abs(fft.ifft(spectrum) * size)
        if math.isinf(p):
            norms.append(float(samples.max()))
        else:
            norms.append(float(np.mean(samples ** p) ** (1.0 / p)))
    return np.array(norms)


def periodic_besov_norm(c, params):
    """
    Fourier-analytic Besov quasi-norm on the torus.

    (sum_j 2^{s j q} ||sum_k phi_j(k) c_k e^{ikx}||_{L_p}^q)^{1/q}, each block
    evaluated on a dense uniform grid by an inverse FFT.

    Raises:
        ParameterError: For d != 1 (p, q are validated by BesovParams)
    """
    if params.d != 1:
        raise ParameterError("periodic Besov norms are one-dimensional", field="d")
    blocks = lp_block_norms(c, params.p)
    scaled = 2.0 ** (params.s * np.arange(blocks.size)) * blocks
    if math.isinf(params.q):
        return float(scaled.max())
    return float(np.sum(scaled ** params.q) ** (1.0 / params.q))


def dyadic_modes(j):
    """Positive modes 2^{j-1} .. 2^j - 1 of dyadic block j >= 1."""
    return np.arange(2 ** (j - 1), 2 ** j)


def _as_function(amplitudes, basis):
    if basis == "sine":
        return SineSeries(amplitudes)
    k_max = amplitudes.size
    values = np.zeros(2 * k_max + 1)
    values[k_max + 1:] = amplitudes / 2.0
    values[:k_max] = (amplitudes / 2.0)[::-1]
    return FourierCoefficients(values, mean_zero=True)


def _function_norm(element, source):
    fourier = element.to_fourier() if isinstance(element, SineSeries) else element
    return periodic_besov_norm(fourier, source)


def spectral_ball_element(source, nlevels, profile, rng=None, basis="fourier", level=None, max_block=512):
    """
    Real mean-zero unit-ball element of the periodic Besov space on dyadic blocks 1..nlevels.

    Profiles mirror the sequence-space extremals: ``equal-block`` (every
    block contributes equally), ``lacunary`` (one mode per block),
    ``single-level`` (block ``level``, default ``nlevels``) and ``random``
    (random blocks, counts and Pareto magnitudes from ``rng``). The Fourier
    basis yields cosine series, the sine basis sine series on (0, 1) measured
    through their odd periodic extension.

    Returns:
        FourierCoefficients | SineSeries: Element with periodic Besov norm 1
    """
    if basis not in ("fourier", "sine"):
        raise ConfigurationError(f"unknown basis {basis!r}", field="basis")
    if nlevels < 1:
        raise ParameterError("spectral ball elements need at least one dyadic block", field="levels")
    amplitudes = np.zeros(2 ** nlevels - 1)

    def block_unit(modes, magnitudes):
        part = np.zeros_like(amplitudes)
        part[modes - 1] = magnitudes
        return part / _function_norm(_as_function(part, basis), source)

    if profile == "equal-block":
        for j in range(1, nlevels + 1):
            modes = dyadic_modes(j)
            amplitudes += block_unit(modes, np.ones(modes.size))
    elif profile == "lacunary":
        for j in range(1, nlevels + 1):
            amplitudes += block_unit(dyadic_modes(j)[:1], np.ones(1))
    elif profile == "single-level":
        j = nlevels if level is None else level
        if not 1 <= j <= nlevels:
            raise ParameterError(f"block {j} outside 1..{nlevels}", field="levels")
        modes = dyadic_modes(j)
        amplitudes += block_unit(modes, np.ones(modes.size))
    elif profile == "random":
        rng = np.random.default_rng(0) if rng is None else rng
        active = rng.choice(np.arange(1, nlevels + 1), size=rng.integers(1, nlevels + 1), replace=False)
        for j in sorted(active):
            modes = dyadic_modes(int(j))
            count = int(rng.integers(1, min(modes.size, max_block) + 1))
            picked = np.sort(rng.choice(modes, size=count, replace=False))
            magnitudes = (rng.pareto(1.5, size=count) + 1e-3) * rng.choice([-1.0, 1.0], size=count)
            amplitudes[picked - 1] += magnitudes * 2.0 ** (-source.s * int(j))
    else:
        raise ParameterError(
            f"unknown profile {profile!r}; expected equal-block, lacunary, single-level or random",
            field="profile",
        )
    element = _as_function(amplitudes, basis)
    return element.scaled(1.0 / _function_norm(element, source))
