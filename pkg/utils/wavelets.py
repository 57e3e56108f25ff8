"""Compactly supported biorthogonal wavelet systems on R and R^2.

Filters follow the convention

    phi(x)   = sqrt(2) * sum_n h_n  phi(2x - n)
    psi(x)   = sqrt(2) * sum_n g_n  phi(2x - n),   g_n  = (-1)^n ht_{1-n}
    phit(x)  = sqrt(2) * sum_n ht_n phit(2x - n)
    psit(x)  = sqrt(2) * sum_n gt_n phit(2x - n),  gt_n = (-1)^n h_{1-n}

so lowpass filters sum to sqrt(2). Two-dimensional systems are tensor
products; wavelet type ``i`` has bit ``a`` set when the factor along axis
``a`` is a wavelet (1: wavelet in x, 2: wavelet in y, 3: both).

Transforms operate on the primal multiresolution space of the sampling
level: samples of a function at spacing 2^-L are converted to level-L
scaling coefficients, pushed through the filter bank, and collected in a
:class:`~utils.coefficients.CoefficientArray` whose level -1 holds the
level-0 scaling coefficients.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np
from scipy import integrate, linalg

from .coefficients import CoefficientArray, DyadicGrid
from .errors import ConfigurationError, NumericError, ResolutionError

logger = logging.getLogger(__name__)

SQRT2 = math.sqrt(2.0)
PR_TOL = 1e-12
EIGEN_TOL = 1e-8

# (primal lowpass, dual lowpass) as "start: taps", taps summing to 1, plus
# (primal, dual) Sobolev smoothness estimates.
FAMILIES = {
    (1, 1): ("haar", "0: 1/2 1/2", "0: 1/2 1/2", (0.5, 0.5)),
    (2, 2): ("cdf22", "0: 1/4 1/2 1/4", "-1: -1/8 1/4 3/4 1/4 -1/8", (1.5, 0.44)),
    (2, 4): (
        "cdf24",
        "0: 1/4 1/2 1/4",
        "-3: 3/128 -3/64 -1/8 19/64 45/64 19/64 -1/8 -3/64 3/128",
        (1.5, 1.0),
    ),
}
FAMILY_ALIASES = {name: key for key, (name, *_rest) in FAMILIES.items()}
SUPPORTED_DIMENSIONS = (1, 2)


@dataclass(frozen=True, eq=False)
class Filter:
    """Finite filter ``taps[n - start]`` for ``n = start .. stop``."""

    start: int
    taps: np.ndarray

    def __post_init__(self):
        taps = np.array(self.taps, dtype=float)
        taps.setflags(write=False)
        object.__setattr__(self, "taps", taps)
        object.__setattr__(self, "start", int(self.start))

    @property
    def stop(self):
        return self.start + len(self.taps) - 1

    @property
    def indices(self):
        return np.arange(self.start, self.stop + 1)

    def modulated(self):
        """Return the filter ``(-1)^n f_{1-n}`` (lowpass to companion highpass)."""
        n = np.arange(1 - self.stop, 2 - self.start)
        return Filter(1 - self.stop, (-1.0) ** n * self.taps[::-1])

    def zeros_at_pi(self, limit=16):
        """Order of the zero of the symbol at pi (number of alternating moments that vanish)."""
        n = self.indices.astype(float)
        signs = (-1.0) ** self.indices
        scale = max(1.0, float(np.max(np.abs(n))))
        order = 0
        while order < limit and abs(np.sum(signs * (n / scale) ** order * self.taps)) < 1e-10:
            order += 1
        return order


def _parse_taps(text):
    """Parse ``"start: t1 t2 ..."`` with rational or decimal taps."""
    head, _, body = text.partition(":")
    if not body:
        head, *rest = text.split()
        body = " ".join(rest)
    try:
        start = int(head)
        taps = [float(Fraction(token)) for token in body.split()]
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse filter taps {text!r}: {exc}", field="filters") from exc
    if not taps:
        raise ConfigurationError(f"empty filter {text!r}", field="filters")
    taps = np.array(taps)
    # lowpass filters may be given normalized to sum 1
    if abs(taps.sum() - 1.0) < 1e-12:
        taps = taps * SQRT2
    return Filter(start, taps)


def _correlate(a, b, shift):
    """sum_n a_n b_{n + shift}."""
    total = 0.0
    for n, value in zip(a.indices, a.taps):
        m = n + shift
        if b.start <= m <= b.stop:
            total += value * b.taps[m - b.start]
    return total


def _integer_values(lowpass):
    """Values of the scaling function at the integers of its support.

    Solves the two-scale eigenproblem ``v = T v`` with
    ``T[m, n] = sqrt(2) h_{2m-n}``. A degenerate eigenspace (Haar) is
    resolved by iterating ``T`` from a delta at the left support end, which
    selects the right-continuous solution.
    """
    support = lowpass.indices
    size = len(support)
    if size == 1:
        return Filter(lowpass.start, [1.0])
    transfer = np.zeros((size, size))
    for row, m in enumerate(support):
        for col, n in enumerate(support):
            idx = 2 * m - n
            if lowpass.start <= idx <= lowpass.stop:
                transfer[row, col] = SQRT2 * lowpass.taps[idx - lowpass.start]
    eigvals, eigvecs = linalg.eig(transfer)
    near_one = np.flatnonzero(np.abs(eigvals - 1.0) < EIGEN_TOL)
    if len(near_one) == 0:
        raise NumericError("two-scale relation has no eigenvalue 1; cascade does not converge")
    if len(near_one) == 1:
        vector = np.real(eigvecs[:, near_one[0]])
    else:
        vector = np.zeros(size)
        vector[0] = 1.0
        for _ in range(200):
            updated = transfer @ vector
            if np.max(np.abs(updated - vector)) < 1e-14:
                break
            vector = updated
        else:
            raise NumericError("cascade iteration for integer samples did not converge")
    vector[np.abs(vector) < 1e-14] = 0.0
    total = vector.sum()
    if abs(total) < EIGEN_TOL:
        raise NumericError("integer samples of the scaling function do not sum to a nonzero value")
    return Filter(lowpass.start, vector / total)


@dataclass(frozen=True, eq=False)
class WaveletSystem:
    """Biorthogonal filter quadruple with support, smoothness and moment metadata.

    Args:
        name (str): Family label such as ``"cdf22"``
        primal_lowpass (Filter): h
        dual_lowpass (Filter): ht
        dimension (int): 1 or 2
        smoothness (float): Sobolev smoothness estimate of the primal generators
        dual_smoothness (float): Same for the dual generators
    """

    name: str
    primal_lowpass: Filter
    dual_lowpass: Filter
    dimension: int = 1
    smoothness: float = 0.0
    dual_smoothness: float = 0.0
    family: tuple = field(default=None)

    def __post_init__(self):
        if self.dimension not in SUPPORTED_DIMENSIONS:
            raise ConfigurationError(
                f"unsupported dimension {self.dimension}; supported: {SUPPORTED_DIMENSIONS}",
                field="dimension",
            )

    @cached_property
    def primal_highpass(self):
        return self.dual_lowpass.modulated()

    @cached_property
    def dual_highpass(self):
        return self.primal_lowpass.modulated()

    @property
    def primal_moments(self):
        """Number of vanishing moments of the primal wavelet."""
        return self.dual_lowpass.zeros_at_pi()

    @property
    def dual_moments(self):
        return self.primal_lowpass.zeros_at_pi()

    @property
    def vanishing_moments(self):
        """Highest moment order that vanishes for both primal and dual wavelets."""
        return min(self.primal_moments, self.dual_moments) - 1

    def support(self, kind="scaling", side="primal"):
        """1D support interval of the unit-level generator."""
        low = self.primal_lowpass if side == "primal" else self.dual_lowpass
        if kind == "scaling":
            return (float(low.start), float(low.stop))
        high = self.primal_highpass if side == "primal" else self.dual_highpass
        return ((high.start + low.start) / 2.0, (high.stop + low.stop) / 2.0)

    @property
    def support_radius(self):
        """Smallest integer N with every generator support inside [-N, N]."""
        ends = []
        for side in ("primal", "dual"):
            for kind in ("scaling", "wavelet"):
                ends.extend(abs(v) for v in self.support(kind, side))
        return int(math.ceil(max(ends)))

    @property
    def wavelet_types(self):
        return tuple(range(1, 2 ** self.dimension))

    def regularity_for(self, s):
        """Regularity available for characterizing H^s: primal for s >= 0, dual otherwise."""
        return self.smoothness if s >= 0 else self.dual_smoothness

    def swapped(self):
        """The same pair with primal and dual roles exchanged."""
        return WaveletSystem(
            self.name + "-dual",
            self.dual_lowpass,
            self.primal_lowpass,
            self.dimension,
            self.dual_smoothness,
            self.smoothness,
            self.family,
        )

    def with_dimension(self, dimension):
        return WaveletSystem(
            self.name, self.primal_lowpass, self.dual_lowpass, dimension,
            self.smoothness, self.dual_smoothness, self.family,
        )

    @cached_property
    def integer_values(self):
        """Primal scaling function sampled at the integers."""
        return _integer_values(self.primal_lowpass)

    @cached_property
    def pulse_offset(self):
        """Offset o when phi at the integers is the unit pulse at o, else None."""
        values = self.integer_values.taps
        peak = int(np.argmax(np.abs(values)))
        if abs(values[peak] - 1.0) < 1e-12 and abs(np.sum(np.abs(values)) - 1.0) < 1e-12:
            return self.integer_values.start + peak
        return None

    def perfect_reconstruction_residual(self):
        """Largest deviation from the biorthogonal filter-bank identities."""
        h, ht = self.primal_lowpass, self.dual_lowpass
        g, gt = self.primal_highpass, self.dual_highpass
        width = max(len(h.taps), len(ht.taps)) + 2
        residual = max(abs(h.taps.sum() - SQRT2), abs(ht.taps.sum() - SQRT2))
        for k in range(-width, width + 1):
            delta = 1.0 if k == 0 else 0.0
            residual = max(
                residual,
                abs(_correlate(h, ht, 2 * k) - delta),
                abs(_correlate(g, gt, 2 * k) - delta),
                abs(_correlate(h, gt, 2 * k)),
                abs(_correlate(g, ht, 2 * k)),
            )
        return residual


def _resolve_family(family):
    if isinstance(family, str):
        key = family.strip().lower().replace("(", "").replace(")", "").replace(" ", "")
        if key in FAMILY_ALIASES:
            return FAMILY_ALIASES[key]
        try:
            family = tuple(int(v) for v in key.split(","))
        except ValueError:
            family = key
    family = tuple(family) if not isinstance(family, str) else family
    if family not in FAMILIES:
        supported = ", ".join(f"{key} ({name})" for key, (name, *_rest) in FAMILIES.items())
        raise ConfigurationError(
            f"unsupported wavelet family {family!r}; supported: {supported}", field="family"
        )
    return family


def build_system(family, dimension=1):
    """
    Construct one of the built-in CDF biorthogonal spline pairs.

    Args:
        family: ``(1, 1)``/``"haar"``, ``(2, 2)``/``"cdf22"`` or ``(2, 4)``/``"cdf24"``
        dimension (int): 1 or 2

    Returns:
        WaveletSystem: The requested system

    Raises:
        ConfigurationError: If the family or dimension is unsupported
    """
    key = _resolve_family(family)
    name, primal, dual, (smooth, dual_smooth) = FAMILIES[key]
    system = WaveletSystem(
        name, _parse_taps(primal), _parse_taps(dual), dimension, smooth, dual_smooth, key
    )
    residual = system.perfect_reconstruction_residual()
    if residual > PR_TOL:
        raise NumericError(f"built-in family {name} violates perfect reconstruction ({residual:.2e})")
    logger.debug("built %s (d=%d, N=%d)", name, dimension, system.support_radius)
    return system


def load_filters(path, dimension=1):
    """
    Build a system from a filter text file.

    Each non-comment line holds one entry: ``name LABEL``,
    ``primal_lowpass START: taps...``, ``dual_lowpass START: taps...`` or
    ``smoothness PRIMAL DUAL``. Taps are rationals or decimals; lowpass taps
    summing to 1 are rescaled to sum sqrt(2).

    Raises:
        ConfigurationError: If a line is malformed or the filters are not a biorthogonal pair
    """
    entries = {}
    with open(path, "r") as handle:
        for line in handle:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, _, rest = line.partition(" ")
            entries[key.strip()] = rest.strip()
    missing = {"primal_lowpass", "dual_lowpass"} - set(entries)
    if missing:
        raise ConfigurationError(f"filter file {path} lacks {sorted(missing)}", field="filters")
    smoothness = (0.0, 0.0)
    if "smoothness" in entries:
        smoothness = tuple(float(v) for v in entries["smoothness"].split())
        if len(smoothness) == 1:
            smoothness = smoothness * 2
    else:
        logger.warning("filter file %s declares no smoothness; assuming r = 0", path)
    system = WaveletSystem(
        entries.get("name", "custom"),
        _parse_taps(entries["primal_lowpass"]),
        _parse_taps(entries["dual_lowpass"]),
        dimension,
        smoothness[0],
        smoothness[1],
    )
    residual = system.perfect_reconstruction_residual()
    if residual > 1e-10:
        raise ConfigurationError(
            f"filters in {path} do not form a biorthogonal pair (residual {residual:.2e})",
            field="filters",
        )
    return system


# sequence plumbing ----------------------------------------------------------
# A sequence is (starts, array) with starts the integer index of array[0, ...].


def _convolve_axis(seq, taps, taps_start, axis):
    starts, arr = seq
    out = np.apply_along_axis(np.convolve, axis, arr, taps)
    starts = list(starts)
    starts[axis] += taps_start
    return tuple(starts), out


def _downsample_axis(seq, filt, axis):
    """c[k] = sum_n filt[n - 2k] x[n] along ``axis``."""
    starts, y = _convolve_axis(seq, filt.taps[::-1], -filt.stop, axis)
    first = -(-starts[axis] // 2)
    offset = 2 * first - starts[axis]
    index = [slice(None)] * y.ndim
    index[axis] = slice(offset, None, 2)
    starts = list(starts)
    starts[axis] = first
    return tuple(starts), y[tuple(index)]


def _upsample_axis(seq, filt, axis):
    """y[n] = sum_k filt[n - 2k] c[k] along ``axis``."""
    starts, arr = seq
    shape = list(arr.shape)
    shape[axis] = 2 * arr.shape[axis] - 1
    up = np.zeros(shape)
    index = [slice(None)] * arr.ndim
    index[axis] = slice(None, None, 2)
    up[tuple(index)] = arr
    starts = list(starts)
    starts[axis] *= 2
    return _convolve_axis((tuple(starts), up), filt.taps, filt.start, axis)


def _add(a, b):
    if a is None:
        return b
    if b is None:
        return a
    lo = [min(sa, sb) for sa, sb in zip(a[0], b[0])]
    hi = [max(sa + na, sb + nb) for sa, na, sb, nb in zip(a[0], a[1].shape, b[0], b[1].shape)]
    out = np.zeros([h - l for l, h in zip(lo, hi)])
    for starts, arr in (a, b):
        index = tuple(slice(s - l, s - l + n) for s, l, n in zip(starts, lo, arr.shape))
        out[index] += arr
    return tuple(lo), out


def _analysis_step(system, seq):
    parts = {0: seq}
    for axis in range(system.dimension):
        split = {}
        for mask, part in parts.items():
            split[mask] = _downsample_axis(part, system.dual_lowpass, axis)
            split[mask | (1 << axis)] = _downsample_axis(part, system.dual_highpass, axis)
        parts = split
    return parts


def _synthesis_step(system, parts):
    for axis in reversed(range(system.dimension)):
        bit = 1 << axis
        merged = {}
        for mask in {m & ~bit for m in parts}:
            low, high = parts.get(mask), parts.get(mask | bit)
            up_low = _upsample_axis(low, system.primal_lowpass, axis) if low is not None else None
            up_high = _upsample_axis(high, system.primal_highpass, axis) if high is not None else None
            merged[mask] = _add(up_low, up_high)
        parts = merged
    return parts.get(0)


def _dense_block(entries, dimension):
    """Dense array of ``{k: value}`` covering the bounding box of the keys."""
    keys = np.array(list(entries), dtype=int).reshape(-1, dimension)
    lo = keys.min(axis=0)
    out = np.zeros(keys.max(axis=0) - lo + 1)
    for k, value in entries.items():
        out[tuple(np.array(k) - lo)] = value
    return tuple(int(v) for v in lo), out


def _prefilter(system, grid):
    """Level-L scaling coefficients of the primal interpolant of the grid samples."""
    scale = 2.0 ** (-grid.level * grid.dimension / 2.0)
    offset = system.pulse_offset
    if offset is not None:
        starts = tuple(m - offset for m in grid.offsets)
        return starts, scale * np.array(grid.values)
    seq = (grid.offsets, scale * np.array(grid.values))
    phi = system.integer_values
    for axis in range(grid.dimension):
        seq = _deconvolve_axis(seq, phi, axis)
    return seq


def _deconvolve_axis(seq, phi, axis):
    """Minimum-norm c with (c * phi)[m] = x[m] on the sampled range."""
    starts, arr = seq
    count = arr.shape[axis]
    ncoef = count + len(phi.taps) - 1
    row = np.zeros(ncoef)
    row[: len(phi.taps)] = phi.taps[::-1]
    # c is indexed from m0 - stop
    matrix = linalg.toeplitz(np.r_[phi.taps[-1], np.zeros(count - 1)], row)
    moved = np.moveaxis(arr, axis, 0).reshape(count, -1)
    solution = linalg.lstsq(matrix, moved)[0]
    shape = list(np.moveaxis(arr, axis, 0).shape)
    shape[0] = ncoef
    out = np.moveaxis(solution.reshape(shape), 0, axis)
    starts = list(starts)
    starts[axis] -= phi.stop
    return tuple(starts), out


def analyze(system, f, max_level):
    """
    Compute <f, psit_{i,j,k}> for levels -1 .. max_level by the fast filter bank.

    The grid samples are read as a function of the primal multiresolution
    space at the grid level (zero outside the box), for which the result is
    exact.

    Args:
        system (WaveletSystem): Wavelet system
        f (DyadicGrid): Samples at level L >= max_level + 1
        max_level (int): Finest wavelet level J to keep

    Returns:
        CoefficientArray: Coefficients keyed ``(j, i, k...)``

    Raises:
        ResolutionError: If the grid cannot resolve level ``max_level``
    """
    if f.dimension != system.dimension:
        raise ConfigurationError(f"grid dimension {f.dimension} does not match system dimension {system.dimension}")
    if max_level < -1 or f.level < max_level + 1:
        raise ResolutionError(
            f"analysis to level {max_level} needs sampling level >= {max_level + 1}, got {f.level}"
        )
    seq = _prefilter(system, f)
    entries = {}
    for level in range(f.level - 1, -1, -1):
        parts = _analysis_step(system, seq)
        seq = parts.pop(0)
        if level <= max_level:
            for wtype, (starts, arr) in parts.items():
                _collect(entries, level, wtype, starts, arr)
    _collect(entries, -1, 0, *seq)
    return CoefficientArray(entries, system.dimension)


def _collect(entries, level, wtype, starts, arr):
    for index in zip(*np.nonzero(arr)):
        k = tuple(int(s + i) for s, i in zip(starts, index))
        entries[(level, wtype) + k] = arr[index]


def _coefficients_by_level(c):
    grouped = {}
    for key, value in c.items():
        level, wtype, k = key[0], key[1], key[2:]
        grouped.setdefault(level, {}).setdefault(wtype, {})[k] = value
    return grouped


def synthesize(system, c, out_grid):
    """
    Sample sum a_k phi_k + sum a_{i,j,k} psi_{i,j,k} on ``out_grid``.

    Args:
        system (WaveletSystem): Wavelet system
        c (CoefficientArray): Coefficients
        out_grid (DyadicGrid): Grid defining level and box; its values are ignored

    Returns:
        DyadicGrid: Samples on the grid, zero where no atom reaches

    Raises:
        ResolutionError: If the grid level does not exceed the finest coefficient level
    """
    if out_grid.level < c.max_level + 1:
        raise ResolutionError(
            f"synthesis of level {c.max_level} needs grid level >= {c.max_level + 1}, got {out_grid.level}"
        )
    if len(c) == 0:
        return out_grid.with_values(0.0)
    d = system.dimension
    grouped = _coefficients_by_level(c)
    seq = _dense_block(grouped[-1][0], d) if -1 in grouped else None
    for level in range(out_grid.level):
        parts = {0: seq} if seq is not None else {}
        for wtype, block in grouped.get(level, {}).items():
            parts[wtype] = _dense_block(block, d)
        seq = _synthesis_step(system, parts) if parts else None
    if seq is None:
        return out_grid.with_values(0.0)
    phi = system.integer_values
    for axis in range(d):
        seq = _convolve_axis(seq, phi.taps, phi.start, axis)
    starts, arr = seq
    arr = arr * 2.0 ** (out_grid.level * d / 2.0)
    values = np.zeros(out_grid.shape)
    src, dst = [], []
    for s, n, m0, size in zip(starts, arr.shape, out_grid.offsets, out_grid.shape):
        lo, hi = max(s, m0), min(s + n, m0 + size)
        if hi <= lo:
            return out_grid.with_values(0.0)
        src.append(slice(lo - s, hi - s))
        dst.append(slice(lo - m0, hi - m0))
    values[tuple(dst)] = arr[tuple(src)]
    return out_grid.with_values(values)


def unit_key(dimension, level, wtype=None, shift=0):
    """Key of a single generator; ``shift`` may be an int or a tuple."""
    shift = (shift,) * dimension if np.isscalar(shift) else tuple(shift)
    if level == -1:
        return (-1, 0) + shift
    return (level, 1 if wtype is None else wtype) + shift


def evaluate_generator(system, which, grid):
    """
    Sample a unit generator through the cascade algorithm.

    Args:
        system (WaveletSystem): Wavelet system
        which (tuple): ``(side, i)`` with side ``"primal"`` or ``"dual"`` and
            ``i = 0`` for the scaling function, ``i >= 1`` for wavelet type i
        grid (DyadicGrid): Target grid

    Returns:
        DyadicGrid: Generator samples, exactly 0 outside [-N, N]^d
    """
    side, wtype = which
    if side not in ("primal", "dual"):
        raise ConfigurationError(f"generator side must be 'primal' or 'dual', got {side!r}")
    source = system if side == "primal" else system.swapped()
    key = unit_key(system.dimension, -1 if wtype == 0 else 0, wtype)
    return synthesize(source, CoefficientArray({key: 1.0}, system.dimension), grid)


def atom_support(system, key, side="primal"):
    """Per-axis support intervals of the atom ``key`` in x coordinates."""
    level, wtype, shift = key[0], key[1], key[2:]
    scale = 2.0 ** -max(level, 0)
    boxes = []
    for axis, k in enumerate(shift):
        kind = "wavelet" if wtype & (1 << axis) else "scaling"
        lo, hi = system.support(kind, side)
        boxes.append((scale * (k + lo), scale * (k + hi)))
    return tuple(boxes)


def vanishing_moments_check(system, order, level=10):
    """
    Moments |int x^alpha psi_i| of the primal wavelets up to ``order``.

    Integrals use the trapezoid rule on cascade samples, which is exact for
    piecewise-linear generators at these orders.

    Returns:
        dict: ``{(i, alpha): residual}``; alpha is an int for d = 1 and a
        tuple for d = 2 with ``|alpha| <= order``
    """
    base = system.with_dimension(1)
    n = base.support_radius
    grid = DyadicGrid.zeros(level, (-n, n))
    x = grid.axes()[0]
    factors = {
        "scaling": evaluate_generator(base, ("primal", 0), grid).values,
        "wavelet": evaluate_generator(base, ("primal", 1), grid).values,
    }
    moments = {
        (kind, a): integrate.trapezoid(x ** a * values, x)
        for kind, values in factors.items()
        for a in range(order + 1)
    }
    residuals = {}
    if system.dimension == 1:
        for a in range(order + 1):
            residuals[(1, a)] = abs(moments[("wavelet", a)])
        return residuals
    for wtype in system.wavelet_types:
        for a0 in range(order + 1):
            for a1 in range(order + 1 - a0):
                kinds = ["wavelet" if wtype & (1 << axis) else "scaling" for axis in range(2)]
                value = moments[(kinds[0], a0)] * moments[(kinds[1], a1)]
                residuals[(wtype, (a0, a1))] = abs(value)
    return residuals


def atom_matrix(system, keys, grid):
    """Columns of sampled primal atoms ``psi_key`` on ``grid``."""
    columns = []
    for key in keys:
        atom = synthesize(system, CoefficientArray({tuple(key): 1.0}, system.dimension), grid)
        columns.append(atom.values.ravel())
    return np.column_stack(columns) if columns else np.zeros((grid.values.size, 0))


def riesz_bounds(system, keys, grid):
    """
    Extreme singular values of the atom section ``keys`` in the grid L2 norm.

    Returns:
        tuple: ``(lower, upper)`` Riesz bounds of the section
    """
    matrix = atom_matrix(system, keys, grid)
    weights = np.sqrt(grid.trapezoid_weights().ravel())
    singular = linalg.svd(weights[:, None] * matrix, compute_uv=False)
    return float(singular[-1]), float(singular[0])


def biorthogonality_residual(system, max_level=4, shifts=4):
    """
    Largest |<psi_{i,j,k}, psit_{u,v,l}> - delta| over levels -1..max_level and |k| <= shifts.

    Each atom is synthesized on a grid wide enough to contain it and analyzed
    back; the filter bank evaluates all inner products with the dual system
    exactly on that grid.
    """
    d = system.dimension
    radius = system.support_radius + shifts + 1
    grid = DyadicGrid.zeros(max_level + 1, [(-radius, radius)] * d)
    worst = 0.0
    shift_range = range(-shifts, shifts + 1)
    for level in range(-1, max_level + 1):
        types = (0,) if level == -1 else system.wavelet_types
        for wtype in types:
            for shift in np.ndindex(*(len(shift_range),) * d):
                k = tuple(shift_range[i] for i in shift)
                key = (level, wtype) + k
                unit = CoefficientArray({key: 1.0}, d)
                back = analyze(system, synthesize(system, unit, grid), max_level)
                worst = max(worst, back.max_abs_difference(unit))
    logger.debug("biorthogonality residual of %s: %.3e", system.name, worst)
    return worst
