"""Sampling grids and sparse coefficient arrays.

A :class:`DyadicGrid` carries samples of a function at spacing 2^-J on an
axis-aligned box. A :class:`CoefficientArray` is the sparse map
``(j, i, k_1[, k_2]) -> value`` used for wavelet coefficients, frame
coefficients and elements of discrete Besov spaces alike.
"""

import json
import logging
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .errors import ConfigurationError, ResolutionError

logger = logging.getLogger(__name__)

ALIGN_TOL = 1e-9


def _as_box(box):
    """Normalize ``box`` to a tuple of (lo, hi) float pairs."""
    if np.isscalar(box[0]):
        box = (box,)
    return tuple((float(lo), float(hi)) for lo, hi in box)


@dataclass(frozen=True, eq=False)
class DyadicGrid:
    """Samples at spacing 2^-level on a closed box with dyadic corners.

    Args:
        level (int): Sampling level J >= 0
        box (tuple): ((lo, hi),) per axis; lo and hi must be multiples of 2^-J
        values (np.ndarray): Array of shape ``(box-width * 2^J + 1, ...)``
    """

    level: int
    box: tuple
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.level < 0:
            raise ResolutionError(f"grid level must be nonnegative, got {self.level}")
        box = _as_box(self.box)
        scale = 2.0 ** self.level
        shape = []
        for lo, hi in box:
            if hi <= lo:
                raise ConfigurationError(f"empty grid box axis ({lo}, {hi})", field="box")
            for edge in (lo, hi):
                if abs(edge * scale - round(edge * scale)) > ALIGN_TOL:
                    raise ConfigurationError(
                        f"box edge {edge} is not a multiple of 2^-{self.level}", field="box"
                    )
            shape.append(int(round((hi - lo) * scale)) + 1)
        values = np.array(self.values, dtype=float)
        if values.shape != tuple(shape):
            raise ConfigurationError(
                f"grid values have shape {values.shape}, expected {tuple(shape)}", field="values"
            )
        values.setflags(write=False)
        object.__setattr__(self, "box", box)
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, level, box):
        box = _as_box(box)
        shape = tuple(int(round((hi - lo) * 2.0 ** level)) + 1 for lo, hi in box)
        return cls(level, box, np.zeros(shape))

    @classmethod
    def from_function(cls, func, level, box):
        """Sample ``func`` (vectorized over coordinate arrays) on the grid."""
        grid = cls.zeros(level, box)
        return grid.with_values(func(*grid.mesh()))

    @property
    def dimension(self):
        return len(self.box)

    @property
    def spacing(self):
        return 2.0 ** -self.level

    @property
    def shape(self):
        return self.values.shape

    @property
    def offsets(self):
        """Integer index of the lower box corner on the level-J lattice."""
        return tuple(int(round(lo * 2.0 ** self.level)) for lo, _ in self.box)

    def axes(self):
        return [lo + self.spacing * np.arange(n) for (lo, _), n in zip(self.box, self.shape)]

    def mesh(self):
        return np.meshgrid(*self.axes(), indexing="ij")

    def with_values(self, values):
        return DyadicGrid(self.level, self.box, np.broadcast_to(values, self.shape))

    def trapezoid_weights(self):
        """Tensor trapezoid weights; their sum is the box volume."""
        weights = np.ones(self.shape)
        for axis, n in enumerate(self.shape):
            w = np.full(n, self.spacing)
            w[0] = w[-1] = self.spacing / 2
            shape = [1] * self.dimension
            shape[axis] = n
            weights = weights * w.reshape(shape)
        return weights

    def l2_norm(self, mask=None):
        """Grid L2 norm with trapezoid weights, optionally restricted to ``mask``."""
        weights = self.trapezoid_weights()
        if mask is not None:
            weights = weights * mask
        return float(np.sqrt(np.sum(weights * self.values ** 2)))

    def __add__(self, other):
        self._check_compatible(other)
        return self.with_values(self.values + other.values)

    def __sub__(self, other):
        self._check_compatible(other)
        return self.with_values(self.values - other.values)

    def _check_compatible(self, other):
        if self.level != other.level or self.box != other.box:
            raise ConfigurationError("grids differ in level or box")


def _normalize_key(key, dimension):
    key = tuple(int(v) for v in key)
    if len(key) != 2 + dimension:
        raise ConfigurationError(f"coefficient key {key} does not match dimension {dimension}")
    j, i = key[0], key[1]
    if j < -1:
        raise ConfigurationError(f"coefficient level {j} below -1")
    if (j == -1) != (i == 0):
        raise ConfigurationError(f"key {key}: type 0 is reserved for the scaling level -1")
    if j >= 0 and not 1 <= i <= 2 ** dimension - 1:
        raise ConfigurationError(f"key {key}: wavelet type must lie in 1..{2 ** dimension - 1}")
    return key


@dataclass(frozen=True, eq=False)
class CoefficientArray:
    """Sparse coefficients keyed by ``(j, i, k_1[, k_2])``.

    Level -1 holds scaling-function coefficients (type ``i = 0``), levels
    ``j >= 0`` hold wavelet coefficients of type ``i in 1..2^d-1``. Entries
    equal to exactly 0 are never stored. Iteration follows the total index
    order: lower level first, then lexicographic in ``(i, k)``.
    """

    entries: dict = field(default_factory=dict)
    dimension: int = 1

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ConfigurationError(f"unsupported dimension {self.dimension}; supported: 1, 2")
        clean = {}
        for key, value in dict(self.entries).items():
            value = float(value)
            if value != 0.0:
                clean[_normalize_key(key, self.dimension)] = value
        ordered = {key: clean[key] for key in sorted(clean)}
        object.__setattr__(self, "entries", MappingProxyType(ordered))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __contains__(self, key):
        return tuple(key) in self.entries

    def __getitem__(self, key):
        return self.entries.get(tuple(key), 0.0)

    def keys(self):
        return list(self.entries)

    def items(self):
        return self.entries.items()

    def values_array(self, keys=None):
        keys = self.keys() if keys is None else keys
        return np.array([self[key] for key in keys], dtype=float)

    def levels(self):
        return sorted({key[0] for key in self.entries})

    @property
    def max_level(self):
        return max((key[0] for key in self.entries), default=-1)

    def restrict(self, keys):
        keys = {tuple(k) for k in keys}
        return CoefficientArray({k: v for k, v in self.entries.items() if k in keys}, self.dimension)

    def without(self, keys):
        keys = {tuple(k) for k in keys}
        return CoefficientArray({k: v for k, v in self.entries.items() if k not in keys}, self.dimension)

    def map_values(self, func):
        """Apply a vectorized ``func`` to all stored values."""
        keys = self.keys()
        new = func(self.values_array(keys))
        return CoefficientArray(dict(zip(keys, new)), self.dimension)

    def scaled(self, factor):
        return CoefficientArray({k: factor * v for k, v in self.entries.items()}, self.dimension)

    def __add__(self, other):
        merged = dict(self.entries)
        for key, value in other.items():
            merged[key] = merged.get(key, 0.0) + value
        return CoefficientArray(merged, self.dimension)

    def __sub__(self, other):
        return self + other.scaled(-1.0)

    def __mul__(self, factor):
        return self.scaled(factor)

    __rmul__ = __mul__

    def max_abs_difference(self, other):
        keys = set(self.entries) | set(other.entries)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    # serialization -------------------------------------------------------

    def to_text(self):
        """Line-oriented form ``j i k... value``; values keep full precision."""
        lines = [" ".join(str(v) for v in key) + f" {value!r}" for key, value in self.entries.items()]
        return "\n".join(lines) + ("\n" if lines else "")

    @classmethod
    def from_text(cls, text, dimension=1):
        entries = {}
        for number, line in enumerate(text.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3 + dimension:
                raise ConfigurationError(f"line {number}: expected {3 + dimension} fields, got {len(parts)}")
            entries[tuple(int(p) for p in parts[:-1])] = float(parts[-1])
        return cls(entries, dimension)

    def to_json(self):
        payload = {
            "dimension": self.dimension,
            "entries": [list(key) + [value] for key, value in self.entries.items()],
        }
        return json.dumps(payload)

    @classmethod
    def from_json(cls, text):
        payload = json.loads(text)
        dimension = int(payload.get("dimension", 1))
        entries = {tuple(int(v) for v in row[:-1]): float(row[-1]) for row in payload["entries"]}
        return cls(entries, dimension)
