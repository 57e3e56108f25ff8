"""Frame pairs for H^s on bounded domains built from a wavelet system on R^d.

The frame consists of atoms g_{j,l} = chi_Omega psi_{j,l} and functionals
h_{j,l} = E^* psit_{j,l}, so that <f, h_{j,l}> = <E f, psit_{j,l}> for an
extension operator E. Indices are restricted to the sets

    Lambda_j = {k in Z^d : |2^-j k_i - x0_i| <= 2R + 2^-j N},

which cover every wavelet whose support meets B(x0, 2R), the support of E f.
"""

import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .besov import BesovParams, IndexFamily, Weight, besov_seq_norm, greedy_n_term
from .coefficients import CoefficientArray, DyadicGrid
from .errors import (
    ConfigurationError,
    GeometryError,
    IndexDomainError,
    ParameterError,
    RegularityError,
    ResolutionError,
)
from .frames import FramePair, check_stability, measure_constants
from .wavelets import analyze, atom_support, riesz_bounds, synthesize

logger = logging.getLogger(__name__)

EDGE_TOL = 1e-12
RADIUS_SLACK = 1.1
DEFAULT_MAX_LEVEL = {1: 8, 2: 6}
EXTENSION_METHODS = ("zero", "reflection")


@dataclass(frozen=True, eq=False)
class Domain:
    """
    Bounded domain: a union of intervals (d = 1) or an axis-aligned polygon (d = 2).

    Args:
        name (str): Label
        dimension (int): 1 or 2
        pieces (tuple): Intervals ``((a, b), ...)`` or polygon vertices ``((x, y), ...)``
        center (tuple): x0
        radius (float): R with Omega inside the closed ball B(x0, R)
    """

    name: str
    dimension: int
    pieces: tuple
    center: tuple
    radius: float

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ConfigurationError(f"unsupported domain dimension {self.dimension}", field="dimension")
        pieces = tuple(tuple(float(v) for v in piece) for piece in self.pieces)
        if not pieces:
            raise GeometryError(f"domain {self.name} is empty")
        if self.dimension == 1:
            pieces = tuple(sorted(pieces))
            if any(b <= a for a, b in pieces):
                raise GeometryError(f"domain {self.name} has an empty interval")
        else:
            _check_axis_aligned(pieces, self.name)
        center = tuple(float(c) for c in np.atleast_1d(self.center))
        if len(center) != self.dimension:
            raise GeometryError(f"center {center} does not match dimension {self.dimension}")
        object.__setattr__(self, "pieces", pieces)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", float(self.radius))
        needed = self.enclosing_radius()
        if self.radius < needed - EDGE_TOL:
            raise GeometryError(f"domain {self.name} is not inside B(x0, R): needs R >= {needed:.6g}")
        if self.radius > RADIUS_SLACK * needed:
            raise GeometryError(f"radius {self.radius:g} exceeds the minimal {needed:.6g} by more than 10%")

    def vertices(self):
        if self.dimension == 1:
            return np.array([[v] for piece in self.pieces for v in piece])
        return np.array(self.pieces)

    def enclosing_radius(self):
        return float(np.max(np.linalg.norm(self.vertices() - np.array(self.center), axis=1)))

    def bounding_box(self):
        vertices = self.vertices()
        return tuple((float(lo), float(hi)) for lo, hi in zip(vertices.min(axis=0), vertices.max(axis=0)))

    def contains(self, *coords):
        """Closed-domain membership of points given as coordinate arrays."""
        if self.dimension == 1:
            x = np.asarray(coords[0], dtype=float)
            inside = np.zeros(x.shape, dtype=bool)
            for a, b in self.pieces:
                inside |= (x >= a - EDGE_TOL) & (x <= b + EDGE_TOL)
            return inside
        x, y = (np.asarray(c, dtype=float) for c in coords)
        return _inside_polygon(self.pieces, x, y)

    def box_is_interior(self, box):
        """True when the closed box keeps positive distance from the boundary."""
        box = tuple(tuple(float(v) for v in axis) for axis in box)
        if self.dimension == 1:
            lo, hi = box[0]
            return any(a < lo - EDGE_TOL and hi + EDGE_TOL < b for a, b in self.pieces)
        (x0, x1), (y0, y1) = box
        for (ax, ay), (bx, by) in _edges(self.pieces):
            if (min(ax, bx) <= x1 + EDGE_TOL and max(ax, bx) >= x0 - EDGE_TOL
                    and min(ay, by) <= y1 + EDGE_TOL and max(ay, by) >= y0 - EDGE_TOL):
                return False
        return bool(self.contains(np.array([x0]), np.array([y0]))[0])


def _edges(vertices):
    return [(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def _check_axis_aligned(vertices, name):
    if len(vertices) < 4:
        raise GeometryError(f"polygon {name} needs at least 4 vertices")
    for (ax, ay), (bx, by) in _edges(vertices):
        if (ax != bx) == (ay != by):
            raise GeometryError(f"polygon {name} has a non axis-aligned or degenerate edge")


def _inside_polygon(vertices, x, y):
    inside = np.zeros(x.shape, dtype=bool)
    on_edge = np.zeros(x.shape, dtype=bool)
    for (ax, ay), (bx, by) in _edges(vertices):
        on_edge |= (
            (x >= min(ax, bx) - EDGE_TOL) & (x <= max(ax, bx) + EDGE_TOL)
            & (y >= min(ay, by) - EDGE_TOL) & (y <= max(ay, by) + EDGE_TOL)
        )
        if ay == by:
            continue
        crosses = (ay > y) != (by > y)
        x_cross = ax + (y - ay) * (bx - ax) / (by - ay)
        inside ^= crosses & (x < x_cross)
    return inside | on_edge


PRESETS = {
    "interval": lambda: Domain("interval", 1, ((0.0, 1.0),), (0.5,), 0.5),
    "union-intervals": lambda: Domain("union-intervals", 1, ((0.0, 0.375), (0.625, 1.0)), (0.5,), 0.5),
    "square": lambda: Domain(
        "square", 2, ((0, 0), (1, 0), (1, 1), (0, 1)), (0.5, 0.5), math.sqrt(0.5)
    ),
    "l-shape": lambda: Domain(
        "l-shape", 2, ((0, 0), (1, 0), (1, 0.5), (0.5, 0.5), (0.5, 1), (0, 1)), (0.5, 0.5), math.sqrt(0.5)
    ),
}


def domain_preset(name):
    """Built-in domain by name: interval, union-intervals, square or l-shape."""
    if name not in PRESETS:
        raise ConfigurationError(f"unknown domain {name!r}; presets: {', '.join(PRESETS)}", field="domain")
    return PRESETS[name]()


def load_domain(path):
    """
    Read a domain from JSON.

    ``{"name": ..., "intervals": [[a, b], ...]}`` for d = 1 or
    ``{"name": ..., "polygon": [[x, y], ...]}`` for d = 2; ``center`` and
    ``radius`` default to the bounding-box midpoint and the enclosing radius.
    """
    with open(path, "r") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"domain file {path} is not valid JSON: {exc}", field="domain") from exc
    if "intervals" in payload:
        dimension, pieces = 1, payload["intervals"]
    elif "polygon" in payload:
        dimension, pieces = 2, payload["polygon"]
    else:
        raise ConfigurationError(f"domain file {path} needs 'intervals' or 'polygon'", field="domain")
    vertices = np.array(pieces, dtype=float).reshape(-1, dimension)
    center = payload.get("center")
    if center is None:
        center = (vertices.min(axis=0) + vertices.max(axis=0)) / 2.0
    radius = payload.get("radius")
    if radius is None:
        radius = float(np.max(np.linalg.norm(vertices - np.asarray(center, dtype=float), axis=1)))
    return Domain(payload.get("name", "custom"), dimension, pieces, center, radius)


@dataclass(frozen=True)
class ExtensionOperator:
    """Extension by zero or by first-order reflection through the nearest boundary point.

    Reflection sets E f(b - t) = 3 f(b + t) - 2 f(b + 2t), so value and normal
    derivative agree at the boundary point b. Where the second mirror point
    leaves Omega it falls back to the even reflection f(b + t).

    The reflected values are multiplied by a C-infinity cutoff that equals 1
    on Omega and vanishes at distance ``cutoff * R``, which keeps the
    support of E f inside B(x0, 2R).
    """

    method: str = "reflection"
    cutoff: float = 0.9

    def __post_init__(self):
        if self.method not in EXTENSION_METHODS:
            raise ConfigurationError(
                f"unknown extension method {self.method!r}; expected {EXTENSION_METHODS}", field="extension"
            )
        if not 0 < self.cutoff < 1:
            raise ConfigurationError("extension cutoff must lie in (0, 1)", field="extension")


@dataclass(frozen=True)
class ExtensionResult:
    grid: DyadicGrid
    extension_not_smoothness_valid: bool = False


def _bump(u):
    with np.errstate(divide="ignore", over="ignore"):
        return np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)


def smooth_cutoff(t):
    """1 for t <= 0, 0 for t >= 1, C-infinity in between."""
    t = np.asarray(t, dtype=float)
    left, right = _bump(1.0 - t), _bump(t)
    return left / (left + right)


def extended_box(domain, level):
    """Dyadic-aligned box covering B(x0, 2R) at ``level``."""
    scale = 2.0 ** level
    return tuple(
        (math.floor((c - 2 * domain.radius) * scale) / scale, math.ceil((c + 2 * domain.radius) * scale) / scale)
        for c in domain.center
    )


def domain_box(domain, level):
    """Dyadic-aligned bounding box of the domain at ``level``."""
    scale = 2.0 ** level
    return tuple((math.floor(lo * scale) / scale, math.ceil(hi * scale) / scale) for lo, hi in domain.bounding_box())


def _transfer(source, target):
    """Copy overlapping samples of ``source`` into an array shaped like ``target``."""
    values = np.zeros(target.shape)
    covered = np.zeros(target.shape, dtype=bool)
    src, dst = [], []
    for s0, sn, t0, tn in zip(source.offsets, source.shape, target.offsets, target.shape):
        lo, hi = max(s0, t0), min(s0 + sn, t0 + tn)
        if hi <= lo:
            return values, covered
        src.append(slice(lo - s0, hi - s0))
        dst.append(slice(lo - t0, hi - t0))
    values[tuple(dst)] = source.values[tuple(src)]
    covered[tuple(dst)] = True
    return values, covered


def _mirror(inside, points):
    """Clipped index tuple of ``points`` and whether each lies on the grid inside the domain."""
    in_range = np.all([(points[a] >= 0) & (points[a] < inside.shape[a]) for a in range(inside.ndim)], axis=0)
    clipped = tuple(np.clip(points[a], 0, inside.shape[a] - 1) for a in range(inside.ndim))
    return clipped, in_range & inside[clipped]


def extend(ext, domain, f, s=0.0):
    """
    Extend samples given on Omega to the box around B(x0, 2R).

    Args:
        ext (ExtensionOperator): Extension method
        domain (Domain): Domain
        f (DyadicGrid): Samples covering the closed domain
        s (float): Target smoothness, used for the validity flag

    Returns:
        ExtensionResult: Extended grid and the ``extension_not_smoothness_valid`` flag

    Raises:
        GeometryError: If ``f`` does not cover the domain
    """
    target = DyadicGrid.zeros(f.level, extended_box(domain, f.level))
    base, covered = _transfer(f, target)
    inside = domain.contains(*target.mesh())
    if np.any(inside & ~covered):
        raise GeometryError(f"samples do not cover the domain {domain.name}")
    base = np.where(inside, base, 0.0)
    flag = False
    if ext.method == "zero":
        boundary = inside & ~ndimage.binary_erosion(inside)
        scale = max(1.0, float(np.max(np.abs(base))))
        if s >= 0.5 and np.any(np.abs(base[boundary]) > 1e-12 * scale):
            flag = True
            logger.warning(
                "zero extension is not norm-equivalent for s=%g when f does not vanish on the boundary", s
            )
        return ExtensionResult(target.with_values(base), flag)
    distance, nearest = ndimage.distance_transform_edt(~inside, return_indices=True)
    index = np.indices(inside.shape)
    once, once_ok = _mirror(inside, 2 * nearest - index)
    twice, twice_ok = _mirror(inside, 3 * nearest - 2 * index)
    # 3 f(b + t) - 2 f(b + 2t) matches value and normal derivative at b
    reflected = np.where(once_ok, base[once], base[tuple(nearest)])
    reflected = np.where(once_ok & twice_ok, 3.0 * base[once] - 2.0 * base[twice], reflected)
    weight = smooth_cutoff(distance * target.spacing / (ext.cutoff * domain.radius))
    values = np.where(inside, base, weight * reflected)
    return ExtensionResult(target.with_values(values), flag)


def build_index_sets(domain, system, j_max):
    """
    Index family nabla with nabla_{-1} = Lambda_0 and nabla_j = types x Lambda_j.

    Returns:
        IndexFamily: Index sets for levels -1 .. j_max
    """
    if j_max < 0:
        raise ParameterError(f"j_max must be nonnegative, got {j_max}", field="levels")
    n = system.support_radius
    types = system.wavelet_types
    levels = {}
    for j in range(-1, j_max + 1):
        scale = 2.0 ** max(j, 0)
        ranges = []
        for c in domain.center:
            lo = math.ceil(scale * (c - 2 * domain.radius) - n - 1e-9)
            hi = math.floor(scale * (c + 2 * domain.radius) + n + 1e-9)
            ranges.append(range(lo, hi + 1))
        shifts = list(np.ndindex(*(len(r) for r in ranges)))
        shifts = [tuple(r[i] for r, i in zip(ranges, idx)) for idx in shifts]
        if j == -1:
            levels[j] = [(-1, 0) + k for k in shifts]
        else:
            levels[j] = [(j, i) + k for k in shifts for i in types]
    return IndexFamily(levels, domain.dimension)


@dataclass(frozen=True, eq=False)
class DomainFramePair:
    """Wavelet system, domain, extension and index family of a domain frame pair.

    Attributes:
        j_max (int): Finest wavelet level
        s (float): Smoothness of the weight w_{j,l} = 2^{2js}
        index_family (IndexFamily): nabla built from the Lambda_j rule
        stable_box (tuple): Optional closed box compactly inside Omega
    """

    system: object
    domain: Domain
    extension: ExtensionOperator
    j_max: int
    s: float
    index_family: IndexFamily
    stable_box: tuple = None
    metadata: dict = field(default_factory=dict)

    @property
    def sampling_level(self):
        return self.j_max + 1

    @property
    def weight(self):
        return Weight.sobolev(self.s)

    def domain_grid(self, level=None):
        level = self.sampling_level if level is None else level
        return DyadicGrid.zeros(level, domain_box(self.domain, level))

    def sample(self, func, level=None):
        """Samples of ``func`` on the domain bounding grid."""
        grid = self.domain_grid(level)
        return grid.with_values(func(*grid.mesh()))

    def mask(self, grid):
        return self.domain.contains(*grid.mesh())


def build_domain_frame(system, domain, extension=None, j_max=None, s=0.0, stable_box=None):
    """
    Assemble the domain frame pair.

    Raises:
        ConfigurationError: If the system and domain dimensions differ
        GeometryError: If ``stable_box`` touches the boundary
    """
    if system.dimension != domain.dimension:
        raise ConfigurationError(
            f"system dimension {system.dimension} does not match domain dimension {domain.dimension}"
        )
    j_max = DEFAULT_MAX_LEVEL[domain.dimension] if j_max is None else int(j_max)
    extension = ExtensionOperator() if extension is None else extension
    family = build_index_sets(domain, system, j_max)
    if stable_box is not None:
        stable_box = _check_box(domain, stable_box)
    logger.info(
        "domain frame %s/%s: j_max=%d, |nabla|=%d", system.name, domain.name, j_max, len(family)
    )
    return DomainFramePair(system, domain, extension, j_max, float(s), family, stable_box)


def _check_box(domain, box):
    box = np.asarray(box, dtype=float).reshape(domain.dimension, 2)
    box = tuple((float(lo), float(hi)) for lo, hi in box)
    if not domain.box_is_interior(box):
        raise GeometryError(f"box {box} is not at positive distance from the boundary of {domain.name}")
    return box


def domain_analysis(dfp, f):
    """
    Coefficients <E f, psit_{j,l}> for (j, l) in nabla.

    Args:
        dfp (DomainFramePair): Frame
        f (DyadicGrid): Samples on Omega at level >= j_max + 1

    Returns:
        CoefficientArray: Coefficients restricted to nabla
    """
    if f.level < dfp.sampling_level:
        raise ResolutionError(f"domain analysis needs sampling level >= {dfp.sampling_level}, got {f.level}")
    extended = extend(dfp.extension, dfp.domain, f, dfp.s).grid
    coefficients = analyze(dfp.system, extended, dfp.j_max)
    family = dfp.index_family
    return coefficients.restrict(k for k in coefficients if k in family)


def domain_synthesis(dfp, c, grid=None):
    """
    Samples of chi_Omega * sum c_{j,l} psi_{j,l} on the domain grid.

    Raises:
        IndexDomainError: If ``c`` has an index outside nabla
    """
    family = dfp.index_family
    for key in c:
        if key not in family:
            raise IndexDomainError(f"coefficient index {key} is not in the frame index family")
    grid = dfp.domain_grid() if grid is None else grid
    values = synthesize(dfp.system, c, grid)
    return values.with_values(np.where(dfp.mask(grid), values.values, 0.0))


def _check_regularity(dfp, s):
    r = dfp.system.regularity_for(s)
    if not r > abs(s):
        raise RegularityError(f"{dfp.system.name} has regularity r = {r:g}, need r > |s| = {abs(s):g}")


def hs_norm_estimate(dfp, f, s):
    """
    Discrete H^s norm: b^s_{2,2} norm of the domain coefficients.

    Raises:
        RegularityError: If the system regularity does not exceed |s|
    """
    _check_regularity(dfp, s)
    coefficients = domain_analysis(dfp, f)
    return besov_seq_norm(coefficients, BesovParams(s, 2, 2, dfp.domain.dimension))


@dataclass(frozen=True)
class SigmaResult:
    """Greedy n-term error in the discrete H^s norm and on the grid."""

    error: float
    selected: tuple
    grid_error: float
    truncation: float


def sigma_n_frame(dfp, f, n, s):
    """
    Greedy n-term approximation by the n largest 2^{js}-weighted coefficients.

    Returns:
        SigmaResult: Tail norm in b^s_{2,2}, selected indices, grid L2 error of
        the resynthesized approximation on Omega, and the level-j_max
        coefficient norm as a truncation estimate
    """
    _check_regularity(dfp, s)
    coefficients = domain_analysis(dfp, f)
    weight = Weight.sobolev(s)
    selected, error = greedy_n_term(coefficients, n, weight)
    approximation = domain_synthesis(dfp, coefficients.restrict(selected), _grid_like(dfp, f))
    mask = dfp.mask(approximation)
    sampled = approximation.with_values(_transfer(f, approximation)[0])
    grid_error = (sampled - approximation).l2_norm(mask)
    top = coefficients.restrict(k for k in coefficients if k[0] == dfp.j_max)
    truncation = besov_seq_norm(top, BesovParams(s, 2, 2, dfp.domain.dimension))
    return SigmaResult(error, tuple(selected), grid_error, truncation)


def _grid_like(dfp, f):
    return DyadicGrid.zeros(f.level, domain_box(dfp.domain, f.level))


def _inside_box(support, box):
    return all(lo >= b0 - EDGE_TOL and hi <= b1 + EDGE_TOL for (lo, hi), (b0, b1) in zip(support, box))


def stable_indices(dfp, box):
    """nabla*: indices whose primal and dual supports lie in the closed box."""
    return [
        key for key in dfp.index_family.keys()
        if _inside_box(atom_support(dfp.system, key, "primal"), box)
        and _inside_box(atom_support(dfp.system, key, "dual"), box)
    ]


@dataclass(frozen=True, eq=False)
class StableBox:
    """Stable subframe of a box: nabla*, its onset level and the measured A'."""

    box: tuple
    indices: tuple
    onset: int
    a_prime: float
    riesz_lower: float
    singleton_ratios: dict


def frame_pair_model(dfp, stable=None):
    """
    Euclidean model of the finite domain frame section.

    Coordinates are x = sqrt(omega) f on the grid points of the closed
    domain, with omega the trapezoid weights, so the Euclidean norm is the
    grid L2 norm. Rows of the analysis matrix are the functionals
    f -> <E f, psit_{j,l}>, columns of the atoms are chi_Omega psi_{j,l}.

    Raises:
        ParameterError: Unless the weight is the L2 weight (s = 0)
    """
    if dfp.s != 0:
        raise ParameterError("frame sections are measured in grid L2 and need s = 0", field="target_s")
    grid = dfp.domain_grid()
    mask = dfp.mask(grid).ravel()
    root = np.sqrt(grid.trapezoid_weights().ravel()[mask])
    labels = dfp.index_family.keys()
    position = {key: i for i, key in enumerate(labels)}
    points = np.flatnonzero(mask)
    analysis = np.zeros((len(labels), len(points)))
    for column, point in enumerate(points):
        unit = np.zeros(grid.values.size)
        unit[point] = 1.0 / root[column]
        for key, value in domain_analysis(dfp, grid.with_values(unit.reshape(grid.shape))).items():
            analysis[position[key], column] = value
    atoms = np.zeros((len(points), len(labels)))
    dimension = dfp.domain.dimension
    for index, key in enumerate(labels):
        atom = synthesize(dfp.system, CoefficientArray({key: 1.0}, dimension), grid).values.ravel()
        atoms[:, index] = root * atom[mask]
    weight = dfp.weight(labels)
    stable_positions = None if stable is None else [position[k] for k in stable]
    frame = FramePair(
        analysis, atoms, weight, None, stable_positions, labels,
        f"{dfp.system.name}/{dfp.domain.name}",
    )
    return frame


def whole_line_riesz_bound(dfp):
    """Lower Riesz bound of the unrestricted atoms of nabla, sampled on a grid containing their supports."""
    n = dfp.system.support_radius
    level = dfp.sampling_level
    scale = 2.0 ** level
    box = tuple(
        (math.floor((lo - n) * scale) / scale, math.ceil((hi + n) * scale) / scale)
        for lo, hi in extended_box(dfp.domain, 0)
    )
    grid = DyadicGrid.zeros(level, box)
    lower, _ = riesz_bounds(dfp.system, dfp.index_family.keys(), grid)
    return lower


def stable_box_subframe(dfp, box, frame=None):
    """
    Stable subframe on a box compactly inside the domain.

    A' is measured with check_stability on the frame model: the probe built
    from the smallest singular vector of the nabla* atom section realizes the
    minimum over subsets, and single-coefficient probes give the one-term
    ratios ||g_{j,l}|| / sqrt(w_{j,l}).

    Returns:
        StableBox: nabla*, onset level, measured A' and the whole-line Riesz bound

    Raises:
        GeometryError: If the box touches the boundary or nabla* is empty
    """
    box = _check_box(dfp.domain, box)
    keys = stable_indices(dfp, box)
    if not keys:
        raise GeometryError(f"no atom of levels <= {dfp.j_max} fits into the box {box}")
    stable = IndexFamily(
        {j: [k for k in keys if k[0] == j] for j in range(-1, dfp.j_max + 1)}, dfp.domain.dimension
    )
    onset = stable.onset
    if onset > dfp.j_max:
        logger.warning("nabla*_%d is empty; the box only holds coarser atoms", dfp.j_max)
    frame = frame_pair_model(dfp, keys) if frame is None else frame
    position = {key: i for i, key in enumerate(frame.labels)}
    columns = [position[k] for k in keys]
    block = frame.atoms[:, columns] / np.sqrt(frame.weight[columns])[None, :]
    _, _, vt = np.linalg.svd(block, full_matrices=False)
    probes = [frame.atoms[:, columns] @ vt[-1]]
    subsets = [columns]
    singletons = {}
    for key, column in zip(keys, columns):
        probes.append(frame.atoms[:, column])
        subsets.append([column])
        singletons[key] = float(np.linalg.norm(frame.atoms[:, column]) / math.sqrt(frame.weight[column]))
    a_prime = check_stability(frame, subsets, probes, enforce_stable_set=False)
    riesz_lower = whole_line_riesz_bound(dfp)
    logger.info("stable box %s: |nabla*|=%d, onset J=%d, A'=%.4f", box, len(keys), onset, a_prime)
    return StableBox(box, tuple(keys), onset, a_prime, riesz_lower, singletons)


def measure_domain_constants(dfp, box=None):
    """(A, B, A') of the domain frame section; A' from the stable box when given."""
    box = box if box is not None else dfp.stable_box
    keys = stable_indices(dfp, _check_box(dfp.domain, box)) if box is not None else None
    frame = frame_pair_model(dfp, keys)
    if box is None:
        return frame, frame.constants, None
    stable = stable_box_subframe(dfp, box, frame)
    constants = measure_constants(frame, a_prime=stable.a_prime)
    return frame.with_constants(constants), constants, stable
