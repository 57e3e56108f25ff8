"""Frame pairs over weighted sequence spaces on finite sections.

Elements of the ambient Hilbert space are coordinate vectors in R^D with the
Euclidean norm (callers with another inner product pass coordinates in an
orthonormal representation). A frame pair is stored as

    analysis: K x D matrix, row k is h_k, coefficients c = analysis @ f
    atoms:    D x K matrix, column k is g_k, synthesis atoms @ c
    weight:   K positive numbers w_k for the norm of l_{2,w}

with constants (A, B, A') of the norm equivalence
A ||c(f)||_{2,w} <= ||f|| <= B ||c(f)||_{2,w}, the synthesis bound
||atoms @ c|| <= B ||c||_{2,w}, and the stability estimate
||sum_{k in L} c_k g_k|| >= A' ||c_L||_{2,w} for f in the stable set.
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from .coefficients import CoefficientArray, DyadicGrid
from .errors import (
    AdmissibilityError,
    ConfigurationError,
    InvertibilityError,
    SpectralError,
    UsageError,
)
from .wavelets import analyze, build_system

logger = logging.getLogger(__name__)

RANK_TOL = 1e-12
BOUND_TOL = 1e-9


@dataclass(frozen=True)
class FrameConstants:
    """Norm-equivalence constants A <= B and stability constant A'."""

    A: float
    B: float
    A_prime: float

    def __post_init__(self):
        for name in ("A", "B", "A_prime"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise SpectralError(f"frame constant {name} must be positive and finite, got {value}")
        if self.A > self.B * (1 + BOUND_TOL):
            raise SpectralError(f"frame constants violate A <= B (A={self.A}, B={self.B})")

    @property
    def C(self):
        """Admissibility ratio B / min(A, A')."""
        return self.B / min(self.A, self.A_prime)

    def as_dict(self):
        return {"A": self.A, "B": self.B, "A_prime": self.A_prime, "C": self.C}


def _default_labels(count):
    return tuple((0, 1, k) for k in range(count))


@dataclass(frozen=True, eq=False)
class FramePair:
    """
    Analysis functionals, synthesis atoms, weight and constants.

    Args:
        analysis (np.ndarray): K x D matrix of functionals h_k
        atoms (np.ndarray): D x K matrix of atoms g_k
        weight (np.ndarray): K positive weights (default 1)
        constants (FrameConstants): Declared constants; measured when omitted
        stable_indices (tuple): Indices whose atoms span the stable set K (all when None)
        labels (tuple): Coefficient keys ``(j, i, k...)`` for each frame index
        name (str): Display name
        admissibility (float): Declared C; construction fails if B/min(A, A') exceeds it
    """

    analysis: np.ndarray
    atoms: np.ndarray
    weight: np.ndarray = None
    constants: FrameConstants = None
    stable_indices: tuple = None
    labels: tuple = None
    name: str = "frame"
    admissibility: float = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        analysis = np.array(self.analysis, dtype=float)
        atoms = np.array(self.atoms, dtype=float)
        if analysis.ndim != 2 or atoms.ndim != 2 or analysis.shape != atoms.T.shape:
            raise ConfigurationError(
                f"analysis {analysis.shape} and atoms {atoms.shape} are not K x D and D x K"
            )
        count = analysis.shape[0]
        weight = np.ones(count) if self.weight is None else np.array(self.weight, dtype=float)
        if weight.shape != (count,) or np.any(weight <= 0):
            raise ConfigurationError("frame weight must hold one positive value per index", field="weight")
        labels = _default_labels(count) if self.labels is None else tuple(tuple(k) for k in self.labels)
        if len(labels) != count:
            raise ConfigurationError("frame labels must match the number of indices", field="labels")
        for arr in (analysis, atoms, weight):
            arr.setflags(write=False)
        object.__setattr__(self, "analysis", analysis)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weight", weight)
        object.__setattr__(self, "labels", labels)
        if self.stable_indices is not None:
            object.__setattr__(self, "stable_indices", tuple(int(i) for i in self.stable_indices))
        if self.constants is None:
            object.__setattr__(self, "constants", measure_constants(self))
        if self.admissibility is not None and self.constants.C > self.admissibility * (1 + BOUND_TOL):
            raise AdmissibilityError(
                f"{self.name}: B/min(A, A') = {self.constants.C:.6g} exceeds declared C = {self.admissibility:g}"
            )

    @property
    def size(self):
        return self.analysis.shape[0]

    @property
    def dimension(self):
        return self.analysis.shape[1]

    def coefficients(self, f):
        return self.analysis @ np.asarray(f, dtype=float)

    def synthesize(self, c, indices=None):
        c = np.asarray(c, dtype=float)
        if indices is None:
            return self.atoms @ c
        indices = np.asarray(indices, dtype=int)
        return self.atoms[:, indices] @ c[indices]

    def analyze(self, f):
        """Coefficients of ``f`` as a CoefficientArray keyed by the frame labels."""
        c = self.coefficients(f)
        dimension = len(self.labels[0]) - 2 if self.labels else 1
        return CoefficientArray(dict(zip(self.labels, c)), dimension)

    def weighted_norm(self, c, indices=None):
        c = np.asarray(c, dtype=float)
        if indices is None:
            return float(math.sqrt(np.sum(self.weight * c ** 2)))
        indices = np.asarray(indices, dtype=int)
        return float(math.sqrt(np.sum(self.weight[indices] * c[indices] ** 2)))

    def stable_basis(self):
        """Orthonormal basis (D x m) of the span of the stable atoms."""
        if self.stable_indices is None:
            return np.eye(self.dimension)
        return linalg.orth(self.atoms[:, list(self.stable_indices)])

    def with_constants(self, constants):
        return FramePair(
            self.analysis, self.atoms, self.weight, constants, self.stable_indices,
            self.labels, self.name, self.admissibility, dict(self.metadata),
        )


@dataclass(frozen=True, eq=False)
class FiniteSection:
    """Truncation of a frame pair to frame indices and an ambient subspace.

    Attributes:
        indices (tuple): Frame indices kept
        analysis (np.ndarray): Rows sqrt(w_k) h_k restricted to the subspace
        gram (np.ndarray): Gram matrix of the kept atoms
    """

    indices: tuple
    analysis: np.ndarray
    gram: np.ndarray

    def __post_init__(self):
        if not (np.all(np.isfinite(self.analysis)) and np.all(np.isfinite(self.gram))):
            raise SpectralError("finite section contains non-finite entries")
        if self.gram.shape != (len(self.indices), len(self.indices)):
            raise ConfigurationError("gram matrix does not match the section indices")


def frame_section(frame, indices=None, basis=None):
    """
    Section of ``frame`` on ``indices`` (all by default) and span of ``basis`` (D x m).

    Returns:
        FiniteSection: Weighted analysis matrix and atom Gram matrix
    """
    indices = np.arange(frame.size) if indices is None else np.asarray(indices, dtype=int)
    rows = np.sqrt(frame.weight[indices])[:, None] * frame.analysis[indices]
    if basis is not None:
        rows = rows @ np.asarray(basis, dtype=float)
    atoms = frame.atoms[:, indices]
    return FiniteSection(tuple(int(i) for i in indices), rows, atoms.T @ atoms)


def estimate_frame_bounds(section):
    """
    Reciprocal extreme singular values of the weighted analysis matrix.

    Args:
        section (FiniteSection): Section to measure

    Returns:
        tuple: ``(A_hat, B_hat)``

    Raises:
        SpectralError: If the section is rank deficient on its span
    """
    singular = linalg.svd(section.analysis, compute_uv=False)
    if singular.size == 0 or singular[0] == 0:
        raise SpectralError("empty or zero finite section", singular_values=singular)
    rank_needed = section.analysis.shape[1]
    if len(singular) < rank_needed or singular[rank_needed - 1] <= RANK_TOL * singular[0]:
        raise SpectralError(
            f"finite section is rank deficient (sigma_min/sigma_max = "
            f"{(singular[-1] / singular[0]) if len(singular) else 0:.3e})",
            singular_values=singular,
        )
    return 1.0 / float(singular[0]), 1.0 / float(singular[rank_needed - 1])


def synthesis_norm(frame):
    """Operator norm of c -> sum c_k g_k from l_{2,w} to the ambient space."""
    scaled = frame.atoms / np.sqrt(frame.weight)[None, :]
    return float(linalg.svd(scaled, compute_uv=False)[0])


def measure_constants(frame, a_prime=None):
    """
    Measure (A, B) on the full section; A' defaults to A unless given.

    B covers both the norm equivalence and the synthesis bound.
    """
    a_hat, b_hat = estimate_frame_bounds(frame_section(frame))
    upper = max(b_hat, synthesis_norm(frame))
    return FrameConstants(a_hat, upper, a_hat if a_prime is None else a_prime)


@dataclass(frozen=True)
class Reconstruction:
    element: np.ndarray
    residual: float
    selected: tuple


def reconstruct(frame, f, max_terms=None):
    """
    Partial reconstruction sum over the ``max_terms`` largest weighted coefficients.

    Returns:
        Reconstruction: Partial sum, residual norm and the indices used
    """
    f = np.asarray(f, dtype=float)
    c = frame.coefficients(f)
    order = np.argsort(-(frame.weight * c ** 2), kind="stable")
    keep = order if max_terms is None else order[:max_terms]
    element = frame.synthesize(c, keep)
    return Reconstruction(element, float(linalg.norm(f - element)), tuple(int(i) for i in keep))


def check_stability(frame, subsets, probes, enforce_stable_set=True):
    """
    Estimate A' = min ||sum_{k in L} c_k g_k|| / ||c_L||_{2,w} over subsets L and probes.

    Probes with vanishing coefficients on a subset are skipped.

    Raises:
        UsageError: If no probes are given, a probe leaves the stable set,
            or no (subset, probe) pair has nonzero coefficients
    """
    probes = [np.asarray(p, dtype=float) for p in probes]
    if not probes:
        raise UsageError("check_stability needs at least one probe", field="probes")
    basis = frame.stable_basis() if (enforce_stable_set and frame.stable_indices is not None) else None
    best = math.inf
    for f in probes:
        if basis is not None:
            outside = linalg.norm(f - basis @ (basis.T @ f))
            if outside > 1e-8 * max(1.0, linalg.norm(f)):
                raise UsageError("probe does not lie in the span of the stable set", field="probes")
        c = frame.coefficients(f)
        for subset in subsets:
            subset = np.asarray(list(subset), dtype=int)
            if subset.size == 0:
                continue
            denominator = frame.weighted_norm(c, subset)
            if denominator <= 1e-300:
                continue
            best = min(best, float(linalg.norm(frame.synthesize(c, subset))) / denominator)
    if not math.isfinite(best):
        raise UsageError("no probe produced nonzero coefficients on the given subsets", field="probes")
    return best


def stability_plan(frame, rng=None, random_probes=8, random_subsets=32):
    """Default subsets (singletons, random subsets, everything) and probes (stable basis plus random)."""
    rng = np.random.default_rng(0) if rng is None else rng
    pool = list(range(frame.size)) if frame.stable_indices is None else list(frame.stable_indices)
    subsets = [[i] for i in pool]
    for _ in range(random_subsets):
        count = int(rng.integers(1, len(pool) + 1))
        subsets.append(sorted(rng.choice(pool, size=count, replace=False).tolist()))
    subsets.append(pool)
    basis = frame.stable_basis()
    probes = [basis[:, i] for i in range(basis.shape[1])]
    probes.extend(basis @ rng.standard_normal(basis.shape[1]) for _ in range(random_probes))
    return subsets, probes


@dataclass(frozen=True)
class Isomorphism:
    """Invertible S with its operator norms ||S|| and ||S^{-1}||."""

    matrix: np.ndarray
    norm: float
    inverse_norm: float

    @classmethod
    def from_matrix(cls, matrix):
        matrix = np.array(matrix, dtype=float)
        singular = linalg.svd(matrix, compute_uv=False)
        if matrix.shape[0] != matrix.shape[1] or singular[-1] <= RANK_TOL * singular[0]:
            raise InvertibilityError("isomorphism matrix is singular or not square")
        return cls(matrix, float(singular[0]), 1.0 / float(singular[-1]))

    @classmethod
    def diagonal(cls, values):
        values = np.asarray(values, dtype=float)
        if np.any(values == 0):
            raise InvertibilityError("diagonal isomorphism has a zero entry")
        return cls(np.diag(values), float(np.max(np.abs(values))), float(1.0 / np.min(np.abs(values))))

    @classmethod
    def scaled_identity(cls, factor, dimension):
        if factor == 0:
            raise InvertibilityError("scaled identity with factor 0")
        return cls(factor * np.eye(dimension), abs(factor), 1.0 / abs(factor))


def map_frame_pair(frame, iso):
    """
    Transport a frame pair through an isomorphism S: (S*^{-1} F, S G).

    Constants become A/||S^{-1}||, B||S||, A'/||S^{-1}||; the admissibility
    constant scales by ||S|| ||S^{-1}||.

    Raises:
        InvertibilityError: If S is singular
    """
    matrix = np.asarray(iso.matrix, dtype=float)
    if matrix.shape != (frame.dimension, frame.dimension):
        raise ConfigurationError(f"isomorphism of shape {matrix.shape} does not act on R^{frame.dimension}")
    try:
        lu = linalg.lu_factor(matrix, check_finite=True)
    except (linalg.LinAlgError, ValueError) as exc:
        raise InvertibilityError(f"isomorphism is not invertible: {exc}") from exc
    if np.min(np.abs(np.diag(lu[0]))) <= RANK_TOL * np.max(np.abs(matrix)):
        raise InvertibilityError("isomorphism is singular")
    analysis = linalg.lu_solve(lu, frame.analysis.T, trans=1).T
    constants = FrameConstants(
        frame.constants.A / iso.inverse_norm,
        frame.constants.B * iso.norm,
        frame.constants.A_prime / iso.inverse_norm,
    )
    admissibility = None
    if frame.admissibility is not None:
        admissibility = frame.admissibility * iso.norm * iso.inverse_norm
    return FramePair(
        analysis, matrix @ frame.atoms, frame.weight, constants, frame.stable_indices,
        frame.labels, f"S({frame.name})", admissibility, dict(frame.metadata),
    )


def canonical_dual_frame(elements, weight=None, name="canonical", stable_indices=None, admissibility=None):
    """
    Frame pair (F, S^{-1} F) of a Hilbert frame given as columns of ``elements`` (D x K).

    The frame operator S = sum_k w_k h_k h_k^T is inverted densely, so this is
    meant for small sections.
    """
    elements = np.asarray(elements, dtype=float)
    weight = np.ones(elements.shape[1]) if weight is None else np.asarray(weight, dtype=float)
    operator = (elements * weight[None, :]) @ elements.T
    eigvals = linalg.eigvalsh(operator)
    if eigvals[0] <= RANK_TOL * eigvals[-1]:
        raise SpectralError("frame operator is singular; the family is not a frame", singular_values=eigvals)
    atoms = linalg.solve(operator, elements * weight[None, :], assume_a="pos")
    return FramePair(
        elements.T, atoms, weight, None, stable_indices, None, name, admissibility,
        {"frame_operator_eigenvalues": (float(eigvals[0]), float(eigvals[-1]))},
    )


def project_frame_pair(frame, basis):
    """
    Restrict a frame pair to the subspace spanned by the orthonormal columns of ``basis``.

    Returns (F, P G) in subspace coordinates y with f = basis @ y.
    """
    basis = np.asarray(basis, dtype=float)
    if not np.allclose(basis.T @ basis, np.eye(basis.shape[1]), atol=1e-10):
        raise ConfigurationError("subspace basis must have orthonormal columns", field="basis")
    return FramePair(
        frame.analysis @ basis, basis.T @ frame.atoms, frame.weight, None, None,
        frame.labels, f"P({frame.name})", None, dict(frame.metadata),
    )


def greedy_frame_error(frame, f, n):
    """Error of the canonical n-term approximation sum over the n largest sqrt(w)|c_k|."""
    return reconstruct(frame, f, n).residual


def frame_width_estimate(frame, probes, n):
    """Worst canonical greedy n-term error over a finite sample of the unit ball."""
    return max(greedy_frame_error(frame, f, n) for f in probes)


# named frames ----------------------------------------------------------------


def orthonormal_frame(dimension):
    identity = np.eye(dimension)
    return FramePair(identity, identity, name="orthonormal", constants=FrameConstants(1.0, 1.0, 1.0))


def tight_duplicate_frame(dimension):
    """{e_1, e_2/sqrt2, e_2/sqrt2, e_3, ..., e_D}: tight with A = B = 1 and A' = 2^{-1/2}."""
    if dimension < 2:
        raise ConfigurationError("tight duplicate frame needs dimension >= 2", field="size")
    identity = np.eye(dimension)
    half = identity[:, 1] / math.sqrt(2.0)
    elements = np.column_stack([identity[:, 0], half, half] + [identity[:, i] for i in range(2, dimension)])
    frame = FramePair(elements.T, elements, name="tight-duplicate")
    return frame.with_constants(FrameConstants(frame.constants.A, frame.constants.B, 1.0 / math.sqrt(2.0)))


def tight_growing_frame(levels):
    """Block m holds m copies of e_m / sqrt(m), m = 1..levels; A' = levels^{-1/2}."""
    columns, labels = [], []
    for m in range(1, levels + 1):
        unit = np.zeros(levels)
        unit[m - 1] = 1.0 / math.sqrt(m)
        for copy in range(m):
            columns.append(unit)
            labels.append((m - 1, 1, copy))
    elements = np.column_stack(columns)
    frame = FramePair(elements.T, elements, labels=labels, name="tight-growing")
    return frame.with_constants(FrameConstants(frame.constants.A, frame.constants.B, 1.0 / math.sqrt(levels)))


def haar_frame(levels):
    """Orthonormal discrete Haar basis of R^{2^levels}, labelled by wavelet keys."""
    system = build_system("haar")
    size = 2 ** levels
    grid = DyadicGrid.zeros(levels, (0.0, (size - 1) / size))
    rows = {}
    for n in range(size):
        unit = np.zeros(size)
        unit[n] = 1.0
        coefficients = analyze(system, grid.with_values(unit), levels - 1)
        for key, value in coefficients.items():
            rows.setdefault(key, np.zeros(size))[n] = value * 2.0 ** (levels / 2.0)
    labels = sorted(rows)
    analysis = np.array([rows[key] for key in labels])
    return FramePair(
        analysis, analysis.T, labels=labels, name="haar", constants=FrameConstants(1.0, 1.0, 1.0)
    )


@dataclass(frozen=True, eq=False)
class CompactArc:
    """Compact set K = {cos(t) u + sin(t) v : 0 <= t <= angle} of unit vectors in R^D."""

    u: np.ndarray
    v: np.ndarray
    angle: float = math.pi / 2

    @classmethod
    def random(cls, dimension, rng, angle=math.pi / 2):
        if dimension < 2:
            raise UsageError("the arc K needs dimension >= 2", field="dim")
        basis, _ = linalg.qr(rng.standard_normal((dimension, 2)), mode="economic")
        return cls(basis[:, 0], basis[:, 1], angle)

    def points(self, t):
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return np.outer(np.cos(t), self.u) + np.outer(np.sin(t), self.v)

    def net(self, epsilon):
        """
        Equispaced samples k_i with every point of K at angle < asin(epsilon) from one of them.

        The span of the nearest k_i then approximates each f in K within epsilon.
        """
        if not 0 < epsilon < 1:
            raise UsageError(f"epsilon must lie in (0, 1), got {epsilon}", field="epsilon")
        count = int(math.floor(self.angle / (2.0 * math.asin(epsilon)))) + 2
        return self.points(np.linspace(0.0, self.angle, count))

    def probes(self, count, rng):
        """Random points of K; almost surely none of them is a net sample."""
        return self.points(rng.uniform(0.0, self.angle, count))


@dataclass(frozen=True, eq=False)
class PathologicalRecord:
    """Best few-term errors of probes from K against the target accuracy epsilon."""

    frame: FramePair
    delta: float
    admissibility: float
    ratio: float
    terms: int
    sample_count: int
    errors: tuple
    best_indices: tuple
    epsilon: float

    @property
    def all_below_epsilon(self):
        return all(e <= self.epsilon for e in self.errors)

    def as_dict(self):
        return {
            "frame": self.frame.name,
            "delta": self.delta,
            "C": self.admissibility,
            "B_over_A": self.ratio,
            "terms": self.terms,
            "samples": self.sample_count,
            "probes": len(self.errors),
            "errors": list(self.errors),
            "best_indices": [list(i) for i in self.best_indices],
            "epsilon": self.epsilon,
            "all_below_epsilon": self.all_below_epsilon,
        }


def _best_span_error(elements, f, terms):
    elements = elements / linalg.norm(elements, axis=0)[None, :]
    best, best_error = (), math.inf
    for subset in itertools.combinations(range(elements.shape[1]), terms):
        block = elements[:, subset]
        coef = linalg.lstsq(block, f)[0]
        error = float(linalg.norm(f - block @ coef))
        if error < best_error:
            best, best_error = subset, error
    return best, best_error


def _check_samples(k_samples, probes, delta, C):
    k_samples = np.atleast_2d(np.asarray(k_samples, dtype=float))
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    if k_samples.size == 0:
        raise UsageError("pathological frame needs at least one sample of K", field="k_samples")
    if probes.size == 0 or probes.shape[1] != k_samples.shape[1]:
        raise UsageError("probes must be nonempty points of R^D", field="probes")
    if not 0 < delta < 1:
        raise AdmissibilityError(f"delta must lie in (0, 1), got {delta}")
    if C < 1:
        raise AdmissibilityError(f"admissibility constant must be >= 1, got {C}")
    return k_samples, probes


def _probe_errors(elements, probes, terms):
    errors, indices = [], []
    for f in probes:
        subset, error = _best_span_error(elements, f, terms)
        errors.append(error)
        indices.append(subset)
    return tuple(errors), tuple(indices)


def admissibility_bound(k_samples, delta):
    """Upper bound sqrt(1 + sum delta^{2i} ||k_i||^2) on B/A of the pathological frame."""
    norms = np.sum(np.atleast_2d(k_samples) ** 2, axis=1)
    powers = delta ** (2.0 * np.arange(1, len(norms) + 1))
    return math.sqrt(1.0 + float(np.sum(powers * norms)))


def pathological_frame(k_samples, probes, delta, C, epsilon=1e-2):
    """
    Orthonormal basis together with delta^i k_i for an epsilon-net k_i of K.

    Each probe f of K is approximated by its projection onto the nearest
    delta^i k_i, so one term reaches accuracy epsilon while B/A stays
    below sqrt(1 + sum delta^{2i} ||k_i||^2) < C.

    Args:
        k_samples (array): Rows are the net samples k_i of K (R^D vectors)
        probes (array): Rows are points of K to approximate
        delta (float): Decay in (0, 1)
        C (float): Admissibility constant >= 1
        epsilon (float): Target accuracy of the 1-term approximation

    Returns:
        PathologicalRecord: Frame pair and the per-probe best 1-term errors

    Raises:
        AdmissibilityError: If delta is too large for C
    """
    k_samples, probes = _check_samples(k_samples, probes, delta, C)
    bound = admissibility_bound(k_samples, delta)
    if bound >= C:
        raise AdmissibilityError(
            f"delta = {delta:g} too large for C = {C:g}: sqrt(1 + sum delta^(2i)|k_i|^2) = {bound:.6g}"
        )
    dimension = k_samples.shape[1]
    scaled = [delta ** (i + 1) * k for i, k in enumerate(k_samples)]
    elements = np.column_stack([np.eye(dimension)] + scaled)
    frame = canonical_dual_frame(elements, name="pathological", admissibility=C)
    ratio = frame.constants.B / frame.constants.A
    errors, indices = _probe_errors(elements, probes, 1)
    logger.info(
        "pathological frame: D=%d, %d samples, B/A=%.6f, worst 1-term error %.3e",
        dimension, len(k_samples), ratio, max(errors),
    )
    return PathologicalRecord(frame, delta, C, ratio, 1, len(k_samples), errors, indices, epsilon)


def normed_pathological_frame(k_samples, probes, delta, C, epsilon=6e-2):
    """
    Orthonormal basis with normalized e_i +- delta^i k_i; elements have unit norm.

    The two elements of index i span e_i and k_i, so every probe is within
    epsilon of a 2-term span when the k_i form an epsilon-net of K.
    """
    k_samples, probes = _check_samples(k_samples, probes, delta, C)
    dimension = k_samples.shape[1]
    if len(k_samples) > dimension:
        raise UsageError("normed pathological frame needs at most D samples", field="k_samples")
    columns = [np.eye(dimension)]
    identity = np.eye(dimension)
    for i, k in enumerate(k_samples):
        for sign in (1.0, -1.0):
            v = identity[:, i] + sign * delta ** (i + 1) * k
            columns.append((v / linalg.norm(v))[:, None])
    elements = np.hstack(columns)
    frame = canonical_dual_frame(elements, name="normed-pathological")
    ratio = frame.constants.B / frame.constants.A
    if ratio >= C:
        raise AdmissibilityError(f"normed pathological frame has B/A = {ratio:.6g} >= C = {C:g}")
    errors, indices = _probe_errors(elements, probes, 2)
    return PathologicalRecord(frame, delta, C, ratio, 2, len(k_samples), errors, indices, epsilon)


ARC_EPSILON = {"pathological": 1e-2, "normed-pathological": 6e-2}


def arc_demonstration(variant, dimension, probe_count, rng, delta=0.1, C=2.0, epsilon=None):
    """
    Pathological record for an epsilon-net of a random arc K and random probes of K.

    Raises:
        UsageError: For an unknown variant
    """
    if variant not in ARC_EPSILON:
        raise UsageError(f"unknown variant {variant!r}; expected {', '.join(ARC_EPSILON)}", field="variant")
    build = pathological_frame if variant == "pathological" else normed_pathological_frame
    epsilon = ARC_EPSILON[variant] if epsilon is None else epsilon
    arc = CompactArc.random(dimension, rng)
    return build(arc.net(epsilon), arc.probes(probe_count, rng), delta, C, epsilon)


NAMED_FRAMES = ("orthonormal", "tight-duplicate", "tight-growing", "haar", "pathological")


def named_frame(name, size=None, seed=0, delta=0.1, C=2.0):
    """
    Built-in frames selected by name.

    Args:
        name (str): One of ``NAMED_FRAMES``
        size (int): Dimension (orthonormal, tight-duplicate), number of blocks
            (tight-growing), levels (haar) or model dimension (pathological)
    """
    if name == "orthonormal":
        return orthonormal_frame(size or 8)
    if name == "tight-duplicate":
        return tight_duplicate_frame(size or 8)
    if name == "tight-growing":
        return tight_growing_frame(size or 30)
    if name == "haar":
        return haar_frame(size or 5)
    if name == "pathological":
        rng = np.random.default_rng(seed)
        return arc_demonstration("pathological", size or 16, 1, rng, delta, C).frame
    raise ConfigurationError(f"unknown frame {name!r}; available: {', '.join(NAMED_FRAMES)}", field="frame")


def load_frame(path):
    """
    Read a frame pair from JSON.

    The document holds ``analysis`` (K x D), ``atoms`` (D x K) and optionally
    ``weight``, ``name``, ``stable_indices`` and ``constants`` ({A, B, A_prime}).
    """
    with open(path, "r") as handle:
        try:
            payload = json.load(handle)
        except json.JSONDecodeError as exc:
            raise ConfigurationError(f"frame file {path} is not valid JSON: {exc}", field="frame") from exc
    for key in ("analysis", "atoms"):
        if key not in payload:
            raise ConfigurationError(f"frame file {path} lacks {key!r}", field=key)
    constants = payload.get("constants")
    if constants is not None:
        constants = FrameConstants(constants["A"], constants["B"], constants.get("A_prime", constants["A"]))
    return FramePair(
        payload["analysis"],
        payload["atoms"],
        payload.get("weight"),
        constants,
        payload.get("stable_indices"),
        None,
        payload.get("name", "loaded"),
        payload.get("C"),
    )
