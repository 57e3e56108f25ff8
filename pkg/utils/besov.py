"""Discrete Besov sequence spaces b^s_{p,q}, weighted l2 and n-term selection.

A sequence ``a`` indexed by ``(j, i, k)`` has the quasi-norm

    ( sum_j 2^{j sigma q} ( sum_{i,k} |a_{j,i,k}|^p )^{q/p} )^{1/q},
    sigma = s + d (1/2 - 1/p),

with the usual sup-modifications for p or q equal to infinity. Level -1
(scaling coefficients) is weighted with the literal factor 2^{-sigma}.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from .coefficients import CoefficientArray
from .errors import ParameterError, SizeError, WeightDomainError

logger = logging.getLogger(__name__)

EXHAUSTIVE_LIMIT = 20


def _exponent(value, name):
    if isinstance(value, str):
        value = math.inf if value.strip().lower() in ("inf", "infinity") else float(value)
    value = float(value)
    if not value > 0:
        raise ParameterError(f"{name} must be positive, got {value}", field=name)
    return value


@dataclass(frozen=True)
class BesovParams:
    """Quasi-norm parameters (s, p, q, d); p and q may be ``math.inf``."""

    s: float
    p: float
    q: float
    d: int = 1

    def __post_init__(self):
        object.__setattr__(self, "s", float(self.s))
        object.__setattr__(self, "p", _exponent(self.p, "p"))
        object.__setattr__(self, "q", _exponent(self.q, "q"))
        if int(self.d) < 1:
            raise ParameterError(f"dimension must be >= 1, got {self.d}", field="d")
        object.__setattr__(self, "d", int(self.d))

    @property
    def sigma(self):
        """Level exponent s + d(1/2 - 1/p)."""
        return self.s + self.d * (0.5 - 1.0 / self.p)

    def exponent(self, j):
        return j * self.sigma

    def __str__(self):
        return f"b^{self.s:g}_{{{self.p:g},{self.q:g}}}(d={self.d})"


def t_condition_bound(p, d):
    """Smallest admissible smoothness gap: d(1/p - 1/2)_+."""
    return d * max(0.0, 1.0 / p - 0.5)


def check_t_condition(t, p, d):
    """
    Raise unless t > d(1/p - 1/2)_+.

    Raises:
        ParameterError: When the condition fails; the message states it
    """
    bound = t_condition_bound(p, d)
    if not t > bound:
        raise ParameterError(
            f"t-condition violated: t = {t:g} must satisfy t > d(1/p - 1/2)_+ = {bound:g}",
            field="target_s",
        )


def required_regularity(source, target_s):
    """
    Wavelet regularity needed to characterize both source and target spaces.

    r must exceed max(s + t, d max(0, 1/p - 1) - s, d max(0, 1/p - 1) - (s + t))
    where s is the target and s + t the source smoothness.
    """
    gap = source.d * max(0.0, 1.0 / source.p - 1.0)
    return max(source.s, gap - target_s, gap - source.s)


class Weight:
    """Positive weight per index; either a rule ``j -> w`` or an explicit table.

    Args:
        table (dict): Optional explicit ``{key: weight}``
        rule (callable): Optional vectorized ``levels -> weights``
        label (str): Description used in logs and reports
    """

    def __init__(self, table=None, rule=None, label="custom"):
        if table is None and rule is None:
            raise ParameterError("a weight needs a table or a level rule")
        self.table = None
        if table is not None:
            self.table = MappingProxyType({tuple(k): float(v) for k, v in table.items()})
            if any(not v > 0 for v in self.table.values()):
                raise ParameterError("weights must be positive", field="weight")
        self.rule = rule
        self.label = label

    @classmethod
    def constant(cls, value=1.0):
        if not value > 0:
            raise ParameterError("weights must be positive", field="weight")
        return cls(rule=lambda levels: np.full(len(levels), float(value)), label=f"constant {value:g}")

    @classmethod
    def sobolev(cls, s):
        """w_{j,lambda} = 2^{2js}, level -1 included."""
        return cls(rule=lambda levels: 2.0 ** (2.0 * s * np.asarray(levels, dtype=float)), label=f"2^(2js), s={s:g}")

    def __call__(self, keys):
        keys = [tuple(k) for k in keys]
        if self.table is not None:
            missing = [k for k in keys if k not in self.table]
            if missing and self.rule is None:
                raise WeightDomainError(f"no weight for index {missing[0]}")
            values = np.array([self.table.get(k, np.nan) for k in keys], dtype=float)
            if missing:
                holes = np.isnan(values)
                levels = np.array([k[0] for k, hole in zip(keys, holes) if hole])
                values[holes] = self.rule(levels)
            return values
        return np.asarray(self.rule(np.array([k[0] for k in keys], dtype=float)), dtype=float)

    def __repr__(self):
        return f"Weight({self.label})"


def _level_blocks(a):
    keys = a.keys()
    levels = np.array([k[0] for k in keys], dtype=int)
    values = np.abs(a.values_array(keys))
    return levels, values


def besov_seq_norm(a, params):
    """
    Quasi-norm of ``a`` in b^s_{p,q}.

    Args:
        a (CoefficientArray): Finitely supported sequence
        params (BesovParams): Norm parameters

    Returns:
        float: The quasi-norm
    """
    if len(a) == 0:
        return 0.0
    levels, values = _level_blocks(a)
    p, q = params.p, params.q
    per_level = []
    for j in np.unique(levels):
        block = values[levels == j]
        inner = block.max() if math.isinf(p) else np.sum(block ** p) ** (1.0 / p)
        per_level.append(2.0 ** params.exponent(j) * inner)
    per_level = np.array(per_level)
    if math.isinf(q):
        return float(per_level.max())
    return float(np.sum(per_level ** q) ** (1.0 / q))


def weighted_l2_norm(a, w):
    """(sum_k w_k |a_k|^2)^{1/2}; raises WeightDomainError for unweighted indices."""
    if len(a) == 0:
        return 0.0
    keys = a.keys()
    return float(math.sqrt(np.sum(w(keys) * a.values_array(keys) ** 2)))


def _greedy_order(a, w):
    """Keys, squared weighted magnitudes, and the greedy order (stable on ties)."""
    keys = a.keys()
    squares = w(keys) * a.values_array(keys) ** 2
    order = np.argsort(-squares, kind="stable")
    return keys, squares, order


def greedy_n_term(a, n, w):
    """
    Keep the n largest sqrt(w)|a| terms.

    Ties are broken by the total index order (lower level first, then
    lexicographic in (i, k)), which makes selections reproducible.

    Returns:
        tuple: (selected keys in selection order, weighted l2 norm of the rest)
    """
    if n < 0:
        raise ParameterError(f"n must be nonnegative, got {n}", field="n")
    keys, squares, order = _greedy_order(a, w)
    chosen = order[:n]
    rest = np.sort(squares[order[n:]])
    return [keys[i] for i in chosen], float(math.sqrt(np.sum(rest)))


def greedy_tail_errors(a, ns, w):
    """Greedy n-term errors for every n in ``ns`` from one sort."""
    keys, squares, order = _greedy_order(a, w)
    ordered = squares[order]
    tails = np.append(np.cumsum(ordered[::-1])[::-1], 0.0)
    ns = np.minimum(np.asarray(ns, dtype=int), len(ordered))
    return np.sqrt(np.maximum(tails[ns], 0.0))


def exhaustive_n_term_oracle(a, n, w):
    """
    Best n-term selection by brute force over all subsets of size min(n, |supp a|).

    Raises:
        SizeError: If the support exceeds 20 entries
    """
    if len(a) > EXHAUSTIVE_LIMIT:
        raise SizeError(f"exhaustive search limited to {EXHAUSTIVE_LIMIT} entries, got {len(a)}")
    keys = a.keys()
    squares = w(keys) * a.values_array(keys) ** 2
    size = min(max(n, 0), len(keys))
    best, best_error = (), math.inf
    everything = set(range(len(keys)))
    for subset in itertools.combinations(range(len(keys)), size):
        rest = np.sort(squares[sorted(everything.difference(subset))])
        error = math.sqrt(np.sum(rest))
        if error < best_error:
            best, best_error = subset, error
    return [keys[i] for i in best], float(best_error)


@dataclass(frozen=True)
class IndexFamily:
    """Per-level index sets nabla_j, j = -1 .. max_level.

    Args:
        levels (dict): ``{j: tuple of keys}``
        dimension (int): Spatial dimension d
    """

    levels: dict = field(hash=False)
    dimension: int = 1

    def __post_init__(self):
        frozen = {int(j): tuple(sorted(tuple(k) for k in keys)) for j, keys in self.levels.items()}
        object.__setattr__(self, "levels", MappingProxyType(dict(sorted(frozen.items()))))
        object.__setattr__(self, "_members", frozenset(k for keys in frozen.values() for k in keys))

    @classmethod
    def dyadic(cls, max_level, dimension=1):
        """k in [0, 2^j)^d per wavelet type, a single scaling index at level -1."""
        levels = {-1: [(-1, 0) + (0,) * dimension]}
        for j in range(max_level + 1):
            shifts = itertools.product(range(2 ** j), repeat=dimension)
            levels[j] = [(j, i) + k for k in shifts for i in range(1, 2 ** dimension)]
        return cls(levels, dimension)

    @property
    def max_level(self):
        return max(self.levels)

    @property
    def onset(self):
        """Smallest J >= 0 with nabla_j nonempty for every J <= j <= max_level."""
        onset = 0
        for j in range(self.max_level + 1):
            if not self.levels.get(j):
                onset = j + 1
        return onset

    def keys(self):
        return [k for j in self.levels for k in self.levels[j]]

    def level(self, j):
        return self.levels.get(j, ())

    def __len__(self):
        return sum(len(keys) for keys in self.levels.values())

    def __contains__(self, key):
        return tuple(key) in self._members

    def cardinality_bounds(self):
        """(C1, C2, J) with C1 <= 2^{-jd}|nabla_j| <= C2 for J <= j <= max_level."""
        onset = self.onset
        ratios = [len(self.levels[j]) / 2.0 ** (j * self.dimension) for j in self.levels if j >= onset]
        if not ratios:
            return 0.0, 0.0, onset
        return min(ratios), max(ratios), onset


def _block_values(source, j, count, share):
    """Common value of ``count`` entries on level j contributing ``share`` to the norm."""
    inner = 1.0 if math.isinf(source.p) else count ** (1.0 / source.p)
    return share * 2.0 ** (-source.exponent(j)) / inner


def _normalized(entries, source):
    element = CoefficientArray(entries, source.d)
    norm = besov_seq_norm(element, source)
    return element.scaled(1.0 / norm)


def extremal_ball_element(source, nlevels, profile):
    """
    Unit-norm element of b^s_{p,q} with a prescribed level profile.

    Profiles:
        ``equal-block``: every index of levels 0..J carries the same level value,
            each level contributing (J+1)^{-1/q} to the norm.
        ``lacunary``: one index per level -1..J with value 2^{-j sigma}(J+2)^{-1/q}.
        ``single-level``: every index of level J, nothing else.

    Args:
        source (BesovParams): Source space
        nlevels (int): Finest level J >= 0
        profile (str): One of the names above

    Returns:
        CoefficientArray: Element with norm 1 to rounding
    """
    family = IndexFamily.dyadic(nlevels, source.d)
    q_share = 0.0 if math.isinf(source.q) else 1.0 / source.q
    entries = {}
    if profile == "equal-block":
        share = (nlevels + 1) ** -q_share
        for j in range(nlevels + 1):
            keys = family.level(j)
            value = _block_values(source, j, len(keys), share)
            entries.update((k, value) for k in keys)
    elif profile == "lacunary":
        share = (nlevels + 2) ** -q_share
        for j in range(-1, nlevels + 1):
            entries[family.level(j)[0]] = share * 2.0 ** (-source.exponent(j))
    elif profile == "single-level":
        keys = family.level(nlevels)
        value = _block_values(source, nlevels, len(keys), 1.0)
        entries.update((k, value) for k in keys)
    else:
        raise ParameterError(
            f"unknown profile {profile!r}; expected equal-block, lacunary or single-level",
            field="profile",
        )
    return _normalized(entries, source)


def random_ball_element(source, nlevels, rng, max_block=512):
    """Seeded random unit-norm element on a random selection of dyadic levels."""
    family = IndexFamily.dyadic(nlevels, source.d)
    active = rng.choice(np.arange(-1, nlevels + 1), size=rng.integers(1, nlevels + 3), replace=False)
    entries = {}
    for j in sorted(active):
        keys = family.level(int(j))
        count = int(rng.integers(1, min(len(keys), max_block) + 1))
        picked = rng.choice(len(keys), size=count, replace=False)
        magnitudes = rng.pareto(1.5, size=count) + 1e-3
        signs = rng.choice([-1.0, 1.0], size=count)
        scale = 2.0 ** (-source.exponent(int(j)))
        for idx, m, sign in zip(picked, magnitudes, signs):
            entries[keys[idx]] = sign * m * scale
    return _normalized(entries, source)
