"""Worst-case n-term rate experiments.

For each n the worst case over a finite sample of the source unit ball is
taken: the extremal profiles (equal-block, lacunary, one single-level block
per level) and seeded random elements. Tail errors of every candidate are
nonincreasing in n, hence so is their maximum.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from .besov import (
    Weight,
    check_t_condition,
    extremal_ball_element,
    greedy_tail_errors,
    random_ball_element,
    required_regularity,
)
from .domains import build_domain_frame, domain_analysis, domain_preset, measure_domain_constants
from .errors import ConfigurationError, ParameterError, RegularityError
from .operators import (
    confirm_single_layer_multipliers,
    poisson_solve_1d,
    single_layer_solve,
    spectral_ball_element,
)
from .rates import default_fit_range, fit_rate
from .wavelets import build_system

logger = logging.getLogger(__name__)

# smoothness gained by the solution operator
SMOOTHNESS_GAIN = {
    "sequence": 0.0,
    "periodic": 0.0,
    "domain-poisson": 2.0,
    "single-layer": -1.0,
}
KINDS = tuple(SMOOTHNESS_GAIN)
DEFAULT_N_LIST = (16, 32, 64, 128, 256, 512, 1024)
ORTHONORMAL_CONSTANTS = {"A": 1.0, "B": 1.0, "A_prime": 1.0, "C": 1.0}


@dataclass(frozen=True)
class WorstCasePolicy:
    """Which unit-ball elements enter the worst case.

    Attributes:
        random_elements (int): Seeded random elements per seed
        seeds (tuple): One random stream per seed
        max_block (int): Largest number of random entries per level
    """

    random_elements: int = 64
    seeds: tuple = (0,)
    max_block: int = 512

    def __post_init__(self):
        if self.random_elements < 0:
            raise ParameterError("random_elements must be nonnegative", field="random_elements")
        object.__setattr__(self, "seeds", tuple(int(s) for s in self.seeds))

    def generators(self):
        for seed in self.seeds:
            rng = np.random.default_rng(seed)
            for index in range(self.random_elements):
                yield f"random[{seed}:{index}]", rng


def experiment_levels(n_max, dimension=1):
    """Finest level J = ceil(log2(n_max) / d) + 2."""
    return int(math.ceil(math.log2(max(n_max, 2)) / dimension)) + 2


def smoothness_gap(kind, source, target_s):
    """t = source smoothness + operator gain - target smoothness."""
    if kind not in SMOOTHNESS_GAIN:
        raise ConfigurationError(f"unknown experiment kind {kind!r}; expected one of {KINDS}", field="kind")
    return source.s + SMOOTHNESS_GAIN[kind] - target_s


def tail_errors(squares, ns):
    """Greedy n-term tails sqrt(sum of all but the n largest squares)."""
    ordered = np.sort(np.asarray(squares, dtype=float))[::-1]
    tails = np.append(np.cumsum(ordered[::-1])[::-1], 0.0)
    ns = np.minimum(np.asarray(ns, dtype=int), ordered.size)
    return np.sqrt(np.maximum(tails[ns], 0.0))


def _sequence_candidates(source, target_s, ns, policy):
    levels = experiment_levels(max(ns), source.d)
    weight = Weight.sobolev(target_s)
    yield "equal-block", greedy_tail_errors(extremal_ball_element(source, levels, "equal-block"), ns, weight)
    yield "lacunary", greedy_tail_errors(extremal_ball_element(source, levels, "lacunary"), ns, weight)
    for j in range(levels + 1):
        element = extremal_ball_element(source, j, "single-level")
        yield f"single-level[{j}]", greedy_tail_errors(element, ns, weight)
    for label, rng in policy.generators():
        element = random_ball_element(source, levels, rng, policy.max_block)
        yield label, greedy_tail_errors(element, ns, weight)


def _spectral_elements(source, nlevels, policy, basis):
    yield "equal-block", spectral_ball_element(source, nlevels, "equal-block", basis=basis)
    yield "lacunary", spectral_ball_element(source, nlevels, "lacunary", basis=basis)
    for j in range(1, nlevels + 1):
        yield f"single-level[{j}]", spectral_ball_element(source, nlevels, "single-level", basis=basis, level=j)
    for label, rng in policy.generators():
        yield label, spectral_ball_element(source, nlevels, "random", rng, basis, max_block=policy.max_block)


def _fourier_candidates(kind, source, target_s, ns, policy):
    if source.d != 1:
        raise ParameterError(f"{kind} experiments are one-dimensional", field="dimension")
    nlevels = experiment_levels(max(ns))
    if kind == "single-layer":
        confirm_single_layer_multipliers()
    for label, element in _spectral_elements(source, nlevels, policy, "fourier"):
        image = single_layer_solve(element) if kind == "single-layer" else element
        k = np.abs(image.modes).astype(float)
        weights = np.where(k > 0, np.where(k > 0, k, 1.0) ** (2.0 * target_s), 0.0)
        yield label, tail_errors(weights * np.abs(image.values) ** 2, ns)


def _poisson_candidates(source, target_s, ns, policy, family, levels):
    if source.d != 1:
        raise ParameterError("domain-poisson experiments are one-dimensional", field="dimension")
    dfp = build_domain_frame(build_system(family), domain_preset("interval"), j_max=levels, s=target_s)
    regularity = dfp.system.regularity_for(target_s)
    if not regularity > abs(target_s):
        raise RegularityError(f"{family} has regularity r = {regularity:g}, need r > |s| = {abs(target_s):g}")
    nlevels = max(1, min(experiment_levels(max(ns)), dfp.j_max - 1))
    weight = Weight.sobolev(target_s)
    grid = dfp.domain_grid()
    for label, element in _spectral_elements(source, nlevels, policy, "sine"):
        solution = poisson_solve_1d(element)
        sampled = grid.with_values(solution.sample(grid.level))
        yield label, greedy_tail_errors(domain_analysis(dfp, sampled), ns, weight)


def rate_experiment(kind, source, target_s, n_list=DEFAULT_N_LIST, seeds=(0,), policy=None,
                    fit_range=None, family="cdf22", levels=None):
    """
    Worst-case n-term errors of the solution operator image over a source unit ball.

    Args:
        kind (str): ``sequence``, ``domain-poisson``, ``single-layer`` or ``periodic``
        source (BesovParams): Source space
        target_s (float): Smoothness of the b^s_{2,2} / H^s target
        n_list (iterable): Term counts n
        seeds (iterable): Random streams for the random ball elements
        policy (WorstCasePolicy): Overrides ``seeds`` when given
        fit_range (tuple): Fit window, default [16, 1024] clipped to n_list
        family: Wavelet family for ``domain-poisson``
        levels (int): j_max of the domain frame for ``domain-poisson``

    Returns:
        RateReport: Fitted slope with target slope -t/d attached

    Raises:
        ParameterError: If t > d(1/p - 1/2)_+ fails
        FitError: If fewer than 4 n values fall in the fit window
    """
    t = smoothness_gap(kind, source, target_s)
    check_t_condition(t, source.p, source.d)
    ns = np.array(sorted({int(n) for n in n_list}), dtype=int)
    if ns.size == 0 or ns[0] < 1:
        raise ParameterError("n_list must hold positive integers", field="n_list")
    policy = WorstCasePolicy(seeds=tuple(seeds)) if policy is None else policy
    if kind == "sequence":
        candidates = _sequence_candidates(source, target_s, ns, policy)
    elif kind == "domain-poisson":
        candidates = _poisson_candidates(source, target_s, ns, policy, family, 8 if levels is None else levels)
    else:
        candidates = _fourier_candidates(kind, source, target_s, ns, policy)
    labels, rows = [], []
    for label, errors in candidates:
        labels.append(label)
        rows.append(errors)
    table = np.vstack(rows)
    worst = table.max(axis=0)
    argmax = table.argmax(axis=0)
    logger.info("%s: %d ball elements, worst case at n=%d from %s", kind, len(labels), ns[-1], labels[argmax[-1]])
    fit_range = default_fit_range(ns.tolist()) if fit_range is None else tuple(fit_range)
    report = fit_rate(zip(ns.tolist(), worst.tolist()), fit_range)
    return report.with_target(
        -t / source.d,
        kind=kind,
        source={"s": source.s, "p": source.p, "q": source.q, "d": source.d},
        target_s=target_s,
        t=t,
        elements=len(labels),
        worst_profile={int(n): labels[i] for n, i in zip(ns, argmax)},
        required_regularity=required_regularity(source, target_s),
    )


def experiment_constants(kind, family="cdf22", levels=5, box=((0.25, 0.75),)):
    """Frame constants behind an experiment; measured on a domain section for ``domain-poisson``."""
    if kind != "domain-poisson":
        return dict(ORTHONORMAL_CONSTANTS)
    dfp = build_domain_frame(build_system(family), domain_preset("interval"), j_max=levels)
    _, constants, stable = measure_domain_constants(dfp, box)
    payload = constants.as_dict()
    payload["section_level"] = levels
    payload["stable_onset"] = stable.onset
    return payload
