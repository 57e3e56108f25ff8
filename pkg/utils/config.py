"""Experiment configuration read from a flat ``[experiment]`` INI section.

Example::

    [experiment]
    kind = sequence
    source_s = 1.0
    source_p = 1
    source_q = 2
    target_s = 0
    n_list = 16, 32, 64, 128, 256, 512, 1024
    seed = 7
    output = results/sequence

Keys starting with ``tol_`` are tolerance overrides for ``verify``.
"""

import configparser
import logging
import os
from dataclasses import dataclass, field, replace

from .besov import BesovParams, check_t_condition
from .domains import PRESETS
from .errors import ConfigurationError
from .experiments import DEFAULT_N_LIST, KINDS, smoothness_gap
from .rates import default_fit_range
from .wavelets import build_system

logger = logging.getLogger(__name__)

SECTION = "experiment"
SEED_LIMIT = 2 ** 64
KNOWN_KEYS = {
    "kind", "family", "domain", "dimension", "source_s", "source_p", "source_q",
    "target_s", "n_list", "fit_min", "fit_max", "seed", "random_elements", "levels", "output",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment description; every field has a documented default."""

    kind: str = "sequence"
    family: str = "cdf22"
    domain: str = "interval"
    dimension: int = 1
    source_s: float = 1.0
    source_p: float = 1.0
    source_q: float = 2.0
    target_s: float = 0.0
    n_list: tuple = DEFAULT_N_LIST
    fit_min: int = None
    fit_max: int = None
    seed: int = 0
    random_elements: int = 64
    levels: int = None
    output: str = "results"
    tolerances: dict = field(default_factory=dict, hash=False)

    @property
    def source(self):
        return BesovParams(self.source_s, self.source_p, self.source_q, self.dimension)

    @property
    def fit_range(self):
        if self.fit_min is not None and self.fit_max is not None:
            return self.fit_min, self.fit_max
        lo, hi = default_fit_range(self.n_list)
        return (lo if self.fit_min is None else self.fit_min), (hi if self.fit_max is None else self.fit_max)

    def with_overrides(self, output=None, seed=None):
        """Apply ``--out`` and ``--seed`` on top of the file values."""
        changes = {}
        if output is not None:
            changes["output"] = output
        if seed is not None:
            changes["seed"] = _seed(seed)
        return replace(self, **changes) if changes else self

    def validate(self):
        """
        Check every field against the preconditions of the module it feeds.

        Returns:
            ExperimentConfig: self

        Raises:
            ConfigurationError: Naming the offending field
            ParameterError: For Besov parameters and the t-condition
        """
        if self.kind not in KINDS:
            raise ConfigurationError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}", field="kind")
        try:
            build_system(self.family, self.dimension)
        except ConfigurationError as exc:
            raise ConfigurationError(str(exc), field="family") from exc
        if self.domain not in PRESETS and not os.path.isfile(self.domain):
            raise ConfigurationError(
                f"domain {self.domain!r} is neither a preset ({', '.join(PRESETS)}) nor a geometry file",
                field="domain",
            )
        if not self.n_list or min(self.n_list) < 1:
            raise ConfigurationError("n_list must hold positive integers", field="n_list")
        lo, hi = self.fit_range
        if lo > hi:
            raise ConfigurationError(f"fit_min {lo} exceeds fit_max {hi}", field="fit_min")
        if self.random_elements < 0:
            raise ConfigurationError("random_elements must be nonnegative", field="random_elements")
        if self.levels is not None and self.levels < 0:
            raise ConfigurationError("levels must be nonnegative", field="levels")
        for name, value in self.tolerances.items():
            if not value > 0:
                raise ConfigurationError(f"tolerance {name} must be positive", field=name)
        source = self.source
        check_t_condition(smoothness_gap(self.kind, source, self.target_s), source.p, source.d)
        return self


def _seed(value):
    try:
        seed = int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"seed must be an integer, got {value!r}", field="seed") from exc
    if not 0 <= seed < SEED_LIMIT:
        raise ConfigurationError("seed must be an unsigned 64-bit integer", field="seed")
    return seed


def _number(raw, name, kind=float):
    try:
        return kind(raw)
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be {kind.__name__}, got {raw!r}", field=name) from exc


def _exponent(raw, name):
    if raw.strip().lower() in ("inf", "infinity"):
        return float("inf")
    return _number(raw, name)


def _n_list(raw):
    try:
        values = tuple(int(token) for token in raw.replace(",", " ").split())
    except ValueError as exc:
        raise ConfigurationError(f"n_list must be integers, got {raw!r}", field="n_list") from exc
    if not values:
        raise ConfigurationError("n_list is empty", field="n_list")
    return values


PARSERS = {
    "kind": lambda raw: raw.strip(),
    "family": lambda raw: raw.strip(),
    "domain": lambda raw: raw.strip(),
    "output": lambda raw: raw.strip(),
    "dimension": lambda raw: _number(raw, "dimension", int),
    "source_s": lambda raw: _number(raw, "source_s"),
    "source_p": lambda raw: _exponent(raw, "source_p"),
    "source_q": lambda raw: _exponent(raw, "source_q"),
    "target_s": lambda raw: _number(raw, "target_s"),
    "n_list": _n_list,
    "fit_min": lambda raw: _number(raw, "fit_min", int),
    "fit_max": lambda raw: _number(raw, "fit_max", int),
    "seed": _seed,
    "random_elements": lambda raw: _number(raw, "random_elements", int),
    "levels": lambda raw: _number(raw, "levels", int),
}


def config_from_mapping(mapping):
    """Parse string values (as read from the INI file) into a validated config."""
    values, tolerances = {}, {}
    for key, raw in mapping.items():
        if key.startswith("tol_"):
            tolerances[key] = _number(raw, key)
        elif key in KNOWN_KEYS:
            values[key] = PARSERS[key](raw)
        else:
            raise ConfigurationError(f"unknown configuration key {key!r}", field=key)
    return ExperimentConfig(tolerances=tolerances, **values).validate()


def load_config(path):
    """
    Read and validate an experiment config file.

    Raises:
        ConfigurationError: If the file is missing, unreadable or invalid
    """
    if not os.path.isfile(path):
        raise ConfigurationError(f"config file not found: {path}", field="config")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        parser.read(path)
    except configparser.Error as exc:
        raise ConfigurationError(f"cannot parse {path}: {exc}", field="config") from exc
    if not parser.has_section(SECTION):
        raise ConfigurationError(f"{path} has no [{SECTION}] section", field="config")
    config = config_from_mapping(dict(parser.items(SECTION)))
    logger.debug("loaded %s: kind=%s, source=%s", path, config.kind, config.source)
    return config
