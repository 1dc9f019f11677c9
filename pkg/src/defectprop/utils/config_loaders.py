"""
Load and validate run configurations.

The package defaults (``configs/iconfig.yml``) are read first, with
:func:`apsbits.utils.config_loaders.load_config`.  A user run configuration
(JSON, or YAML) is deep-merged over them; its parse errors carry the line
number.  User sections use lower-case keys, the defaults file upper-case keys
as is usual for iconfig.

.. autosummary::
    ~read_run_file
    ~load_defaults
    ~merge_config
    ~load_run_config
    ~RunConfig
"""

import copy
import logging
import math
import numbers
from dataclasses import dataclass
from pathlib import Path

import yaml
from apsbits.utils.config_loaders import load_config

from ..defect_geometry import DefectParams
from ..propagator import TruncationPolicy
from ..special_functions import AccuracyPolicy
from ..spectrum import Couplings
from .exceptions import ConfigError

logger = logging.getLogger(__name__)

DEFAULTS_PATH = Path(__file__).parent.parent / "configs" / "iconfig.yml"
OUTPUT_FORMATS = ("csv", "json")
COMPARE_CHOICES = ("schrodinger-cone",)


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration."""

    defect: DefectParams
    couplings: Couplings
    truncation: TruncationPolicy
    accuracy: AccuracyPolicy
    spectrum: dict
    propagator: dict
    geometry: dict
    verify: dict
    output: dict


def read_run_file(path):
    """
    Parse a JSON or YAML run file into a mapping.

    Raises:
        ConfigError: file missing, syntax error (with line), or not a mapping
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        line = None if mark is None else mark.line + 1
        column = "" if mark is None else f", column {mark.column + 1}"
        raise ConfigError(f"syntax error in {path}{column}: {exc.problem}", line=line) from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a mapping")
    return data


def load_defaults(path=DEFAULTS_PATH):
    """Package defaults: the iconfig sections, keys lower-cased."""
    raw = load_config(Path(path))
    return {key.lower(): value for key, value in raw.items() if isinstance(value, dict)}


def merge_config(base, update, prefix=""):
    """
    Deep-merge ``update`` over ``base`` (returns a new mapping).

    Raises:
        ConfigError: a key of ``update`` is unknown in ``base``
    """
    merged = copy.deepcopy(base)
    for key, value in update.items():
        where = f"{prefix}{key}"
        if key not in merged:
            raise ConfigError("unknown key", field=where)
        if isinstance(merged[key], dict) and merged[key]:
            if not isinstance(value, dict):
                raise ConfigError("expected a mapping", field=where)
            merged[key] = merge_config(merged[key], value, prefix=f"{where}.")
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def _number(section, key, **limits):
    return _check_number(section[1][key], f"{section[0]}.{key}", **limits)


def _check_number(value, where, *, positive=False, nonnegative=False, integer=False):
    if isinstance(value, bool) or not isinstance(value, numbers.Real):
        raise ConfigError(f"expected a number, got {value!r}", field=where)
    if not math.isfinite(value):
        raise ConfigError(f"expected a finite number, got {value!r}", field=where)
    if integer and int(value) != value:
        raise ConfigError(f"expected an integer, got {value!r}", field=where)
    if positive and not value > 0:
        raise ConfigError(f"must be > 0, got {value!r}", field=where)
    if nonnegative and not value >= 0:
        raise ConfigError(f"must be >= 0, got {value!r}", field=where)
    return int(value) if integer else float(value)


def _number_list(section, key, *, integer=False, length=None, positive=False):
    values = section[1][key]
    where = f"{section[0]}.{key}"
    if not isinstance(values, list) or not values:
        raise ConfigError(f"expected a non-empty list, got {values!r}", field=where)
    if length is not None and len(values) != length:
        raise ConfigError(f"expected {length} entries, got {len(values)}", field=where)
    return [
        _check_number(value, f"{where}[{i}]", integer=integer, positive=positive)
        for i, value in enumerate(values)
    ]


def _range(section, key):
    low, high = _number_list(section, key, integer=True, length=2)
    if low > high:
        raise ConfigError(f"empty range [{low}, {high}]", field=f"{section[0]}.{key}")
    return [low, high]


def _defect(data):
    section = ("defect", data["defect"])
    gamma = _number(section, "gamma")
    if not -2 * math.pi < gamma < 2 * math.pi:
        raise ConfigError(f"must lie in (-2 pi, 2 pi), got {gamma}", field="defect.gamma")
    return DefectParams(gamma=gamma, b=_number(section, "b"))


def _couplings(data):
    section = ("couplings", data["couplings"])
    return Couplings(
        alpha=_number(section, "alpha"),
        omega_L=_number(section, "omega_L"),
        omega_0=_number(section, "omega_0", nonnegative=True),
        kappa=_number(section, "kappa", nonnegative=True),
        hbar=_number(section, "hbar", positive=True),
        mass=_number(section, "mass", positive=True),
    )


def _truncation(data):
    section = ("truncation", data["truncation"])
    counts = {
        key: _number(section, key, integer=True, positive=True)
        for key in ("m_max", "n_wind_max", "n_series_max")
    }
    return TruncationPolicy(
        quad_rel_tol=_number(section, "quad_rel_tol", positive=True),
        lambda_cutoff=_number(section, "lambda_cutoff", positive=True),
        **counts,
    )


def _accuracy(data):
    section = ("accuracy", data["accuracy"])
    return AccuracyPolicy(
        target_rel_err=_number(section, "target_rel_err", positive=True),
        max_terms=_number(section, "max_terms", integer=True, positive=True),
    )


def _spectrum(data):
    section = ("spectrum", data["spectrum"])
    compare = section[1]["compare"]
    if compare is not None and compare not in COMPARE_CHOICES:
        raise ConfigError(
            f"expected one of {COMPARE_CHOICES}, got {compare!r}", field="spectrum.compare"
        )
    return {
        "k": _number(section, "k"),
        "n_max": _number(section, "n_max", integer=True, nonnegative=True),
        "m_range": _range(section, "m_range"),
        "grouping_tol": _number(section, "grouping_tol", positive=True),
        "compare": compare,
    }


def _propagator(data):
    section = ("propagator", data["propagator"])
    body = section[1]
    points = body["points"]
    if not isinstance(points, list) or not points:
        raise ConfigError("expected a non-empty list of points", field="propagator.points")
    checked_points = []
    for i, point in enumerate(points):
        where = f"propagator.points[{i}]"
        if not isinstance(point, list) or len(point) != 4:
            raise ConfigError("expected [r1, theta1, r2, theta2]", field=where)
        r1, theta1, r2, theta2 = (
            _check_number(value, f"{where}[{j}]") for j, value in enumerate(point)
        )
        if not (r1 > 0 and r2 > 0):
            raise ConfigError("radii must be > 0", field=where)
        for theta in (theta1, theta2):
            if not 0 <= theta < 2 * math.pi:
                raise ConfigError("angles must lie in [0, 2 pi)", field=where)
        checked_points.append([r1, theta1, r2, theta2])
    alpha_prime = body["alpha_prime"]
    if alpha_prime is not None:
        alpha_prime = _number(section, "alpha_prime")
    return {
        "k": _number(section, "k"),
        "alpha_prime": alpha_prime,
        "m_values": _number_list(section, "m_values", integer=True),
        "windings": _number_list(section, "windings", integer=True),
        "tau": _number_list(section, "tau", positive=True),
        "points": checked_points,
        "semigroup_split": _number_list(section, "semigroup_split", length=2, positive=True),
        "free_limit_omega": _number(section, "free_limit_omega", positive=True),
    }


def _geometry(data):
    section = ("geometry", data["geometry"])
    return {
        "r_grid": _number_list(section, "r_grid", positive=True),
        "quadrature_n": _number(section, "quadrature_n", integer=True, positive=True),
    }


def _verify(data):
    section = ("verify", data["verify"])
    grid = ("verify.grid", section[1]["grid"])
    checks = section[1]["checks"]
    if checks is not None and (
        not isinstance(checks, list) or not all(isinstance(c, str) for c in checks)
    ):
        raise ConfigError("expected a list of check names or null", field="verify.checks")
    return {
        "grid": {
            "r_max": _number(grid, "r_max", positive=True),
            "n_points": _number(grid, "n_points", integer=True, positive=True),
        },
        "n_eigs": _number(section, "n_eigs", integer=True, positive=True),
        "sigma": _number_list(section, "sigma", positive=True),
        "kappa": _number_list(section, "kappa"),
        "xi": _number_list(section, "xi"),
        "m_range": _range(section, "m_range"),
        "checks": checks,
    }


def _output(data):
    section = ("output", data["output"])
    fmt = section[1]["format"]
    if fmt not in OUTPUT_FORMATS:
        raise ConfigError(
            f"expected one of {OUTPUT_FORMATS}, got {fmt!r}", field="output.format"
        )
    path = section[1]["path"]
    if path is not None and not isinstance(path, str):
        raise ConfigError(f"expected a file name or null, got {path!r}", field="output.path")
    return {
        "format": fmt,
        "path": path,
        "precision": _number(section, "precision", integer=True, positive=True),
    }


def validate(data):
    """Build a :class:`RunConfig` from a merged mapping."""
    return RunConfig(
        defect=_defect(data),
        couplings=_couplings(data),
        truncation=_truncation(data),
        accuracy=_accuracy(data),
        spectrum=_spectrum(data),
        propagator=_propagator(data),
        geometry=_geometry(data),
        verify=_verify(data),
        output=_output(data),
    )


def load_run_config(path=None, overrides=None):
    """
    Defaults, merged with the file at ``path`` and then with ``overrides``.

    Raises:
        ConfigError: parse or validation failure, attributed to a field or line
    """
    data = load_defaults()
    if path is not None:
        data = merge_config(data, read_run_file(path))
        logger.info("Run configuration: %s", path)
    if overrides:
        data = merge_config(data, overrides)
    return validate(data)
