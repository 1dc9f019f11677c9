"""Run configuration parsing and validation."""

import json
import math

import pytest

from defectprop.utils import config_loaders as cl
from defectprop.utils.exceptions import ConfigError


def _write(tmp_path, text, name="run.yml"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_are_valid():
    config = cl.load_run_config()
    assert config.defect.gamma == 0.0
    assert config.couplings.omega_0 == 1.0
    assert config.truncation.m_max == 20
    assert config.output == {"format": "csv", "path": None, "precision": 17}
    assert config.verify["checks"] is None
    assert config.propagator["points"] == [[0.8, 0.0, 1.3, 0.5]]


def test_load_defaults_sections():
    defaults = cl.load_defaults()
    assert "iconfig_version" not in defaults
    assert set(defaults) == {
        "defect",
        "couplings",
        "truncation",
        "accuracy",
        "spectrum",
        "propagator",
        "geometry",
        "verify",
        "output",
    }


def test_json_run_config(tmp_path):
    path = _write(tmp_path, json.dumps({"defect": {"gamma": math.pi, "b": 1.0}}), "run.json")
    config = cl.load_run_config(path)
    assert config.defect.sigma == 0.5
    assert config.defect.b == 1.0
    # untouched sections keep their defaults
    assert config.couplings.alpha == 0.0


def test_overrides():
    config = cl.load_run_config(None, {"output": {"format": "json"}})
    assert config.output["format"] == "json"
    assert config.output["precision"] == 17


@pytest.mark.parametrize(
    "update, field",
    [
        ({"defect": {"gamma": 7.0}}, "defect.gamma"),
        ({"defect": {"gama": 1.0}}, "defect.gama"),
        ({"couplings": {"alpha": True}}, "couplings.alpha"),
        ({"couplings": {"kappa": -0.5}}, "couplings.kappa"),
        ({"truncation": {"m_max": 2.5}}, "truncation.m_max"),
        ({"spectrum": {"m_range": [3, 1]}}, "spectrum.m_range"),
        ({"spectrum": {"compare": "flat"}}, "spectrum.compare"),
        ({"propagator": {"points": [[0.0, 0.0, 1.0, 0.0]]}}, "propagator.points[0]"),
        ({"propagator": {"points": [[1.0, 7.0, 1.0, 0.0]]}}, "propagator.points[0]"),
        ({"verify": {"checks": "landau"}}, "verify.checks"),
        ({"output": {"format": "xml"}}, "output.format"),
        ({"output": 3}, "output"),
    ],
)
def test_validation_names_the_field(update, field):
    with pytest.raises(ConfigError) as info:
        cl.load_run_config(None, update)
    assert info.value.field == field
    assert field in str(info.value)


def test_syntax_error_reports_line(tmp_path):
    path = _write(tmp_path, "defect:\n  gamma: 1.0: 2.0\n")
    with pytest.raises(ConfigError) as info:
        cl.read_run_file(path)
    assert info.value.line == 2


def test_not_a_mapping(tmp_path):
    with pytest.raises(ConfigError):
        cl.read_run_file(_write(tmp_path, "- 1\n- 2\n"))


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        cl.read_run_file(tmp_path / "absent.yml")


def test_empty_file_is_empty_mapping(tmp_path):
    assert cl.read_run_file(_write(tmp_path, "")) == {}


def test_merge_does_not_modify_base():
    base = {"a": {"b": 1, "c": [1, 2]}}
    merged = cl.merge_config(base, {"a": {"c": [3]}})
    assert merged == {"a": {"b": 1, "c": [3]}}
    assert base == {"a": {"b": 1, "c": [1, 2]}}
