"""CSV/JSON output and console summaries."""

import json
import math

import numpy as np
import pytest

from defectprop.utils import reporter
from defectprop.utils import table_output as to


def _table():
    table = to.Table(command="demo", columns=["name", "value", "flag"], meta={"x": 0.1})
    table.add_row({"name": "a", "value": 0.1, "flag": True})
    table.add_row(["b", 2, None])
    return table


def test_add_row_checks_columns():
    table = _table()
    with pytest.raises(KeyError):
        table.add_row({"other": 1})
    with pytest.raises(ValueError):
        table.add_row(["too", "short"])
    assert table.rows[1] == ["b", 2, None]


def test_format_value():
    assert to.format_value(None) == ""
    assert to.format_value(False) == "false"
    assert to.format_value(3) == "3"
    assert to.format_value(0.1) == "0.10000000000000001"
    assert to.format_value(1 / 3, precision=4) == "0.3333"
    assert to.format_value("n/a") == "n/a"


def test_csv():
    text = to.to_csv(_table())
    assert text == "name,value,flag\na,0.10000000000000001,true\nb,2,\n"
    assert "\r" not in text


def test_csv_numpy_scalars():
    table = to.Table(command="demo", columns=["v"])
    table.add_row([np.float64(0.5)])
    assert to.to_csv(table) == "v\n0.5\n"


def test_json():
    table = _table()
    table.add_row(["c", math.inf, False])
    document = json.loads(to.to_json(table, precision=6))
    assert document["command"] == "demo"
    assert document["columns"] == ["name", "value", "flag"]
    assert document["rows"][0] == ["a", to.round_float(0.1, 6), True]
    assert document["rows"][2][1] == "inf"
    assert document["meta"] == {"x": 0.1}


def test_render_unknown_format():
    with pytest.raises(ValueError):
        to.render(_table(), fmt="xml")


def test_write_table(tmp_path):
    path = to.write_table(_table(), tmp_path / "out.csv")
    assert path.read_bytes() == to.to_csv(_table()).encode("utf-8")


def test_complex_fields():
    assert to.complex_fields("value", 1 - 2j) == {"value_re": 1.0, "value_im": -2.0}


def test_summary():
    text = reporter.summary(_table(), max_rows=1)
    assert "name" in text
    assert "0.1" in text
    assert "1 more rows" in text


def test_status_summary():
    table = to.Table(command="verify", columns=["check", "status"])
    for status in ("pass", "pass", "fail"):
        table.add_row(["x", status])
    text = reporter.status_summary(table)
    assert "pass" in text
    assert "fail" in text
