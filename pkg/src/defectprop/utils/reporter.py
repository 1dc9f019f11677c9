"""
console summaries of result tables
"""

import pyRestTable

from .table_output import format_value

SUMMARY_PRECISION = 8


def summary(table, max_rows=40, precision=SUMMARY_PRECISION):
    """
    Text table of the first ``max_rows`` rows, for the console.

    Values are shown to ``precision`` significant digits; the output files
    keep full precision.
    """
    tbl = pyRestTable.Table()
    tbl.labels = list(table.columns)
    for row in table.rows[:max_rows]:
        tbl.addRow([format_value(v, precision) or "--" for v in row])
    text = str(tbl)
    hidden = len(table.rows) - max_rows
    if hidden > 0:
        text += f"\n... {hidden} more rows"
    return text


def status_summary(table):
    """pass/fail count of a verification table (``status`` column)."""
    index = table.columns.index("status")
    counts = {}
    for row in table.rows:
        counts[row[index]] = counts.get(row[index], 0) + 1
    tbl = pyRestTable.Table()
    tbl.labels = "status count".split()
    for status in sorted(counts):
        tbl.addRow((status, counts[status]))
    return str(tbl)
