"""
CSV emission of probe reports.
"""

from __future__ import annotations

import csv
import io
import os
from collections.abc import Sequence

from mixnorm_lab.models import CSV_COLUMNS, ProbeReport


def reports_to_csv(reports: Sequence[ProbeReport]) -> str:
    """Render reports as CSV.

    Columns: probe,params,trials,max_ratio,witness_seed,pass,notes.
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for report in reports:
        writer.writerow(report.csv_row())
    return buffer.getvalue()


def write_csv(reports: Sequence[ProbeReport], path: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write(reports_to_csv(reports))
    return path
