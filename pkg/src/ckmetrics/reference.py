"""Access to the bundled datasets (the 18-module reference table and the
toy codebase)."""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .io import read_defects_csv, read_metrics_csv


def fixture_path(name: str) -> Path:
    return Path(resources.files("ckmetrics") / "fixtures" / name)


def table4_metrics():
    return read_metrics_csv(fixture_path("table4_metrics.csv"))


def table4_defects():
    return read_defects_csv(fixture_path("table4_defects.csv"))


def is_reference_dataset(metric_rows, defect_rows) -> bool:
    """True when the rows are exactly the bundled 18-module table (any order)."""
    key_m = lambda r: r.module  # noqa: E731
    same_metrics = sorted(metric_rows, key=key_m) == sorted(table4_metrics(), key=key_m)
    ref_defects = {d.module: d.defects for d in table4_defects()}
    same_defects = {d.module: d.defects for d in defect_rows} == ref_defects
    return same_metrics and same_defects
