"""Defect prediction from a fitted linear model, and bug-fix effort from a
historical hours-per-defect rate."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .errors import LabelMismatch, NoDefectsInHistory
from .model import METRICS
from .stats import RegressionResult, read_coefficients_csv


@dataclass(frozen=True)
class PredictionModel:
    intercept: float
    coefficients: dict
    provenance: str = "fitted"

    def __post_init__(self):
        if set(self.coefficients) != set(METRICS):
            raise LabelMismatch(
                "model needs exactly the coefficients " + ", ".join(METRICS)
                + "; got " + ", ".join(sorted(self.coefficients))
            )

    @classmethod
    def from_regression(cls, res: RegressionResult):
        return cls(res.intercept_a, dict(zip(res.names, res.coefficients_B)), "fitted")

    @classmethod
    def from_csv(cls, path):
        terms = read_coefficients_csv(path)
        if "const" not in terms:
            raise LabelMismatch(f"{path}: no 'const' term")
        intercept = terms.pop("const")
        return cls(intercept, terms, f"file:{path}")


@dataclass(frozen=True)
class Prediction:
    raw: float

    @property
    def floored(self) -> float:
        return max(self.raw, 0.0)


def predict_defects(model: PredictionModel, row) -> Prediction:
    """Intercept plus the B-weighted metric values.  Negative values are kept."""
    try:
        total = math.fsum(
            [model.intercept] + [model.coefficients[m] * row.value(m) for m in METRICS]
        )
    except (KeyError, AttributeError) as e:
        raise LabelMismatch(f"row lacks metric {e}") from None
    return Prediction(total)


@dataclass(frozen=True)
class EffortRate:
    hours_per_defect: float
    modules: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.hours_per_defect > 0:
            raise ValueError("hours_per_defect must be positive")


def effort_rate(history) -> EffortRate:
    history = list(history)
    defects = sum(d.defects for d in history)
    if defects <= 0:
        raise NoDefectsInHistory("history window has no defects")
    hours = math.fsum(d.fix_hours for d in history)
    return EffortRate(hours / defects, tuple(d.module for d in history))


def estimate_fix_hours(rate: EffortRate, predicted_defects: float) -> float:
    if predicted_defects < 0:
        raise ValueError("use the floored prediction for effort estimates")
    return rate.hours_per_defect * predicted_defects


def score_csv_text(model: PredictionModel, rows, rate: EffortRate | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["module", "predicted_defects", "predicted_defects_floored", "estimated_fix_hours"])
    for r in rows:
        p = predict_defects(model, r)
        hours = "" if rate is None else repr(estimate_fix_hours(rate, p.floored))
        w.writerow([r.module, repr(p.raw), repr(p.floored), hours])
    return buf.getvalue()
