"""Descriptive statistics and ordinary least squares with ANOVA / t-test
inference."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.linalg import solve_triangular

from .distributions import f_upper_tail_p, student_t_two_sided_p
from .errors import EmptyInput, InsufficientRows, MissingDefects, SchemaError, SingularMatrix
from .model import METRICS


@dataclass(frozen=True)
class Summary:
    n: int
    min: float
    max: float
    median: float
    mean: float
    sample_std: float
    degenerate: bool = False


def describe(values) -> Summary:
    """Min, max, median, mean and sample (n-1) standard deviation."""
    xs = sorted(float(v) for v in values)
    n = len(xs)
    if n == 0:
        raise EmptyInput("describe() needs at least one value")
    mid = n // 2
    median = xs[mid] if n % 2 else (xs[mid - 1] + xs[mid]) / 2.0
    mean = math.fsum(xs) / n
    if n == 1:
        return Summary(1, xs[0], xs[0], xs[0], xs[0], 0.0, degenerate=True)
    var = math.fsum((x - mean) ** 2 for x in xs) / (n - 1)
    # keep mean inside [min, max] despite rounding
    mean = min(max(mean, xs[0]), xs[-1])
    return Summary(n, xs[0], xs[-1], median, mean, math.sqrt(var))


@dataclass(frozen=True)
class DesignMatrix:
    """Predictor columns (no intercept column; it is implicit) and response."""
    X: np.ndarray
    y: np.ndarray
    names: tuple[str, ...] = METRICS
    rows: tuple[str, ...] = ()

    @property
    def n(self):
        return self.X.shape[0]

    @property
    def p(self):
        return self.X.shape[1]


def design_matrix(metric_rows, defect_rows, predictors=METRICS) -> DesignMatrix:
    """Join metrics and defects by module, in metrics-row order."""
    defects = {d.module: d for d in defect_rows}
    for r in metric_rows:
        if r.module not in defects:
            raise MissingDefects(r.module)
    X = np.array([[float(r.value(m)) for m in predictors] for r in metric_rows], dtype=float)
    y = np.array([float(defects[r.module].defects) for r in metric_rows])
    return DesignMatrix(X.reshape(len(metric_rows), len(predictors)), y, tuple(predictors),
                        tuple(r.module for r in metric_rows))


@dataclass(frozen=True)
class Anova:
    ss_regression: float
    ss_residual: float
    ss_total: float
    df_regression: int
    df_residual: int
    ms_regression: float
    ms_residual: float
    f_value: float
    f_pvalue: float


@dataclass(frozen=True)
class RegressionResult:
    names: tuple[str, ...]
    intercept_a: float
    intercept_se: float
    intercept_t: float
    intercept_p: float
    coefficients_B: tuple[float, ...]
    std_errors: tuple[float, ...]
    standardized_betas: tuple[float, ...]
    t_values: tuple[float, ...]
    p_values: tuple[float, ...]
    r: float
    r2: float
    adj_r2: float
    std_error_estimate: float
    anova: Anova
    fitted: tuple[float, ...]
    residuals: tuple[float, ...]

    def coef(self, name):
        return self.coefficients_B[self.names.index(name)]

    def term(self, name):
        """(B, se, beta, t, p) for a predictor, or for ``"const"``."""
        if name == "const":
            return (self.intercept_a, self.intercept_se, None, self.intercept_t, self.intercept_p)
        j = self.names.index(name)
        return (self.coefficients_B[j], self.std_errors[j], self.standardized_betas[j],
                self.t_values[j], self.p_values[j])


def ols_fit(dm: DesignMatrix) -> RegressionResult:
    """Least squares with intercept via Householder QR."""
    n, p = dm.X.shape
    if n <= p + 1:
        raise InsufficientRows(f"need more than {p + 1} rows for {p} predictors, got {n}")
    sx = dm.X.std(axis=0, ddof=1)
    for j in range(p):
        if sx[j] == 0:
            raise SingularMatrix(f"predictor {dm.names[j]!r} is constant")
    A = np.column_stack([np.ones(n), dm.X])
    Q, R = np.linalg.qr(A)
    diag = np.abs(np.diag(R))
    if diag.min() <= 1e-10 * diag.max():
        raise SingularMatrix("predictor columns are linearly dependent")
    coef = solve_triangular(R, Q.T @ dm.y)

    fitted = A @ coef
    resid = dm.y - fitted
    ybar = dm.y.mean()
    ss_res = float(resid @ resid)
    ss_tot = float(((dm.y - ybar) ** 2).sum())
    ss_reg = float(((fitted - ybar) ** 2).sum())
    df_reg, df_res = p, n - p - 1
    ms_reg, ms_res = ss_reg / df_reg, ss_res / df_res
    f_value = ms_reg / ms_res if ms_res > 0 else math.inf
    anova = Anova(ss_reg, ss_res, ss_tot, df_reg, df_res, ms_reg, ms_res, f_value,
                  f_upper_tail_p(f_value, df_reg, df_res))

    # diag((A'A)^-1) from R^-1 R^-T; only used for standard errors
    Rinv = solve_triangular(R, np.eye(p + 1))
    se = np.sqrt(ms_res * (Rinv**2).sum(axis=1))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(se > 0, coef / se, np.copysign(np.inf, coef))
    pv = [student_t_two_sided_p(float(v), df_res) for v in t]
    sy = dm.y.std(ddof=1)
    betas = coef[1:] * sx / sy if sy > 0 else np.zeros(p)
    r2 = ss_reg / ss_tot if ss_tot > 0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)

    return RegressionResult(
        names=tuple(dm.names),
        intercept_a=float(coef[0]),
        intercept_se=float(se[0]),
        intercept_t=float(t[0]),
        intercept_p=pv[0],
        coefficients_B=tuple(float(c) for c in coef[1:]),
        std_errors=tuple(float(s) for s in se[1:]),
        standardized_betas=tuple(float(b) for b in betas),
        t_values=tuple(float(v) for v in t[1:]),
        p_values=tuple(pv[1:]),
        r=math.sqrt(r2),
        r2=r2,
        adj_r2=1.0 - (1.0 - r2) * (n - 1) / df_res,
        std_error_estimate=math.sqrt(ms_res),
        anova=anova,
        fitted=tuple(float(v) for v in fitted),
        residuals=tuple(float(v) for v in resid),
    )


# -- output formats ----------------------------------------------------------

COEF_HEADER = ("term", "B", "std_error", "beta", "t", "p")


def coefficients_csv_text(res: RegressionResult) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COEF_HEADER)
    for term in ("const",) + res.names:
        B, se, beta, t, p = res.term(term)
        w.writerow([term, repr(B), repr(se), "" if beta is None else repr(beta), repr(t), repr(p)])
    return buf.getvalue()


def write_coefficients_csv(res: RegressionResult, path) -> None:
    Path(path).write_text(coefficients_csv_text(res), encoding="utf-8")


def read_coefficients_csv(path) -> dict[str, float]:
    """term -> B, as stored."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"term", "B"} <= set(reader.fieldnames):
            raise SchemaError(str(path), "coefficient file needs 'term' and 'B' columns")
        out = {}
        for lineno, rec in enumerate(reader, start=2):
            try:
                out[rec["term"].strip().lower()] = float(rec["B"])
            except (TypeError, ValueError):
                raise SchemaError(f"{path}:{lineno}", f"bad coefficient {rec['B']!r}") from None
        return out


def _f3(v):
    """SPSS-style three decimals: leading zero dropped."""
    s = f"{v:.3f}"
    if s.startswith("0."):
        return s[1:]
    if s.startswith("-0."):
        return "-" + s[2:]
    return s


def model_summary_text(res: RegressionResult) -> str:
    lines = [
        "Model Summary",
        f"{'Model':<6}{'R':>10}{'R Square':>12}{'Adjusted R Square':>20}{'Std. Error of the Estimate':>29}",
        f"{'1':<6}{_f3(res.r):>10}{_f3(res.r2):>12}{_f3(res.adj_r2):>20}{res.std_error_estimate:>29.5f}",
    ]
    return "\n".join(lines) + "\n"


def anova_text(res: RegressionResult) -> str:
    a = res.anova
    head = f"{'':<12}{'Sum of Squares':>16}{'df':>5}{'Mean Square':>14}{'F':>9}{'Sig.':>8}"
    lines = [
        "ANOVA",
        head,
        f"{'Regression':<12}{a.ss_regression:>16.3f}{a.df_regression:>5}{a.ms_regression:>14.3f}"
        f"{a.f_value:>9.3f}{_f3(a.f_pvalue):>8}",
        f"{'Residual':<12}{a.ss_residual:>16.3f}{a.df_residual:>5}{a.ms_residual:>14.3f}",
        f"{'Total':<12}{a.ss_total:>16.3f}{a.df_regression + a.df_residual:>5}",
        "Predictors: (Constant), " + ", ".join(n.upper() for n in res.names),
        "Dependent Variable: Defects",
    ]
    return "\n".join(lines) + "\n"


def coefficients_text(res: RegressionResult) -> str:
    lines = [
        "Coefficients",
        f"{'':<12}{'B':>10}{'Std. Error':>12}{'Beta':>9}{'t':>9}{'Sig.':>8}",
    ]
    for term in ("const",) + res.names:
        B, se, beta, t, p = res.term(term)
        label = "(Constant)" if term == "const" else term.upper()
        lines.append(
            f"{label:<12}{_f3(B):>10}{_f3(se):>12}{'' if beta is None else _f3(beta):>9}"
            f"{_f3(t):>9}{_f3(p):>8}"
        )
    lines.append("Dependent Variable: Defects")
    return "\n".join(lines) + "\n"


def regression_report_text(res: RegressionResult) -> str:
    return "\n".join([model_summary_text(res), anova_text(res), coefficients_text(res)])


def summary_table_text(columns) -> str:
    """``columns`` is an ordered mapping label -> Summary."""
    lines = [f"{'':<10}{'Min':>10}{'Max':>10}{'Median':>10}{'Average':>10}{'Std. Dev':>10}"]
    for label, s in columns.items():
        lines.append(
            f"{label:<10}{s.min:>10.1f}{s.max:>10.1f}{s.median:>10.1f}{s.mean:>10.1f}{s.sample_std:>10.1f}"
        )
    return "\n".join(lines) + "\n"
