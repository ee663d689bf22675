"""Command-line entry point.

Subcommands: parse, metrics, regions, regress, predict, report-paper.
Exit status: 0 success, 2 input/validation error, 3 numerical failure.
Errors print one ``error[Code]: message`` line on stderr.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io as ckio
from .errors import CKError, InheritanceCycle, InvalidModel, MissingDefects, NoSources, UsageError
from .metrics import aggregate_modules, make_policy
from .model import METRICS, validate_model
from .parser import (
    build_class_model,
    default_module_map,
    find_sources,
    parse_files,
    read_module_map,
)
from .predict import PredictionModel, effort_rate, score_csv_text
from .reference import is_reference_dataset, table4_defects, table4_metrics
from .stats import (
    anova_text,
    coefficients_csv_text,
    coefficients_text,
    describe,
    design_matrix,
    model_summary_text,
    ols_fit,
    regression_report_text,
    summary_table_text,
)
from .thresholds import (
    analyze,
    default_cuts,
    errata_text,
    make_cuts,
    region_report_text,
    regions_csv_text,
    summary_text,
    write_plot_data,
)


def _emit(text, out=None):
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")


def _write(out_dir: Path, name: str, text: str) -> Path:
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / name
    path.write_text(text, encoding="utf-8")
    return path


# -- parse -----------------------------------------------------------------

def cmd_parse(args) -> int:
    src = Path(args.src_dir)
    if not src.is_dir():
        raise NoSources(f"{src}: not a directory")
    paths = find_sources(src)
    if not paths:
        raise NoSources(f"{src}: no source files")
    units = parse_files(paths, root=src, jobs=args.jobs)
    if args.modules:
        module_map = read_module_map(args.modules)
    else:
        module_map = default_module_map(src, paths, units)
    model = build_class_model(units, module_map)
    _emit(ckio.dumps_model(model), args.out)
    return 0


# -- metrics ---------------------------------------------------------------

def _parse_agg(items):
    overrides = {}
    for item in items or []:
        metric, sep, rule = item.partition("=")
        if not sep:
            raise UsageError(f"--agg expects METRIC=RULE, got {item!r}")
        overrides[metric] = rule
    try:
        return make_policy(overrides)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_metrics(args) -> int:
    model = ckio.load_model_file(args.model)
    violations = validate_model(model)
    for v in violations:
        if v.rule in ("cycle", "self-inheritance"):
            raise InheritanceCycle(v.detail.strip("{}").split(",") if v.detail else [v.cls])
    if violations:
        raise InvalidModel(violations)
    rows = aggregate_modules(model, _parse_agg(args.agg))
    _emit(ckio.metrics_csv_text(rows), args.out)
    return 0


# -- regions ---------------------------------------------------------------

def _load_joined(metrics_csv, defects_csv):
    rows = ckio.read_metrics_csv(metrics_csv)
    defects = ckio.read_defects_csv(defects_csv)
    have = {d.module for d in defects}
    for r in rows:
        if r.module not in have:
            raise MissingDefects(r.module)
    extra = sorted(have - {r.module for r in rows})
    if extra:
        raise MissingDefects(f"{extra[0]} (defects listed for a module with no metrics)")
    if not rows:
        raise UsageError(f"{metrics_csv}: no rows")
    return rows, defects


def _cut_specs(spec_items, metrics, rows):
    """Resolve repeated --thresholds values into per-metric cuts.

    Forms: ``reference`` | ``none`` | ``<vendor>`` | ``user:c1[,c2]``, each
    optionally prefixed by ``<metric>:`` to apply to that metric only.  Later
    items win, except that a prefixed item always beats an unprefixed one.
    Returns (cut specs, whether all cuts are the reference defaults).
    """
    choice = {m: "reference" for m in metrics}
    scoped = []
    for item in spec_items or []:
        head, sep, rest = item.partition(":")
        if sep and head.lower() in METRICS:
            scoped.append((head.lower(), rest))
        else:
            choice = dict.fromkeys(metrics, item)
    # a metric-prefixed setting beats a global one wherever it appears
    for m, value in scoped:
        if m in choice:
            choice[m] = value
    specs = {}
    for m, value in choice.items():
        values = [r.value(m) for r in rows]
        try:
            if value.startswith("user:"):
                cuts = [float(c) for c in value[5:].split(",") if c.strip()]
                specs[m] = make_cuts(m, values, cuts)
            elif value == "none":
                specs[m] = default_cuts(m, rows, None)
            else:
                specs[m] = default_cuts(m, rows, value)
        except ValueError as e:
            raise UsageError(f"--thresholds {value!r}: {e}") from None
    return specs, all(v == "reference" for v in choice.values())


def _metric_list(arg):
    if not arg:
        return list(METRICS)
    out = []
    for m in arg:
        for part in m.split(","):
            part = part.strip().lower()
            if part not in METRICS:
                raise UsageError(f"unknown metric {part!r}")
            out.append(part)
    return out


def cmd_regions(args) -> int:
    rows, defects = _load_joined(args.metrics_csv, args.defects_csv)
    metrics = _metric_list(args.metric)
    specs, defaults = _cut_specs(args.thresholds, metrics, rows)
    reports = analyze(rows, defects, metrics, specs)
    applicable = defaults and metrics == list(METRICS) and is_reference_dataset(rows, defects)
    text = region_report_text(reports) + "\n" + summary_text(reports) + "\n" + errata_text(
        reports, applicable
    )
    if args.out:
        out = Path(args.out)
        _write(out, "regions.txt", text)
        _write(out, "regions.csv", regions_csv_text(reports))
        _write(out, "errata.txt", errata_text(reports, applicable))
        write_plot_data(reports, rows, out / "plots")
    sys.stdout.write(regions_csv_text(reports) if args.format == "csv" else text)
    return 0


# -- regress ---------------------------------------------------------------

def cmd_regress(args) -> int:
    rows, defects = _load_joined(args.metrics_csv, args.defects_csv)
    res = ols_fit(design_matrix(rows, defects))
    text = regression_report_text(res)
    if args.out:
        out = Path(args.out)
        _write(out, "regression.txt", text)
        _write(out, "coefficients.csv", coefficients_csv_text(res))
    sys.stdout.write(coefficients_csv_text(res) if args.format == "csv" else text)
    return 0


# -- predict ---------------------------------------------------------------

def cmd_predict(args) -> int:
    model = PredictionModel.from_csv(args.model_csv)
    rows = ckio.read_metrics_csv(args.metrics_csv)
    rate = effort_rate(ckio.read_defects_csv(args.history)) if args.history else None
    _emit(score_csv_text(model, rows, rate), args.out)
    return 0


# -- report-paper ----------------------------------------------------------

def table5_text(rows, defects) -> str:
    cols = {m.upper(): describe([r.value(m) for r in rows]) for m in METRICS}
    cols["Defects"] = describe([d.defects for d in defects])
    return summary_table_text(cols)


def table5_csv(rows, defects) -> str:
    lines = ["variable,min,max,median,mean,sample_std"]
    cols = {m: [r.value(m) for r in rows] for m in METRICS}
    cols["defects"] = [d.defects for d in defects]
    for name, vals in cols.items():
        s = describe(vals)
        lines.append(f"{name},{s.min!r},{s.max!r},{s.median!r},{s.mean!r},{s.sample_std!r}")
    return "\n".join(lines) + "\n"


def cmd_report_paper(args) -> int:
    out = Path(args.out)
    rows, defects = table4_metrics(), table4_defects()
    _write(out, "Table5.txt", table5_text(rows, defects))
    _write(out, "Table5.csv", table5_csv(rows, defects))
    reports = analyze(rows, defects)
    _write(out, "regions.txt", region_report_text(reports))
    _write(out, "regions.csv", regions_csv_text(reports))
    _write(out, "Table6_recomputed.txt", summary_text(reports))
    _write(out, "errata.txt", errata_text(reports, True))
    write_plot_data(reports, rows, out / "plots")
    res = ols_fit(design_matrix(rows, defects))
    _write(out, "Table7.txt", model_summary_text(res))
    _write(out, "Table8.txt", anova_text(res))
    _write(out, "Table9.txt", coefficients_text(res))
    _write(out, "coefficients.csv", coefficients_csv_text(res))
    if not args.quiet:
        sys.stdout.write(f"wrote reference tables to {out}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ckmetrics", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse sources into a class-model JSON file")
    p.add_argument("src_dir")
    p.add_argument("--modules", help="CSV with header class,module (default: directory name)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("metrics", help="per-module CK metrics from a class-model file")
    p.add_argument("model")
    p.add_argument("--agg", action="append", metavar="METRIC=sum|max|mean")
    p.add_argument("--out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("regions", help="threshold-region defect density analysis")
    p.add_argument("metrics_csv")
    p.add_argument("defects_csv")
    p.add_argument("--thresholds", action="append",
                   metavar="[METRIC:]reference|none|VENDOR|user:C1[,C2]")
    p.add_argument("--metric", action="append", help="restrict to these metrics")
    p.add_argument("--out", help="directory for regions.txt/csv, errata.txt and plots/")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_regions)

    p = sub.add_parser("regress", help="OLS of defects on the six metrics")
    p.add_argument("metrics_csv")
    p.add_argument("defects_csv")
    p.add_argument("--out", help="directory for regression.txt and coefficients.csv")
    p.add_argument("--format", choices=("text", "csv"), default="text")
    p.set_defaults(func=cmd_regress)

    p = sub.add_parser("predict", help="score modules with a coefficient file")
    p.add_argument("model_csv")
    p.add_argument("metrics_csv")
    p.add_argument("--history", help="defects CSV used for the hours-per-defect rate")
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("report-paper", help="regenerate every table from the bundled dataset")
    p.add_argument("--out", default="reference_tables")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_report_paper)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CKError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        return e.exit_status
    except OSError as e:
        print(f"error[IOError]: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
