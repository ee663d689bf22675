#!/usr/bin/env python3
"""Regenerate the published tables from the bundled 18-module dataset and
print the headline numbers next to the printed ones."""
import argparse
import sys
from pathlib import Path

from ckmetrics.cli import main as cli_main
from ckmetrics.reference import table4_defects, table4_metrics
from ckmetrics.stats import design_matrix, ols_fit
from ckmetrics.thresholds import analyze, compare_with_published, recommendation_changes

PRINTED = {"R2": 0.688, "adj R2": 0.519, "SEE": 50.366, "F": 4.052, "Sig F": 0.022}


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="reference_tables", type=Path)
    args = ap.parse_args(argv)

    code = cli_main(["report-paper", "--out", str(args.out), "--quiet"])
    if code:
        return code

    rows, defects = table4_metrics(), table4_defects()
    res = ols_fit(design_matrix(rows, defects))
    ours = {"R2": res.r2, "adj R2": res.adj_r2, "SEE": res.std_error_estimate,
            "F": res.anova.f_value, "Sig F": res.anova.f_pvalue}
    print(f"{'statistic':<10}{'printed':>10}{'recomputed':>14}")
    for k, v in PRINTED.items():
        print(f"{k:<10}{v:>10.3f}{ours[k]:>14.5f}")

    reports = analyze(rows, defects)
    errata = compare_with_published(reports)
    print(f"\n{len(errata)} region listings disagree with recomputation:")
    for e in errata:
        print("  " + e.line())
    for metric, (pub, new) in recommendation_changes(reports).items():
        print(f"  {metric.upper()} recommendation: printed {pub}, recomputed {new}")
    print(f"\nall tables written under {args.out}/")
    return 0


if __name__ == "__main__":
    sys.exit(main())
