#!/usr/bin/env python3
"""How the CBO regions move as the upper cut slides between the vendor
threshold and the dataset mean.

The published CBO listing puts M12 (CBO = 32) in the top region, which
needs an upper cut at or below 32; the dataset mean is 32.28.
"""
import sys

from ckmetrics.reference import table4_defects, table4_metrics
from ckmetrics.thresholds import fmt_ratio, make_cuts, partition


def main():
    rows, defects = table4_metrics(), table4_defects()
    values = [r.cbo for r in rows]
    mean = sum(values) / len(values)
    print(f"dataset mean CBO = {mean:.4f}")
    print(f"{'c2':>8}  " + "  ".join(f"{'region ' + str(k + 1):>24}" for k in range(3)))
    for c2 in (31.0, 32.0, mean, 33.0, 34.0):
        rep = partition(rows, defects, "cbo", make_cuts("cbo", values, [30, c2]))
        cells = [f"{b.defect_sum}/{b.metric_sum}={fmt_ratio(b.ratio)}" for b in rep.bins]
        print(f"{c2:>8.2f}  " + "  ".join(f"{c:>24}" for c in cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
