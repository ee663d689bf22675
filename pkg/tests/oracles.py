"""Region sums computed without the threshold module.

Cut values are hard-coded vendor numbers plus a plain arithmetic mean; bin
membership comes from ``bisect`` (a value equal to a cut lands above it).
"""
from bisect import bisect_right
from fractions import Fraction
from statistics import fmean

VENDOR = {"cbo": 30, "dit": 4, "wmc": 100, "rfc": 365}


def oracle_cuts(metric, rows):
    mean = fmean(getattr(r, metric) for r in rows)
    cuts = {mean} if metric not in VENDOR else {mean, VENDOR[metric]}
    return sorted(cuts)


def oracle_bins(metric, rows, defects, cuts=None):
    """[(members, defect_sum, metric_sum)] per bin."""
    cuts = oracle_cuts(metric, rows) if cuts is None else sorted(set(cuts))
    per_module = {d.module: d.defects for d in defects}
    bins = [[] for _ in range(len(cuts) + 1)]
    for r in rows:
        bins[bisect_right(cuts, getattr(r, metric))].append(r)
    return [
        (
            {r.module for r in b},
            sum(per_module[r.module] for r in b),
            sum(getattr(r, metric) for r in b),
        )
        for b in bins
    ]


def oracle_recommendation(bins):
    ratios = [(Fraction(x, y), k) for k, (m, x, y) in enumerate(bins) if m and y]
    return min(ratios)[1] if ratios else None
