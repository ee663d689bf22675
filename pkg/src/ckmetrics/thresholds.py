"""Threshold-region analysis.

Each metric's range is cut at a vendor threshold and/or the dataset mean.
Every region gets a defect density (summed defects over summed metric
value), and the region with the lowest density is recommended.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .errors import AllUndefined, MissingDefects
from .model import METRICS

# Published cut points per tool.  A (lo, hi) pair is an acceptable range.
VENDOR_THRESHOLDS = {
    "rosenberg-nasa": {"wmc": 40, "dit": 6, "cbo": 5, "rfc": 100},
    "sd-metrics": {"dit": (0, 3), "cbo": (0, 31), "rfc": (3, 365)},
    "togethersoft": {"wmc": 100, "dit": 4, "cbo": 30},
    "objecteering": {"wmc": (3, 7), "dit": (0, 4), "noc": (1, 4), "cbo": (1, 4)},
    "cantata++": {},
}

# Vendor the reference study compared each metric against.
REFERENCE_VENDOR = {"cbo": "togethersoft", "dit": "togethersoft", "wmc": "togethersoft",
                "rfc": "sd-metrics"}

VENDOR_MEAN = "VENDOR+MEAN"
MEAN_ONLY = "MIN+MEAN+MAX"
USER = "USER"


def vendor_cut(vendor: str, metric: str):
    """Single cut value a vendor provides for ``metric`` (upper end of a range), or None."""
    try:
        table = VENDOR_THRESHOLDS[vendor.lower()]
    except KeyError:
        raise ValueError(
            f"unknown vendor {vendor!r}; choose from {', '.join(VENDOR_THRESHOLDS)}"
        ) from None
    bound = table.get(metric)
    if isinstance(bound, tuple):
        return float(bound[1])
    return None if bound is None else float(bound)


@dataclass(frozen=True)
class CutSpec:
    metric: str
    cuts: tuple[float, ...]
    provenance: str
    vendor: str | None = None
    labels: tuple[str, ...] = ()
    out_of_range: tuple[bool, ...] = ()

    @property
    def c1(self):
        return self.cuts[0]

    @property
    def c2(self):
        return self.cuts[1] if len(self.cuts) > 1 else None


def _mean(values):
    return math.fsum(values) / len(values)


def make_cuts(metric, values, cuts, provenance=USER, vendor=None, labels=None) -> CutSpec:
    """Sort, de-duplicate (c1 == c2 collapses to one cut) and range-check cuts."""
    pairs = sorted({float(c): lab for c, lab in zip(cuts, labels or ["user"] * len(cuts))}.items())
    if not 1 <= len(pairs) <= 2:
        raise ValueError(f"{metric}: need one or two cut values, got {len(pairs)}")
    lo, hi = min(values), max(values)
    return CutSpec(
        metric=metric,
        cuts=tuple(c for c, _ in pairs),
        provenance=provenance,
        vendor=vendor,
        labels=tuple(lab for _, lab in pairs),
        out_of_range=tuple(not (lo <= c <= hi) for c, _ in pairs),
    )


def default_cuts(metric, rows, vendor: str | None = "reference") -> CutSpec:
    """Vendor threshold plus dataset mean, or the mean alone when the vendor
    has nothing for this metric.

    ``vendor="reference"`` picks the vendor the reference study used per metric;
    ``None`` forces the mean-only split.
    """
    values = [r.value(metric) for r in rows]
    if not values:
        raise ValueError("default_cuts needs at least one row")
    mean = _mean(values)
    if vendor == "reference":
        vendor = REFERENCE_VENDOR.get(metric)
    vc = vendor_cut(vendor, metric) if vendor else None
    if vc is None:
        return make_cuts(metric, values, [mean], MEAN_ONLY, None, ["mean"])
    return make_cuts(metric, values, [vc, mean], VENDOR_MEAN, vendor, [vendor, "mean"])


@dataclass(frozen=True)
class Bin:
    lo: float
    hi: float
    closed_hi: bool
    members: tuple[str, ...]
    defect_sum: int
    metric_sum: int

    @property
    def ratio(self) -> float | None:
        if not self.members or self.metric_sum == 0:
            return None
        return self.defect_sum / self.metric_sum

    @property
    def exact_ratio(self) -> Fraction | None:
        if not self.members or self.metric_sum == 0:
            return None
        return Fraction(self.defect_sum, self.metric_sum)

    def interval(self):
        return f"[{fmt_value(self.lo)}, {fmt_value(self.hi)}{']' if self.closed_hi else ')'}"

    def range_text(self, metric):
        return f"{fmt_value(self.lo)} < {metric.upper()} < {fmt_value(self.hi)}"


@dataclass(frozen=True)
class RegionReport:
    metric: str
    cuts: CutSpec
    bins: tuple[Bin, ...]
    recommended: int | None = field(default=None)

    @property
    def total_defects(self):
        return sum(b.defect_sum for b in self.bins)


def fmt_value(v) -> str:
    """Integers bare, anything else at two decimals."""
    v = float(v)
    return str(int(v)) if v == int(v) else f"{v:.2f}"


def fmt_ratio(r) -> str:
    return "undefined" if r is None else f"{r:.2f}"


def partition(metric_rows, defect_rows, metric, cuts: CutSpec) -> RegionReport:
    """Bins [min, c1), [c1, c2), [c2, max]; a value on a cut goes up."""
    defects = {d.module: d.defects for d in defect_rows}
    for r in metric_rows:
        if r.module not in defects:
            raise MissingDefects(r.module)
    values = [r.value(metric) for r in metric_rows]
    lo, hi = min(values), max(values)
    edges = [lo, *cuts.cuts, hi]
    groups = [[] for _ in cuts.cuts] + [[]]
    for r in metric_rows:
        k = sum(1 for c in cuts.cuts if r.value(metric) >= c)
        groups[k].append(r)
    bins = []
    for k, members in enumerate(groups):
        bins.append(
            Bin(
                lo=edges[k],
                hi=edges[k + 1],
                closed_hi=k == len(groups) - 1,
                members=tuple(r.module for r in members),
                defect_sum=sum(defects[r.module] for r in members),
                metric_sum=sum(r.value(metric) for r in members),
            )
        )
    report = RegionReport(metric, cuts, tuple(bins))
    try:
        rec = recommend(report)
    except AllUndefined:
        rec = None
    return RegionReport(metric, cuts, tuple(bins), rec)


def region_ratio(b: Bin) -> float | None:
    return b.ratio


def recommend(report: RegionReport) -> int:
    """Index of the bin with the smallest defined ratio; ties go to the lower bin."""
    best = None
    for k, b in enumerate(report.bins):
        r = b.exact_ratio
        if r is not None and (best is None or r < report.bins[best].exact_ratio):
            best = k
    if best is None:
        raise AllUndefined(f"{report.metric}: no region has a defined ratio")
    return best


def recommendation_text(report: RegionReport) -> str:
    if report.recommended is None:
        return "undefined"
    b = report.bins[report.recommended]
    return b.range_text(report.metric)


def analyze(metric_rows, defect_rows, metrics=METRICS, cut_specs=None, vendor="reference"):
    """Region report for each metric, keyed by metric name."""
    out = {}
    for m in metrics:
        cuts = (cut_specs or {}).get(m) or default_cuts(m, metric_rows, vendor)
        out[m] = partition(metric_rows, defect_rows, m, cuts)
    return out


# -- published listings, for the errata comparison -------------------------

@dataclass(frozen=True)
class PublishedBin:
    members: tuple[str, ...]
    defect_sum: int
    metric_sum: int
    ratio_text: str


def _mods(*ids):
    return tuple(f"M{i}" for i in ids)


PUBLISHED_LISTINGS = {
    "cbo": (
        PublishedBin(_mods(2, 3, 4, 5, 6, 7, 10, 13, 15, 17, 18), 260, 742, "0.35"),
        PublishedBin((), 0, 0, ""),
        PublishedBin(_mods(1, 8, 9, 11, 12, 14, 16), 477, 321, "1.49"),
    ),
    "dit": (
        PublishedBin(_mods(1, 2, 3, 4, 5, 6, 8, 9), 847, 24, "35.29"),
        PublishedBin((), 0, 0, ""),
        PublishedBin(_mods(7, 10, 11, 12, 13, 14, 15, 16, 17, 18), 372, 59, "6.31"),
    ),
    "lcom": (
        PublishedBin(_mods(3, 7, 9, 10, 11, 12, 13, 15, 16, 17, 18), 751, 12730, "0.06"),
        PublishedBin(_mods(1, 2, 4, 5, 6, 8, 14), 468, 61425, "0.01"),
    ),
    "noc": (
        PublishedBin(_mods(5, 6, 7, 10, 12, 13, 15, 16, 17, 18), 617, 243, "2.54"),
        PublishedBin(_mods(1, 2, 3, 4, 8, 9, 11, 14), 602, 987, "0.61"),
    ),
    "rfc": (
        PublishedBin(_mods(1, 3, 5, 6, 9, 10, 11, 13, 15), 680, 1394, "0.48"),
        PublishedBin(_mods(2, 4, 8, 14), 335, 1210, "0.28"),
        PublishedBin(_mods(7, 12, 16, 17, 18), 204, 1971, "0.1"),
    ),
    "wmc": (
        PublishedBin(_mods(12, 18), 51, 141, "0.36"),
        PublishedBin(_mods(1, 3, 7, 9, 10, 11, 13, 15, 16), 651, 3346, "0.05"),
        PublishedBin(_mods(2, 4, 5, 6, 8, 14, 17), 517, 7145, "0.07"),
    ),
}

# Published summary: (bin index, range as printed, density as printed)
PUBLISHED_SUMMARY = {
    "cbo": (0, "0 < CBO < 30", "0.35"),
    "dit": (2, "4.61 < DIT < 7", "6.31"),
    "lcom": (1, "4119.72 < LCOM < 12132.00", "0.01"),
    "noc": (1, "68.33 < NOC < 238.00", "0.61"),
    "rfc": (2, "365 < RFC < 425", "0.1"),
    "wmc": (1, "100 < WMC < 590.67", "0.05"),
}


@dataclass(frozen=True)
class Erratum:
    metric: str
    bin: int
    kinds: tuple[str, ...]
    printed: str
    computed: str

    def line(self):
        return (f"{self.metric.upper()} region {self.bin + 1}: {', '.join(self.kinds)}; "
                f"printed {self.printed}; computed {self.computed}")


def _printed_ratio_ok(pb: PublishedBin) -> bool:
    """Printed density agrees with printed X/Y to within one unit of its last digit."""
    if not pb.ratio_text or pb.metric_sum == 0:
        return True
    decimals = len(pb.ratio_text.split(".")[1]) if "." in pb.ratio_text else 0
    return abs(pb.defect_sum / pb.metric_sum - float(pb.ratio_text)) < 10 ** -decimals


def _describe_published(pb: PublishedBin):
    if not pb.members:
        return "no modules"
    return f"{pb.defect_sum}/{pb.metric_sum} = {pb.ratio_text} over {','.join(pb.members)}"


def _describe_bin(b: Bin):
    if not b.members:
        return "no modules"
    return f"{b.defect_sum}/{b.metric_sum} = {b.ratio:.3f} over {','.join(b.members)}"


def compare_with_published(reports) -> list[Erratum]:
    """Bin-by-bin differences between recomputed regions and the published listings."""
    out = []
    for metric, report in reports.items():
        listing = PUBLISHED_LISTINGS.get(metric)
        if listing is None:
            continue
        if len(listing) != len(report.bins):
            out.append(Erratum(metric, 0, ("region-count",),
                               f"{len(listing)} regions", f"{len(report.bins)} regions"))
            continue
        for k, (pb, b) in enumerate(zip(listing, report.bins)):
            kinds = []
            if set(pb.members) != set(b.members):
                kinds.append("membership")
            if (pb.defect_sum, pb.metric_sum) == (b.metric_sum, b.defect_sum) and (
                pb.defect_sum != pb.metric_sum
            ):
                kinds.append("transposed-sums")
            else:
                if pb.defect_sum != b.defect_sum:
                    kinds.append("defect-sum")
                if pb.metric_sum != b.metric_sum:
                    kinds.append("metric-sum")
            if not _printed_ratio_ok(pb):
                kinds.append("arithmetic")
            if kinds:
                out.append(Erratum(metric, k, tuple(kinds), _describe_published(pb), _describe_bin(b)))
    return out


def recommendation_changes(reports) -> dict[str, tuple[str, str]]:
    """Metrics whose recomputed recommendation differs from the published one:
    metric -> (published range, recomputed range)."""
    out = {}
    for metric, report in reports.items():
        if metric not in PUBLISHED_SUMMARY:
            continue
        k, text, _ = PUBLISHED_SUMMARY[metric]
        if report.recommended != k:
            out[metric] = (text, recommendation_text(report))
    return out


# -- output --------------------------------------------------------------

def region_report_text(reports) -> str:
    blocks = []
    for metric, rep in reports.items():
        cut_desc = ", ".join(
            f"{fmt_value(c)} ({lab}{', out of range' if oor else ''})"
            for c, lab, oor in zip(rep.cuts.cuts, rep.cuts.labels or ("",) * 2,
                                   rep.cuts.out_of_range or (False,) * 2)
        )
        lines = [f"{metric.upper()}  cuts: {cut_desc}"]
        for b in rep.bins:
            members = ", ".join(b.members) if b.members else "(no modules)"
            lines.append(
                f"  {b.range_text(metric):<28} {b.interval():<20} X={b.defect_sum:<5} "
                f"Y={b.metric_sum:<6} X/Y={fmt_ratio(b.ratio):<9} {members}"
            )
        if rep.recommended is None:
            lines.append("  recommended: none (no region has a defined ratio)")
        else:
            b = rep.bins[rep.recommended]
            lines.append(f"  recommended: {b.range_text(metric)}  "
                         f"({fmt_ratio(b.ratio)}/{metric.upper()})")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def summary_text(reports) -> str:
    """Recomputed counterpart of the published summary table."""
    lines = [f"{'Metric':<8}{'Finding':<32}{'Defect':<14}{'Published':<36}{'Agrees'}"]
    for metric, rep in reports.items():
        if rep.recommended is None:
            finding, dens = "undefined", ""
        else:
            b = rep.bins[rep.recommended]
            finding, dens = b.range_text(metric), f"{fmt_ratio(b.ratio)}/{metric.upper()}"
        pub = PUBLISHED_SUMMARY.get(metric)
        pub_text = f"{pub[1]} ({pub[2]})" if pub else "-"
        agree = "-" if pub is None else ("yes" if rep.recommended == pub[0] else "no")
        lines.append(f"{metric.upper():<8}{finding:<32}{dens:<14}{pub_text:<36}{agree}")
    return "\n".join(lines) + "\n"


def errata_text(reports, applicable=True) -> str:
    if not applicable:
        return ("Errata: not applicable (input is not the bundled reference dataset "
                "with default cuts).\n")
    errata = compare_with_published(reports)
    lines = [f"Errata: {len(errata)} region listing(s) disagree with recomputation"]
    lines += ["  " + e.line() for e in errata]
    changes = recommendation_changes(reports)
    lines.append(f"Recommendation changes: {len(changes)}")
    for metric, (pub, new) in changes.items():
        lines.append(f"  {metric.upper()}: published {pub}; recomputed {new}")
    return "\n".join(lines) + "\n"


def regions_csv_text(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", "bin", "lo", "hi", "closed_hi", "members", "defect_sum",
                "metric_sum", "ratio", "recommended"])
    for metric, rep in reports.items():
        for k, b in enumerate(rep.bins):
            w.writerow([metric, k, repr(float(b.lo)), repr(float(b.hi)), int(b.closed_hi),
                        ";".join(b.members), b.defect_sum, b.metric_sum,
                        "" if b.ratio is None else repr(b.ratio), int(rep.recommended == k)])
    return buf.getvalue()


def write_plot_data(reports, metric_rows, out_dir) -> list[Path]:
    """``<metric>.dat`` (module index, value) and ``<metric>.cuts`` per metric."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for metric, rep in reports.items():
        dat = out / f"{metric}.dat"
        dat.write_text(
            "".join(f"{i} {r.value(metric)}\n" for i, r in enumerate(metric_rows, start=1))
        )
        cuts = out / f"{metric}.cuts"
        cuts.write_text("".join(f"{c!r}\n" for c in rep.cuts.cuts))
        written += [dat, cuts]
    return written
