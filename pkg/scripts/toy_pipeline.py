#!/usr/bin/env python3
"""Parse the bundled toy codebase, aggregate module metrics and diff them
against the hand-counted table."""
import csv
import sys
import time

from ckmetrics.metrics import aggregate_modules, compute_all
from ckmetrics.model import METRICS
from ckmetrics.parser import build_class_model, find_sources, parse_files, read_module_map
from ckmetrics.reference import fixture_path


def load_expected(name, key):
    with open(fixture_path(name), newline="") as fh:
        return {r[key]: [int(r[m]) for m in METRICS] for r in csv.DictReader(fh)}


def main():
    t0 = time.perf_counter()
    root = fixture_path("toy_src")
    units = parse_files(find_sources(root), root=root, jobs=4)
    model = build_class_model(units, read_module_map(fixture_path("toy_modules.csv")))

    per_class = {n: [cm.value(m) for m in METRICS] for n, cm in compute_all(model).items()}
    per_module = {r.module: [r.value(m) for m in METRICS] for r in aggregate_modules(model)}
    elapsed = time.perf_counter() - t0

    bad = 0
    for label, got, want in (
        ("class", per_class, load_expected("toy_expected_class_metrics.csv", "class")),
        ("module", per_module, load_expected("toy_expected_metrics.csv", "module")),
    ):
        print(f"{label:<16}" + "".join(f"{m.upper():>6}" for m in METRICS))
        for name in sorted(want):
            flag = "" if got.get(name) == want[name] else "   <-- expected " + str(want[name])
            bad += bool(flag)
            print(f"{name:<16}" + "".join(f"{v:>6}" for v in got.get(name, [])) + flag)
        print()
    print(f"{len(model.classes)} classes, {len(per_module)} modules, {elapsed * 1000:.1f} ms")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
