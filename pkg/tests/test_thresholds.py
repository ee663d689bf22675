import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ckmetrics.errors import AllUndefined, MissingDefects
from ckmetrics.model import METRICS, DefectRow, MetricsRow
from ckmetrics.thresholds import (
    MEAN_ONLY,
    VENDOR_MEAN,
    Bin,
    RegionReport,
    analyze,
    compare_with_published,
    default_cuts,
    errata_text,
    make_cuts,
    partition,
    recommend,
    recommendation_text,
    region_report_text,
    vendor_cut,
    write_plot_data,
)
from oracles import oracle_bins, oracle_recommendation
from strategies import module_tables


def rows_of(values, defects):
    rows = [MetricsRow(f"M{i}", cbo=v, dit=0, lcom=0, noc=0, rfc=0, wmc=0)
            for i, v in enumerate(values, 1)]
    return rows, [DefectRow(f"M{i}", d) for i, d in enumerate(defects, 1)]


def test_default_cuts_cbo(t4_metrics):
    c = default_cuts("cbo", t4_metrics)
    assert c.provenance == VENDOR_MEAN and c.c1 == 30
    assert c.c2 == pytest.approx(32.28, abs=0.005)


def test_default_cuts_dit(t4_metrics):
    c = default_cuts("dit", t4_metrics)
    assert (c.c1, round(c.c2, 2)) == (4, 4.61)


def test_default_cuts_lcom_mean_only(t4_metrics):
    c = default_cuts("lcom", t4_metrics)
    assert c.provenance == MEAN_ONLY and len(c.cuts) == 1
    assert c.c1 == pytest.approx(4119.72, abs=0.005)


def test_vendor_choice(t4_metrics):
    assert default_cuts("rfc", t4_metrics).c2 == 365
    assert default_cuts("cbo", t4_metrics, vendor="rosenberg-nasa").c1 == 5
    assert default_cuts("cbo", t4_metrics, vendor=None).provenance == MEAN_ONLY
    assert vendor_cut("cantata++", "cbo") is None


def test_dit_partition(t4_metrics, t4_defects):
    rep = partition(t4_metrics, t4_defects, "dit", default_cuts("dit", t4_metrics))
    assert set(rep.bins[0].members) == {"M1", "M2", "M3", "M4", "M5", "M6", "M8", "M9"}
    assert rep.bins[1].members == ()
    assert len(rep.bins[2].members) == 10
    assert (rep.bins[0].defect_sum, rep.bins[0].metric_sum) == (847, 24)
    assert recommendation_text(rep) == "4.61 < DIT < 7"


def test_rfc_upper_bin(t4_metrics, t4_defects):
    rep = partition(t4_metrics, t4_defects, "rfc", default_cuts("rfc", t4_metrics))
    assert set(rep.bins[2].members) == {"M7", "M12", "M16", "M17", "M18"}
    assert recommendation_text(rep) == "365 < RFC < 425"


def test_value_on_cut_goes_up():
    rows, defects = rows_of([1, 5, 9], [1, 1, 1])
    rep = partition(rows, defects, "cbo", make_cuts("cbo", [1, 5, 9], [5]))
    assert rep.bins[0].members == ("M1",) and rep.bins[1].members == ("M2", "M3")


def test_min_in_lower_and_max_in_upper():
    rows, defects = rows_of([2, 4, 6, 8], [1, 1, 1, 1])
    rep = partition(rows, defects, "cbo", make_cuts("cbo", [2, 8], [3, 7]))
    assert [b.members for b in rep.bins] == [("M1",), ("M2", "M3"), ("M4",)]
    assert rep.bins[-1].closed_hi and not rep.bins[0].closed_hi


def test_equal_cuts_collapse():
    c = make_cuts("cbo", [1, 10], [4, 4])
    assert c.cuts == (4.0,)


def test_out_of_range_cut_is_flagged():
    c = make_cuts("cbo", [10, 20], [5, 15])
    assert c.out_of_range == (True, False)


def test_ratio_undefined_for_empty_or_zero_bins():
    assert Bin(0, 1, False, (), 0, 0).ratio is None
    assert Bin(0, 1, False, ("M1",), 3, 0).ratio is None
    assert Bin(0, 1, False, ("M1",), 3, 4).ratio == 0.75


def test_recommend_tie_goes_low():
    bins = (Bin(0, 1, False, ("A",), 1, 2), Bin(1, 2, True, ("B",), 2, 4))
    assert recommend(RegionReport("cbo", None, bins)) == 0


def test_recommend_all_undefined():
    bins = (Bin(0, 1, False, (), 0, 0), Bin(1, 2, True, ("B",), 2, 0))
    with pytest.raises(AllUndefined):
        recommend(RegionReport("cbo", None, bins))


def test_missing_defects():
    rows, _ = rows_of([1, 2], [])
    with pytest.raises(MissingDefects):
        partition(rows, [DefectRow("M1", 0)], "cbo", make_cuts("cbo", [1, 2], [1.5]))


def test_wmc_flips_to_upper_region(t4_metrics, t4_defects):
    rep = analyze(t4_metrics, t4_defects)["wmc"]
    mid = rep.bins[1]
    assert (mid.defect_sum, mid.metric_sum) == (651, 3346)
    assert round(mid.ratio, 3) == 0.195
    assert rep.recommended == 2


@pytest.mark.parametrize("metric", METRICS)
def test_bins_agree_with_summation_oracle(metric, t4_metrics, t4_defects):
    rep = analyze(t4_metrics, t4_defects)[metric]
    expected = oracle_bins(metric, t4_metrics, t4_defects)
    got = [(set(b.members), b.defect_sum, b.metric_sum) for b in rep.bins]
    assert got == expected
    assert rep.recommended == oracle_recommendation(expected)


def test_errata_kinds(t4_metrics, t4_defects):
    errata = {(e.metric, e.bin): e.kinds for e in compare_with_published(analyze(t4_metrics, t4_defects))}
    assert errata[("cbo", 0)] == ("transposed-sums",)
    assert errata[("lcom", 0)] == ("defect-sum",)
    assert errata[("noc", 1)] == ("defect-sum",)
    assert errata[("wmc", 1)] == ("arithmetic",)
    assert not any(m in ("dit", "rfc") for m, _ in errata)


def test_errata_not_applicable_text():
    assert "not applicable" in errata_text({}, applicable=False)


def test_report_text_mentions_every_metric(t4_metrics, t4_defects):
    text = region_report_text(analyze(t4_metrics, t4_defects))
    for m in METRICS:
        assert m.upper() + "  cuts:" in text
    assert "recommended:" in text


def test_plot_files(tmp_path, t4_metrics, t4_defects):
    reports = analyze(t4_metrics, t4_defects, ["cbo"])
    write_plot_data(reports, t4_metrics, tmp_path)
    dat = (tmp_path / "cbo.dat").read_text().splitlines()
    assert len(dat) == 18 and dat[0] == "1 65"
    assert [float(x) for x in (tmp_path / "cbo.cuts").read_text().split()] == list(
        reports["cbo"].cuts.cuts
    )


@settings(max_examples=200, deadline=None)
@given(module_tables(), st.sampled_from(METRICS), st.randoms(use_true_random=False))
def test_reordering_keeps_ratios(tables, metric, rnd):
    rows, defects = tables
    cuts = default_cuts(metric, rows)
    before = partition(rows, defects, metric, cuts)
    shuffled = list(rows)
    rnd.shuffle(shuffled)
    after = partition(shuffled, defects, metric, cuts)
    assert [b.exact_ratio for b in after.bins] == [b.exact_ratio for b in before.bins]
    assert after.recommended == before.recommended


@settings(max_examples=200, deadline=None)
@given(module_tables(), st.integers(0, 500))
def test_collapsed_cuts_match_single_cut(tables, c):
    rows, defects = tables
    values = [r.cbo for r in rows]
    merged = partition(rows, defects, "cbo", make_cuts("cbo", values, [c, c]))
    single = partition(rows, defects, "cbo", make_cuts("cbo", values, [c]))
    assert merged.bins == single.bins
    assert merged.total_defects == sum(d.defects for d in defects)


def test_random_reorder_of_fixture(t4_metrics, t4_defects):
    rows = list(t4_metrics)
    random.Random(11).shuffle(rows)
    a = analyze(rows, t4_defects)
    b = analyze(t4_metrics, t4_defects)
    assert {m: r.recommended for m, r in a.items()} == {m: r.recommended for m, r in b.items()}
