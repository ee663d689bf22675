import json
import subprocess
import sys

import pytest

from ckmetrics.cli import main
from ckmetrics.reference import fixture_path

T4M = str(fixture_path("table4_metrics.csv"))
T4D = str(fixture_path("table4_defects.csv"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_then_metrics(tmp_path, capsys, toy_dir):
    model = tmp_path / "model.json"
    code, _, _ = run(capsys, "parse", str(toy_dir), "--modules", str(fixture_path("toy_modules.csv")),
                     "--out", str(model))
    assert code == 0
    assert len(json.loads(model.read_text())["classes"]) == 7
    code, out, _ = run(capsys, "metrics", str(model))
    assert code == 0
    assert out == fixture_path("toy_expected_metrics.csv").read_text()


def test_default_module_map_uses_directories(capsys, toy_dir):
    code, out, _ = run(capsys, "parse", str(toy_dir))
    assert code == 0
    doc = json.loads(out)
    assert doc["modules"]["Bank"] == "bank"


def test_agg_override(tmp_path, capsys, toy_dir):
    model = tmp_path / "m.json"
    run(capsys, "parse", str(toy_dir), "--out", str(model))
    code, out, _ = run(capsys, "metrics", str(model), "--agg", "wmc=max")
    assert code == 0
    assert "bank,8,0,6,0,16,5" in out.splitlines()
    code, _, err = run(capsys, "metrics", str(model), "--agg", "wmc")
    assert code == 2 and err.startswith("error[")


def test_regions_text_and_csv(tmp_path, capsys):
    code, out, _ = run(capsys, "regions", T4M, T4D, "--out", str(tmp_path))
    assert code == 0 and "Errata:" in out
    assert {p.name for p in tmp_path.iterdir()} == {"regions.txt", "regions.csv", "errata.txt", "plots"}
    code, out, _ = run(capsys, "regions", T4M, T4D, "--format", "csv", "--metric", "dit")
    assert out.splitlines()[0].startswith("metric,bin,")
    assert len(out.splitlines()) == 4


def test_user_cuts_switch_off_errata(capsys):
    code, out, _ = run(capsys, "regions", T4M, T4D, "--thresholds", "cbo:user:30,32")
    assert code == 0
    assert "32 < CBO < 65" in out
    assert "not applicable" in out


def test_regress_and_predict(tmp_path, capsys):
    code, out, _ = run(capsys, "regress", T4M, T4D, "--out", str(tmp_path))
    assert code == 0 and "ANOVA" in out.upper()
    coef = tmp_path / "coefficients.csv"
    code, out, _ = run(capsys, "predict", str(coef), T4M, "--history", T4D)
    assert code == 0
    rows = out.splitlines()
    assert len(rows) == 19 and rows[1].startswith("M1,")


def test_report_paper_files(tmp_path, capsys):
    code, _, _ = run(capsys, "report-paper", "--out", str(tmp_path), "--quiet")
    assert code == 0
    names = {p.name for p in tmp_path.iterdir()}
    assert names == {
        "Table5.txt", "Table5.csv", "regions.txt", "regions.csv", "Table6_recomputed.txt",
        "errata.txt", "plots", "Table7.txt", "Table8.txt", "Table9.txt", "coefficients.csv",
    }
    assert len(list((tmp_path / "plots").iterdir())) == 12


def test_outputs_are_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a", tmp_path / "b"
    run(capsys, "report-paper", "--out", str(a), "--quiet")
    run(capsys, "report-paper", "--out", str(b), "--quiet")
    for p in a.rglob("*"):
        if p.is_file():
            assert p.read_bytes() == (b / p.relative_to(a)).read_bytes()


def test_no_sources(tmp_path, capsys):
    code, _, err = run(capsys, "parse", str(tmp_path))
    assert code == 2
    assert err.startswith("error[NoSources]") and err.count("\n") == 1


def test_parse_error_reports_position(tmp_path, capsys):
    (tmp_path / "pkg").mkdir()
    (tmp_path / "pkg" / "Bad.java").write_text("class Bad {\n  void m( {}\n}\n")
    code, _, err = run(capsys, "parse", str(tmp_path))
    assert code == 2
    assert "Bad.java:2:" in err and err.count("\n") == 1


def test_unmapped_class(tmp_path, capsys, toy_dir):
    partial = tmp_path / "mods.csv"
    partial.write_text("class,module\nAccount,accounts\n")
    code, _, err = run(capsys, "parse", str(toy_dir), "--modules", str(partial))
    assert code == 2 and "Unmapped" in err


def test_singular_design_exits_3(tmp_path, capsys):
    m = tmp_path / "m.csv"
    d = tmp_path / "d.csv"
    lines = ["module,cbo,dit,lcom,noc,rfc,wmc"]
    lines += [f"M{i},{i},1,{i * i},{i % 3},{2 * i},{i + 7}" for i in range(1, 12)]
    m.write_text("\n".join(lines) + "\n")
    d.write_text("module,defects\n" + "".join(f"M{i},{i * 3}\n" for i in range(1, 12)))
    code, _, err = run(capsys, "regress", str(m), str(d))
    assert code == 3 and err.startswith("error[SingularMatrix]")


def test_too_few_rows_exits_3(tmp_path, capsys):
    m = tmp_path / "m.csv"
    d = tmp_path / "d.csv"
    m.write_text("module,cbo,dit,lcom,noc,rfc,wmc\nA,1,2,3,4,5,6\nB,2,3,4,5,6,8\n")
    d.write_text("module,defects\nA,1\nB,2\n")
    code, _, _ = run(capsys, "regress", str(m), str(d))
    assert code == 3


def test_missing_defects_row(tmp_path, capsys):
    d = tmp_path / "d.csv"
    d.write_text("module,defects\nM1,3\n")
    code, _, err = run(capsys, "regions", T4M, str(d))
    assert code == 2 and "MissingDefects" in err


def test_bad_defects_header(tmp_path, capsys):
    d = tmp_path / "d.csv"
    d.write_text("mod,bugs\nM1,3\n")
    code, _, err = run(capsys, "regions", T4M, str(d))
    assert code == 2 and err.startswith("error[SchemaError]")


def test_missing_file(capsys):
    code, _, err = run(capsys, "regress", "/nonexistent/m.csv", T4D)
    assert code == 2 and err.count("\n") == 1


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ckmetrics.cli", "regress", T4M, T4D, "--format", "csv"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "term,B,std_error,beta,t,p"


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as e:
        main(["regions"])
    assert e.value.code == 2


def test_metric_scoped_thresholds_beat_global(capsys):
    for order in (["cbo:user:30,32", "none"], ["none", "cbo:user:30,32"]):
        argv = ["regions", T4M, T4D, "--format", "csv"]
        for item in order:
            argv += ["--thresholds", item]
        code, out, _ = run(capsys, *argv)
        assert code == 0
        rows = [r.split(",") for r in out.splitlines()[1:]]
        assert sum(1 for r in rows if r[0] == "cbo") == 3
        assert sum(1 for r in rows if r[0] == "dit") == 2
