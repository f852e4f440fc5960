import csv
import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from twochoices.dynamics import Mode, Outcome, TrialOutcome
from twochoices.harness import (ExperimentConfig, ExperimentReport, classify, load_reports, run_experiment,
                                scatter_data, write_outputs, write_scatter)

TABLE = Path(__file__).parent / "data" / "table1.csv"


def outcomes(**counts):
    rounds = {"C": 7, "P": 9, "M": 100}
    return [TrialOutcome(Outcome(k), rounds[k], 0) for k, c in counts.items() for _ in range(c)]


def test_classify_all_core():
    assert classify(outcomes(C=50)) == (1, 0, 0, 7)


def test_classify_mixed():
    f_c, f_p, f_m, mean = classify(outcomes(C=46, P=4))
    assert (float(f_c), float(f_p), float(f_m)) == (0.92, 0.08, 0.0)
    assert f_c + f_p + f_m == 1
    f_c, f_p, f_m, mean = classify(outcomes(C=25, M=25))
    assert (f_c, f_p, f_m) == (Fraction(1, 2), 0, Fraction(1, 2))
    assert mean == Fraction(25 * 7 + 25 * 100, 50)


def test_classify_empty():
    with pytest.raises(ValueError):
        classify([])


def table_reports():
    with open(TABLE) as fh:
        return [ExperimentReport(dataset=r["dataset"], c_d=float(r["c_d"]), frac_C=float(r["frac_C"]),
                                 frac_P=float(r["frac_P"]), frac_M=float(r["frac_M"]))
                for r in csv.DictReader(fh)]


def test_scatter_on_published_table():
    reports = table_reports()
    assert len(reports) == 70
    rows, summary = scatter_data(reports)
    assert len(rows) == 70
    assert summary["metastable_below_sigma"] == pytest.approx(13 / 15)
    assert summary["consensus_above_sigma"] == pytest.approx(45 / 55)
    assert math.floor(100 * summary["metastable_below_sigma"]) == 86
    assert math.floor(100 * summary["consensus_above_sigma"]) == 81


def test_scatter_trivial_cases():
    rows, summary = scatter_data([ExperimentReport("a", 0.1, 0, 0, 1), ExperimentReport("b", 0.3, 0, 0, 1)])
    assert summary == {"metastable_below_sigma": 1.0}
    assert [r["side_of_c_star"] for r in rows] == ["below", "above"]
    assert scatter_data([]) == ([], {})


def test_single_edge_experiment_is_metastable(tmp_path):
    p = tmp_path / "edge.txt"
    p.write_text("0 1\n")
    report, results, part, g = run_experiment(p, ExperimentConfig("krich", trials=5), None)
    assert report.frac_M == 1.0 and report.max_rounds == 2
    assert report.mean_rounds == 2
    assert report.c_d_alt is None  # densest-core has nothing to extract


def test_report_roundtrip_and_outputs(tmp_path):
    p = tmp_path / "g.txt"
    lines = [f"{i} {j}" for i in range(6) for j in range(i + 1, 6)]
    lines += [f"{i} {i + 1}" for i in range(5, 30)] + ["29 0"]
    p.write_text("\n".join(lines) + "\n")
    cfg = ExperimentConfig(trials=6, stats_every=5)
    report, results, part, g = run_experiment(p, cfg)
    assert report.frac_C + report.frac_P + report.frac_M == pytest.approx(1)
    assert sum(report.counts.values()) == 6
    assert report.mean_rounds <= report.max_rounds == g.n
    assert report.c_r_alt is not None
    write_outputs(tmp_path / "out", report, results, g, part, cfg.base_seed, rounds_files=True)
    back = ExperimentReport.from_json((tmp_path / "out" / "report.json").read_text())
    assert back == report
    rows = list(csv.DictReader(open(tmp_path / "out" / "trials.csv")))
    assert [int(r["seed"]) for r in rows] == list(range(6))
    assert (tmp_path / "out" / "rounds_5.csv").read_text().startswith("round,blue_volume")
    assert len(load_reports(tmp_path)) == 1
    summary = write_scatter(tmp_path / "scatter.csv", [report])
    assert (tmp_path / "scatter.csv").read_text().startswith("dataset,c_d,dominant")


def test_supplied_partition_and_stubborn_mode(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("a b\nb c\nc a\nc d\nd e\ne a\n")
    report, results, part, g = run_experiment(
        p, ExperimentConfig(trials=3, mode=Mode.STUBBORN_CORE), ["a", "b", "c"])
    assert [g.label(v) for v in part.core] == ["a", "b", "c"]
    assert report.config["mode"] == "stubborn-core"
    with pytest.raises(ValueError):
        run_experiment(p, ExperimentConfig(trials=3), ["zz"])


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(core_method="spectral")
    with pytest.raises(ValueError):
        ExperimentConfig(trials=0)
