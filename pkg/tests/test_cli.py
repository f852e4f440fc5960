import json

from twochoices.cli import main


def test_synth_metrics_run_scatter(tmp_path, capsys):
    net = tmp_path / "net.txt"
    assert main(["synth", "--n", "1024", "--epsilon", "0.8", "--cr", "2", "--cd", "1/2",
                 "--d-core-out", "16", "--d-peri-in", "8", "--seed", "5", "--out", str(net)]) == 0
    core = (tmp_path / "net.txt.core").read_text().split()
    assert len(core) == 256

    assert main(["metrics", "--input", str(net), "--core-method", "krich"]) == 0
    out = capsys.readouterr().out
    record = json.loads(out[out.index("{"):])
    assert record["core_method"] == "krich" and record["cut_convention"] == "ordered-pairs"
    assert len(record["core_labels"]) == record["core_size"]

    out_dir = tmp_path / "exp"
    assert main(["run", "--input", str(net), "--partition", str(tmp_path / "net.txt.core"),
                 "--trials", "4", "--max-rounds", "30", "--seed", "9", "--stats-every", "0",
                 "--out", str(out_dir)]) == 0
    report = json.loads((out_dir / "report.json").read_text())
    assert report["c_r"] == 2.0 and report["c_d"] == 0.5
    assert not list(out_dir.glob("rounds_*.csv"))
    assert (out_dir / "trials.csv").read_text().splitlines()[1].startswith("0,9,")

    assert main(["scatter", "--reports", str(tmp_path), "--out", str(tmp_path / "scatter.csv")]) == 0
    assert len((tmp_path / "scatter.csv").read_text().splitlines()) >= 2


def test_bad_input_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("1\n")
    assert main(["metrics", "--input", str(bad)]) == 2
    assert "line 1" in capsys.readouterr().err


def test_infeasible_synth_spec(tmp_path, capsys):
    assert main(["synth", "--n", "1024", "--epsilon", "0.5", "--cr", "2", "--cd", "1/3",
                 "--d-core-out", "64", "--d-peri-in", "2", "--out", str(tmp_path / "x.txt")]) == 2
    assert "integer" in capsys.readouterr().err
