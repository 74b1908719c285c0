import csv
import json

import pytest

from conftest import write_camera_tree
from wdfp.cli import main

# 64-pixel crops at J=2 leave 16x16 deepest subbands, enough for the
# default 3/5/7/9 variance windows.
ARGS = ["--crop", "64", "--levels", "2"]


@pytest.fixture
def dataset(tmp_path):
    return write_camera_tree(tmp_path / "data", cameras=2, per_camera=2, m=64, seed=12)


def test_run_all_writes_everything(dataset, tmp_path, capsys):
    out = tmp_path / "run"
    rc = main(
        ["run-all", "--dataset", str(dataset), "--out", str(out), "--method",
         "law,gray-wdlaw", *ARGS]
    )
    assert rc == 0
    assert (out / "summary.json").is_file()
    for label in ("law", "gray-wdlaw"):
        assert (out / f"pairs_{label}.csv").is_file()
        assert (out / f"roc_{label}.csv").is_file()
        assert len(list((out / "fingerprints" / label).glob("*.wdfp"))) == 4
    printed = capsys.readouterr().out
    assert "[law]" in printed and "[gray-wdlaw]" in printed


def test_phase_split_matches_run_all(dataset, tmp_path):
    run_out = tmp_path / "run"
    main(["run-all", "--dataset", str(dataset), "--out", str(run_out), "--method", "law", *ARGS])

    ext_out = tmp_path / "ext"
    main(["extract", "--dataset", str(dataset), "--out", str(ext_out), "--method", "law", *ARGS])
    assert json.loads((ext_out / "extract_timings.json").read_text())["law"]["images"] == 4

    pairs_csv = tmp_path / "pairs.csv"
    main(["compare", "--fingerprints", str(ext_out / "fingerprints" / "law"),
          "--out", str(pairs_csv)])
    assert pairs_csv.read_text() == (run_out / "pairs_law.csv").read_text()

    roc_out = tmp_path / "roc"
    main(["roc", "--pairs", str(pairs_csv), "--out", str(roc_out)])
    assert (roc_out / "roc_law.csv").read_text() == (run_out / "roc_law.csv").read_text()
    thresholds = json.loads((roc_out / "thresholds.json").read_text())
    assert set(thresholds) == {"law"}
    assert 0.0 <= thresholds["law"]["auc"] <= 1.0


def test_bench_reports_lengths_and_ratio(tmp_path, capsys):
    out = tmp_path / "bench.json"
    rc = main(["bench", "--m", "64", "--levels", "2", "--rounds", "2",
               "--pairs-per-round", "2", "--out", str(out)])
    assert rc == 0
    result = json.loads(out.read_text())
    assert result["law"]["length"] == 64 * 64
    assert result["gray-wdlaw"]["length"] == 3 * (32 * 32 + 16 * 16)
    assert result["ratio_median"] > 0.0


def test_unknown_method_is_rejected(dataset, tmp_path):
    with pytest.raises(SystemExit):
        main(["run-all", "--dataset", str(dataset), "--out", str(tmp_path / "x"),
              "--method", "nonsense", *ARGS])


def test_roc_preserves_full_score_precision(dataset, tmp_path):
    # Scores travel through the CSV in repr form; ROC results from the
    # CSV must equal ROC results from memory bit for bit.
    out = tmp_path / "run"
    main(["run-all", "--dataset", str(dataset), "--out", str(out), "--method", "law", *ARGS])
    with open(out / "pairs_law.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert all(float(r["score"]) == float(repr(float(r["score"]))) for r in rows)
