import csv
import json

import pytest

from cubefree.core.config import EngineConfig
from cubefree.utils import bench
from cubefree.utils.bench import (CSV_FIELDS, BenchMismatchError, BenchPair, groups_for_order, pairs_for_order,
                                  plot_records, records_to_json, run_bench, run_pair, write_csv)


def test_pairs_for_order(c6, s3):
    pairs = pairs_for_order([c6, s3], seed=10)
    assert len(pairs) == 3
    assert [p.seed for p in pairs] == [10, 11, 10]
    assert pairs[1].other.degree == s3.degree + 1
    assert pairs[2].group is c6 and pairs[2].other is s3


def test_run_bench_agrees_with_the_oracle():
    records = run_bench([6], seed=3)
    assert len(records) == 6
    assert {r.method for r in records} == {"structured", "oracle"}
    structured = [r.result for r in records if r.method == "structured"]
    oracle = [r.result for r in records if r.method == "oracle"]
    assert structured == oracle == ["iso", "iso", "non-iso"]
    assert all(r.verified for r in records if r.result == "iso")


def test_run_bench_without_orders():
    assert run_bench([]) == []


def test_oracle_is_skipped_above_its_limit():
    cfg = EngineConfig(oracle_limit=4)
    groups = groups_for_order(30, cfg)
    assert [g.order() for g in groups] == [30, 30]
    records = run_pair(pairs_for_order(groups, seed=0)[0], cfg)
    assert [r.method for r in records] == ["structured"]
    assert records[0].result == "iso"


def test_mismatch_leaves_a_bundle(monkeypatch, c6, engine_config):
    monkeypatch.setattr(bench, "isomorphism_cubefree", lambda *args, **kwargs: None)
    pair = pairs_for_order([c6], seed=5)[0]
    with pytest.raises(BenchMismatchError) as info:
        run_pair(pair)
    bundle = info.value.bundle
    assert bundle.parent == engine_config.output_dir
    assert {p.name for p in bundle.iterdir()} == {"G.json", "H.json", "records.json", "log.txt"}
    records = json.loads((bundle / "records.json").read_text(encoding="utf-8"))
    assert [r["result"] for r in records] == ["non-iso", "iso"]


def test_csv_json_and_plot_outputs(tmp_path, c6):
    records = run_pair(BenchPair("c6/c6", c6, c6, 0))
    path = write_csv(records, tmp_path / "bench.csv")
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == CSV_FIELDS
    assert len(rows) == 2
    assert records_to_json(records)[0]["method"] == "structured"
    image = plot_records(records, tmp_path / "plots" / "bench.png")
    assert image.exists()
    assert image.stat().st_size > 0


@pytest.mark.slow
def test_bench_on_mixed_orders():
    records = run_bench([12, 20, 60, 75], seed=1)
    assert {r.order for r in records} == {12, 20, 60, 75}
    assert all(r.verified for r in records if r.result == "iso")
