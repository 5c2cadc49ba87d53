"""
Benchmark harness: structured isomorphism test against the brute-force oracle

For every order, isomorphic pairs (a group and a scrambled copy) and
non-isomorphic pairs (distinct catalog groups) are run through both
methods. The oracle is skipped above its order limit. A disagreement
stops the run and leaves a reproduction bundle on disk.
"""

import csv
import json
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from cubefree.core.catalog import build_catalog
from cubefree.core.config import EngineConfig, get_config
from cubefree.core.errors import VerificationError
from cubefree.core.iso import isomorphism_cubefree, verify_isomorphism
from cubefree.core.oracle import brute_force_isomorphism, scramble
from cubefree.core.perm import PermGroup
from cubefree.utils.groupfile import dump_group, group_from_dict
from cubefree.utils.logger import capture_log


@dataclass
class BenchRecord:
    order: int
    degree_G: int
    degree_H: int
    method: str
    result: str
    wall_time: float
    verified: bool
    seed: int


CSV_FIELDS = [f.name for f in fields(BenchRecord)]


@dataclass
class BenchPair:
    label: str
    group: PermGroup
    other: PermGroup
    seed: int


class BenchMismatchError(VerificationError):
    """Structured test and oracle disagree on a pair"""

    def __init__(self, message: str, bundle: Path):
        self.bundle = bundle
        super().__init__(f"{message}; reproduction bundle in {bundle}")


def pairs_for_order(groups: Sequence[PermGroup], seed: int) -> List[BenchPair]:
    """One scrambled pair per group and one pair per consecutive distinct groups"""
    pairs = []
    for i, g in enumerate(groups):
        copy = scramble(g, seed + i, extra_points=i % 3)
        pairs.append(BenchPair(f"{g.name}~scrambled", g, copy.group, seed + i))
    for i in range(len(groups) - 1):
        pairs.append(BenchPair(f"{groups[i].name}/{groups[i + 1].name}", groups[i], groups[i + 1], seed))
    return pairs


def _run_structured(pair: BenchPair, cfg: EngineConfig) -> BenchRecord:
    start = time.perf_counter()
    hom = isomorphism_cubefree(pair.group, pair.other, cfg)
    verified = False
    if hom is not None:
        verify_isomorphism(hom, config=cfg)
        verified = True
    elapsed = time.perf_counter() - start
    return BenchRecord(pair.group.order(), pair.group.degree, pair.other.degree, "structured",
                       "iso" if hom is not None else "non-iso", round(elapsed, 6), verified, pair.seed)


def _run_oracle(pair: BenchPair, cfg: EngineConfig) -> BenchRecord:
    start = time.perf_counter()
    hom = brute_force_isomorphism(pair.group, pair.other, cfg)
    verified = hom is not None and hom.is_isomorphism()
    elapsed = time.perf_counter() - start
    return BenchRecord(pair.group.order(), pair.group.degree, pair.other.degree, "oracle",
                       "iso" if hom is not None else "non-iso", round(elapsed, 6), verified, pair.seed)


def write_bundle(pair: BenchPair, records: Sequence[BenchRecord], log_lines: Sequence[str],
                 directory: Path) -> Path:
    """Both groups, the records so far and the captured log of a failing pair"""
    bundle = Path(directory) / f"mismatch_order{pair.group.order()}_seed{pair.seed}"
    bundle.mkdir(parents=True, exist_ok=True)
    dump_group(pair.group, bundle / "G.json")
    dump_group(pair.other, bundle / "H.json")
    (bundle / "records.json").write_text(json.dumps([asdict(r) for r in records], indent=2) + "\n",
                                         encoding="utf-8")
    (bundle / "log.txt").write_text("".join(log_lines), encoding="utf-8")
    return bundle


def run_pair(pair: BenchPair, config: Optional[EngineConfig] = None) -> List[BenchRecord]:
    cfg = get_config(config)
    records: List[BenchRecord] = []
    with capture_log() as lines:
        try:
            records.append(_run_structured(pair, cfg))
            if pair.group.order() <= cfg.oracle_limit:
                records.append(_run_oracle(pair, cfg))
        except VerificationError as exc:
            bundle = write_bundle(pair, records, lines, cfg.output_dir)
            raise BenchMismatchError(f"verification failed on {pair.label}: {exc}", bundle) from exc
        if len(records) == 2 and records[0].result != records[1].result:
            bundle = write_bundle(pair, records, lines, cfg.output_dir)
            raise BenchMismatchError(f"structured says {records[0].result}, oracle says {records[1].result} "
                                     f"on {pair.label}", bundle)
    return records


def groups_for_order(n: int, config: Optional[EngineConfig] = None) -> List[PermGroup]:
    """Catalog groups up to the oracle limit, family examples above it"""
    cfg = get_config(config)
    if n <= cfg.oracle_limit:
        return [entry.group for entry in build_catalog([n], cfg)]
    from group_examples import examples_of_order

    groups = [group_from_dict(d) for d in examples_of_order(n)]
    return [g for g in groups if g.order() == n]


def run_bench(orders: Sequence[int], seed: int = 0, config: Optional[EngineConfig] = None) -> List[BenchRecord]:
    cfg = get_config(config)
    records: List[BenchRecord] = []
    for n in orders:
        groups = groups_for_order(n, cfg)
        pairs = pairs_for_order(groups, seed)
        logger.info(f"order {n}: {len(groups)} groups, {len(pairs)} pairs")
        for pair in pairs:
            records.extend(run_pair(pair, cfg))
    return records


def write_csv(records: Sequence[BenchRecord], path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        writer.writeheader()
        for record in records:
            writer.writerow(asdict(record))
    return path


def records_to_json(records: Sequence[BenchRecord]) -> List[Dict[str, Any]]:
    return [asdict(r) for r in records]


def plot_records(records: Sequence[BenchRecord], path: Path) -> Path:
    """Mean wall time per order and method, log scale"""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    series: Dict[str, Dict[int, List[float]]] = {}
    for r in records:
        series.setdefault(r.method, {}).setdefault(r.order, []).append(r.wall_time)
    fig, ax = plt.subplots(figsize=(7, 4))
    for method, by_order in sorted(series.items()):
        orders = sorted(by_order)
        means = [max(sum(by_order[n]) / len(by_order[n]), 1e-6) for n in orders]
        ax.plot(orders, means, marker="o", label=method)
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("group order")
    ax.set_ylabel("mean wall time (s)")
    ax.legend()
    fig.tight_layout()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    return path
