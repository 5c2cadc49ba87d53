"""
Command-line interface

Exit status: 0 isomorphic (or success), 1 non-isomorphic, 2 invalid input
or an order that is not cube-free.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from loguru import logger

from cubefree.core.catalog import build_catalog, save_catalog
from cubefree.core.config import EngineConfig, get_config, set_config
from cubefree.core.errors import CubefreeError, GroupParseError, NotCubefreeError, OrderBoundError
from cubefree.core.grouptheory import OrderFactorization, require_cubefree
from cubefree.core.homs import quotient
from cubefree.core.iso import cubefree_decomposition, isomorphism_cubefree, verify_isomorphism
from cubefree.core.perm import PermGroup
from cubefree.core.structure import frattini, frattini_free_decomposition
from cubefree.utils.bench import plot_records, records_to_json, run_bench, write_csv, CSV_FIELDS
from cubefree.utils.groupfile import dump_mapping, load_group, mapping_to_dict
from cubefree.utils.logger import setup_logger

EXIT_ISO = 0
EXIT_NON_ISO = 1
EXIT_INVALID = 2


def _orders(text: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", type=Path, default=None, help="Write structured output to this file")
    common.add_argument("--seed", type=int, default=None, help="Random seed")
    common.add_argument("--oracle-limit", type=int, default=None, help="Largest order for the brute-force oracle")
    common.add_argument("--max-order", type=int, default=None, help="Reject groups of larger order")
    common.add_argument("--catalog-dir", type=Path, default=None, help="Catalog directory")
    common.add_argument("--verify", action="store_true", help="Always verify against a presentation")
    common.add_argument("--log-level", default="WARNING", help="Console log level")
    common.add_argument("--log-dir", type=Path, default=None, help="Also log to rotating files here")

    parser = argparse.ArgumentParser(prog="cubefree", description="Isomorphism of permutation groups of cube-free order")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (("order", "Print the group order"),
                            ("factor", "Print the factorized group order"),
                            ("is-cubefree", "Report whether the order is cube-free")):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", type=Path)
    p = sub.add_parser("decompose", parents=[common], help="Structure of a cube-free group")
    p.add_argument("file", type=Path)
    p = sub.add_parser("iso", parents=[common], help="Decide isomorphism of two groups")
    p.add_argument("file", type=Path)
    p.add_argument("other", type=Path)
    p = sub.add_parser("bench", parents=[common], help="Compare the structured test with the oracle")
    p.add_argument("--orders", type=_orders, default=[], help="Comma-separated orders")
    p.add_argument("--csv", type=Path, default=None, help="Write records as CSV to this file")
    p.add_argument("--plot", type=Path, default=None, help="Plot wall times to this image file")
    p = sub.add_parser("catalog", parents=[common], help="Build and save the catalog")
    p.add_argument("--orders", type=_orders, required=True, help="Comma-separated orders")
    return parser


def configure(args: argparse.Namespace) -> EngineConfig:
    changes: Dict[str, Any] = {}
    if args.seed is not None:
        changes["random_seed"] = args.seed
    if args.oracle_limit is not None:
        changes["oracle_limit"] = args.oracle_limit
    if args.max_order is not None:
        changes["max_order"] = args.max_order
    if args.catalog_dir is not None:
        changes["catalog_dir"] = str(args.catalog_dir)
    if args.verify:
        changes["always_verify"] = True
    cfg = get_config().replace(**changes)
    set_config(cfg)
    return cfg


def _load(path: Path, cfg: EngineConfig) -> PermGroup:
    group = load_group(path)
    if cfg.max_order is not None and group.order() > cfg.max_order:
        raise OrderBoundError(f"{path.name}: order {group.order()} exceeds --max-order {cfg.max_order}")
    return group


def _emit(args: argparse.Namespace, data: Any) -> None:
    if args.json is not None:
        args.json.parent.mkdir(parents=True, exist_ok=True)
        args.json.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")


def cmd_order(args: argparse.Namespace, cfg: EngineConfig) -> int:
    group = _load(args.file, cfg)
    fact = OrderFactorization.of(group.order())
    flag = "yes" if fact.is_cubefree() else "no"
    if args.command == "order":
        print(fact.n)
    elif args.command == "factor":
        print(fact)
    else:
        print(f"{fact}, cubefree: {flag}")
    _emit(args, {"order": fact.n, "factors": [list(f) for f in fact.factors], "cubefree": fact.is_cubefree()})
    if args.command == "is-cubefree" and not fact.is_cubefree():
        return EXIT_INVALID
    return EXIT_ISO


def decompose(group: PermGroup, cfg: EngineConfig) -> Dict[str, Any]:
    """Direct decomposition, Frattini subgroup and socle data of a cube-free group"""
    dec = cubefree_decomposition(group, cfg)
    solvable = dec.solvable_part
    frat = frattini(solvable, cfg)
    top = solvable if frat.order() == 1 else quotient(solvable, frat, config=cfg).quotient
    report = dec.to_dict()
    report["frattini_order"] = frat.order()
    report["frattini_free_order"] = top.order()
    if top.order() == 1:
        report["socle"] = {"order": 1, "b_primes": [], "c_primes": [], "complement_order": 1,
                           "complement_images": []}
    else:
        report["socle"] = frattini_free_decomposition(top, cfg).to_dict()
    return report


def cmd_decompose(args: argparse.Namespace, cfg: EngineConfig) -> int:
    group = _load(args.file, cfg)
    require_cubefree(group.order())
    report = decompose(group, cfg)
    soc = report["socle"]
    simple = f"PSL2({report['psl2_parameter']})" if report["psl2_parameter"] else "1"
    print(f"A: {simple} (order {report['simple_order']})")
    print(f"L: order {report['solvable_order']}, Frattini subgroup of order {report['frattini_order']}")
    print(f"socle: B primes {soc['b_primes']}, C primes {soc['c_primes']}")
    print(f"K: order {soc['complement_order']}, {len(soc['complement_images'])} generator images")
    _emit(args, report)
    return EXIT_ISO


def cmd_iso(args: argparse.Namespace, cfg: EngineConfig) -> int:
    group = _load(args.file, cfg)
    other = _load(args.other, cfg)
    hom = isomorphism_cubefree(group, other, cfg)
    if hom is None:
        print("non-isomorphic")
        _emit(args, {"isomorphic": False})
        return EXIT_NON_ISO
    transcript = verify_isomorphism(hom, config=cfg).to_dict()
    print(json.dumps(mapping_to_dict(hom, transcript), indent=2))
    if args.json is not None:
        dump_mapping(hom, args.json, transcript)
    return EXIT_ISO


def cmd_bench(args: argparse.Namespace, cfg: EngineConfig) -> int:
    for n in args.orders:
        require_cubefree(n)
    records = run_bench(args.orders, seed=cfg.random_seed, config=cfg)
    if args.csv is not None:
        write_csv(records, args.csv)
    else:
        print(",".join(CSV_FIELDS))
        for r in records:
            print(",".join(str(getattr(r, f)) for f in CSV_FIELDS))
    if args.plot is not None and records:
        plot_records(records, args.plot)
    _emit(args, records_to_json(records))
    return EXIT_ISO


def cmd_catalog(args: argparse.Namespace, cfg: EngineConfig) -> int:
    entries = build_catalog(args.orders, cfg)
    manifest = save_catalog(entries, cfg.catalog_dir)
    for entry in entries:
        print(f"{entry.name}: degree {entry.group.degree}, {entry.status()}")
    _emit(args, {"manifest": str(manifest), "entries": [e.to_dict() for e in entries]})
    return EXIT_ISO


COMMANDS = {
    "order": cmd_order,
    "factor": cmd_order,
    "is-cubefree": cmd_order,
    "decompose": cmd_decompose,
    "iso": cmd_iso,
    "bench": cmd_bench,
    "catalog": cmd_catalog,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logger(args.log_dir, level=args.log_level.upper())
    try:
        cfg = configure(args)
        return COMMANDS[args.command](args, cfg)
    except NotCubefreeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except GroupParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except CubefreeError as exc:
        logger.exception(f"{args.command} failed")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
