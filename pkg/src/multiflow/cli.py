"""Command line front end: solve, schedule, inspect, compare, demo."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .cfs import cfs_length_bound, cfs_schedule, coding_first_ordering
from .conflict import (
    DEFAULT_ENUMERATION_CAP,
    build_conflict_graph,
    closed_neighborhoods,
    enumerate_schedulable_sets,
    inductive_schedulable_number,
)
from .errors import EnumerationCapError, SolverError, ValidationError
from .instance import demo_instances, load_demand, load_instance
from .mmf import optimal_fractional_schedule, solve_mmf

__all__ = ["main", "render_json"]

_TINY = 1e-12


def _round9(value: float) -> float:
    # 9 significant digits for every number we print
    if abs(value) < _TINY:
        return 0.0
    return float(f"{float(value):.9g}")


def _fmt(value: float) -> str:
    return f"{_round9(value):.9g}"


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, (float, np.floating)):
        return _round9(float(obj))
    if isinstance(obj, np.integer):
        return int(obj)
    raise TypeError(f"cannot render {type(obj)!r}")


def render_json(report: dict) -> str:
    return json.dumps(_clean(report), indent=2, sort_keys=True)


def _resolve_mode(requested: str, network) -> str:
    if requested != "auto":
        return requested
    return "coding" if network.max_weight > 1 else "plain"


def cmd_solve(args) -> dict:
    inst = load_instance(args.instance)
    mode = _resolve_mode(args.mode, inst.network)
    sol = solve_mmf(
        inst.network,
        inst.commodities,
        mode=mode,
        bandwidth=inst.bandwidth,
        cap=args.cap,
    )
    commodities = []
    for i, com in enumerate(inst.commodities):
        flow = {}
        for lk in inst.network.links:
            rate = float(sol.flows[i, lk.index - 1])
            if rate > _TINY:
                flow[f"{lk.tail}-{lk.head}"] = rate
        commodities.append(
            {
                "source": com.source,
                "sink": com.sink,
                "value": sol.per_commodity[i],
                "flow": flow,
            }
        )
    schedule = []
    for j in sorted(sol.schedule_weights):
        schedule.append(
            {
                "hyperarcs": sorted(sol.catalog.hyperarc_sets[j]),
                "links": sorted(sol.catalog.sublink_sets[j]),
                "lambda": sol.schedule_weights[j],
            }
        )
    return {
        "mode": mode,
        "throughput": sol.throughput,
        "commodities": commodities,
        "schedule": schedule,
        "schedule_length": sum(sol.schedule_weights.values()),
    }


def cmd_compare(args) -> dict:
    inst = load_instance(args.instance)
    plain = solve_mmf(
        inst.network, inst.commodities, mode="plain", bandwidth=inst.bandwidth, cap=args.cap
    )
    coded = solve_mmf(
        inst.network, inst.commodities, mode="coding", bandwidth=inst.bandwidth, cap=args.cap
    )
    report = {
        "plain_throughput": plain.throughput,
        "coding_throughput": coded.throughput,
        "absolute_gain": coded.throughput - plain.throughput,
    }
    if plain.throughput > _TINY:
        report["relative_gain"] = coded.throughput / plain.throughput
    return report


def cmd_inspect(args) -> dict:
    inst = load_instance(args.instance)
    net = inst.network
    g = build_conflict_graph(net, "link")
    gh = build_conflict_graph(net, "hyperarc")
    nb = closed_neighborhoods(g)
    report = {
        "links": net.link_count,
        "hyperarcs": net.hyperarc_count,
        "link_graph": {"vertices": g.vertex_count, "edges": g.edge_count},
        "hyperarc_graph": {"vertices": gh.vertex_count, "edges": gh.edge_count},
        "max_conflict_degree": nb.max_conflict_degree,
    }
    try:
        catalog = enumerate_schedulable_sets(gh, args.cap)
    except EnumerationCapError as exc:
        report["note"] = f"catalog omitted: {exc}"
        return report
    report["catalog_size"] = len(catalog)
    report["catalog"] = [sorted(ls) for ls in catalog.sublink_sets]
    if len(catalog) and nb.sets:
        report["inductive_schedulable_number"] = inductive_schedulable_number(catalog, nb)
    return report


def cmd_schedule(args) -> dict:
    inst = load_instance(args.instance)
    net = inst.network
    demand = load_demand(args.demand, net)
    gh = build_conflict_graph(net, "hyperarc")
    nb = closed_neighborhoods(build_conflict_graph(net, "link"))
    bound = cfs_length_bound(demand, nb)

    optimal = None
    if args.algorithm == "cfs":
        sched = cfs_schedule(net, gh, coding_first_ordering(gh), demand)
        length = sched.length
        try:
            catalog = enumerate_schedulable_sets(gh, args.cap)
            _, optimal = optimal_fractional_schedule(demand, catalog)
        except EnumerationCapError:
            optimal = None
    else:
        catalog = enumerate_schedulable_sets(gh, args.cap)
        sched, optimal = optimal_fractional_schedule(demand, catalog)
        length = optimal

    report = {
        "algorithm": args.algorithm,
        "schedule": [
            {"set": sorted(vs), "lambda": lam} for vs, lam in sched.entries
        ],
        "length": length,
        "neighborhood_bound": bound,
    }
    if optimal is not None:
        report["optimal_length"] = optimal
        if optimal > _TINY:
            report["ratio"] = length / optimal
    return report


def cmd_demo(args) -> dict:
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in demo_instances().items():
        path = out / f"{name}.json"
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
        written.append(str(path))
    return {"written": written}


def _kv(rows: list[tuple[str, str]]) -> list[str]:
    width = max(len(k) for k, _ in rows)
    return [f"{k.ljust(width)}  {v}" for k, v in rows]


def _grid(header: list[str], rows: list[list[str]]) -> list[str]:
    table = [header] + rows
    widths = [max(len(r[i]) for r in table) for i in range(len(header))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in table]


def _table_solve(report: dict) -> list[str]:
    lines = _kv(
        [
            ("mode", report["mode"]),
            ("throughput", _fmt(report["throughput"])),
            ("schedule_length", _fmt(report["schedule_length"])),
        ]
    )
    if report["commodities"]:
        rows = []
        for com in report["commodities"]:
            flow = " ".join(f"{key}:{_fmt(rate)}" for key, rate in sorted(com["flow"].items()))
            rows.append([f"{com['source']}->{com['sink']}", _fmt(com["value"]), flow])
        lines += [""] + _grid(["commodity", "value", "flow"], rows)
    if report["schedule"]:
        rows = [
            [
                _fmt(entry["lambda"]),
                ",".join(str(v) for v in entry["hyperarcs"]),
                ",".join(str(v) for v in entry["links"]),
            ]
            for entry in report["schedule"]
        ]
        lines += [""] + _grid(["lambda", "hyperarcs", "links"], rows)
    return lines


def _table_compare(report: dict) -> list[str]:
    rows = [
        ("plain_throughput", _fmt(report["plain_throughput"])),
        ("coding_throughput", _fmt(report["coding_throughput"])),
        ("absolute_gain", _fmt(report["absolute_gain"])),
    ]
    if "relative_gain" in report:
        rows.append(("relative_gain", _fmt(report["relative_gain"])))
    return _kv(rows)


def _table_inspect(report: dict) -> list[str]:
    rows = [
        ("links", str(report["links"])),
        ("hyperarcs", str(report["hyperarcs"])),
        ("link_graph", f"{report['link_graph']['vertices']} vertices, {report['link_graph']['edges']} edges"),
        ("hyperarc_graph", f"{report['hyperarc_graph']['vertices']} vertices, {report['hyperarc_graph']['edges']} edges"),
        ("max_conflict_degree", str(report["max_conflict_degree"])),
    ]
    if "inductive_schedulable_number" in report:
        rows.append(("inductive_schedulable_number", str(report["inductive_schedulable_number"])))
    if "catalog_size" in report:
        rows.append(("catalog_size", str(report["catalog_size"])))
    lines = _kv(rows)
    if "catalog" in report:
        lines.append("catalog")
        lines += ["  {" + ",".join(str(a) for a in ls) + "}" for ls in report["catalog"]]
    if "note" in report:
        lines.append(report["note"])
    return lines


def _table_schedule(report: dict) -> list[str]:
    rows = [
        ("algorithm", report["algorithm"]),
        ("length", _fmt(report["length"])),
        ("neighborhood_bound", _fmt(report["neighborhood_bound"])),
    ]
    if "optimal_length" in report:
        rows.append(("optimal_length", _fmt(report["optimal_length"])))
    if "ratio" in report:
        rows.append(("ratio", _fmt(report["ratio"])))
    lines = _kv(rows)
    if report["schedule"]:
        grid_rows = [
            [_fmt(entry["lambda"]), ",".join(str(v) for v in entry["set"])]
            for entry in report["schedule"]
        ]
        lines += [""] + _grid(["lambda", "hyperarcs"], grid_rows)
    return lines


def _table_demo(report: dict) -> list[str]:
    return [f"wrote {path}" for path in report["written"]]


_TABLES = {
    "solve": _table_solve,
    "compare": _table_compare,
    "inspect": _table_inspect,
    "schedule": _table_schedule,
    "demo": _table_demo,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multiflow",
        description="Maximum multiflow and fractional link scheduling "
        "for multihop wireless networks with broadcast coding.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.add_argument(
            "--cap",
            type=int,
            default=DEFAULT_ENUMERATION_CAP,
            help="largest conflict graph enumerated exactly",
        )

    p = sub.add_parser("solve", help="maximum throughput of an instance")
    p.add_argument("instance")
    p.add_argument("--mode", choices=("auto", "plain", "coding"), default="auto")
    common(p)
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("compare", help="plain versus coding throughput")
    p.add_argument("instance")
    common(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("inspect", help="conflict graphs and schedulable sets")
    p.add_argument("instance")
    common(p)
    p.set_defaults(handler=cmd_inspect)

    p = sub.add_parser("schedule", help="fractional schedule for a demand")
    p.add_argument("instance")
    p.add_argument("--demand", required=True, help="JSON file mapping \"tail-head\" to rates")
    p.add_argument("--algorithm", choices=("cfs", "exact"), default="cfs")
    common(p)
    p.set_defaults(handler=cmd_schedule)

    p = sub.add_parser("demo", help="write the bundled two-way relay instances")
    p.add_argument("--dir", default=".")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.set_defaults(handler=cmd_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report = args.handler(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (EnumerationCapError, SolverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(render_json(report))
    else:
        print("\n".join(_TABLES[args.command](report)))
    return 0
