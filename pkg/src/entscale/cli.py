"""Command-line surface: bounds, depth windows, runtime tables, heatmap data,
simulation reports and the end-to-end verification matrix.

Exit codes: 0 success, 1 domain error, 2 usage error. Screen output keeps 6
significant digits; files carry full precision, and identical argv produces
byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bounds, lattice, runtime_model, simulator

DEFAULT_TABLE_QUBITS = (50, 72)
# depth table reproduced by `verify`, horizons x DEFAULT_TABLE_QUBITS
REFERENCE_DEPTHS = ((75, 60), (84, 67), (93, 75), (102, 82))


def _fmt(value) -> str:
    if isinstance(value, int):
        return str(value)
    return f"{value:.6g}"


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2))


def _parse_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"expected MIN:MAX, got {text!r}")
    return int(parts[0]), int(parts[1])


def _parse_int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _params_from_args(args) -> runtime_model.RuntimeParams:
    return runtime_model.RuntimeParams(a1=args.a1, a2=args.a2, flops=args.flops)


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--a1", type=float, default=runtime_model.DEFAULT_PARAMS.a1)
    parser.add_argument("--a2", type=float, default=runtime_model.DEFAULT_PARAMS.a2)
    parser.add_argument("--flops", type=float, default=runtime_model.DEFAULT_PARAMS.flops)


def cmd_bounds(args) -> int:
    if args.grid:
        graph = lattice.build_grid(args.grid[0], args.grid[1])
    elif args.deformed:
        graph = lattice.build_deformed_grid(args.deformed[0], args.deformed[1])
    else:
        graph = lattice.read_graph_file(args.graph)
    cut = lattice.min_balanced_cut(graph, mode=args.cut)
    report = bounds.cut_bounds(graph.n, graph.edge_count, cut.crossings)
    if args.json:
        payload = report.to_dict()
        payload["cut_mode"] = args.cut
        payload["side_a"] = list(cut.side_a)
        _print_json(payload)
        return 0
    rows = [
        ("n", str(report.n)),
        ("e", str(report.e)),
        ("f", str(report.f)),
        ("log2_chi_lb", _fmt(report.log2_chi_lb)),
        ("chi_lb", _fmt(report.chi_lb)),
        ("gate_lb", _fmt(report.gate_lb)),
        ("depth_interval", f"{_fmt(report.depth_interval[0])} {_fmt(report.depth_interval[1])}"),
    ]
    width = max(len(name) for name, _ in rows)
    for name, value in rows:
        print(f"{name.ljust(width)}  {value}")
    return 0


def cmd_interval(args) -> int:
    lower, upper = bounds.depth_interval(args.qubits)
    if args.json:
        _print_json({"qubits": args.qubits, "lower": lower, "upper": upper})
    else:
        print(f"{_fmt(lower)} {_fmt(upper)}")
    return 0


def cmd_runtime_eval(args) -> int:
    estimate = runtime_model.eval_runtime(_params_from_args(args), args.qubits, args.depth)
    if args.json:
        _print_json(
            {
                "qubits": args.qubits,
                "depth": args.depth,
                "log10_seconds": estimate.log10_seconds,
                "seconds": estimate.seconds,
                "overflowed": estimate.overflowed,
            }
        )
    elif estimate.overflowed:
        print(f"log10(seconds) = {_fmt(estimate.log10_seconds)} (exceeds float range)")
    else:
        print(f"{_fmt(estimate.seconds)} s  (log10 = {_fmt(estimate.log10_seconds)})")
    return 0


def cmd_runtime_invert(args) -> int:
    params = _params_from_args(args)
    depth = runtime_model.invert_depth(params, args.qubits, args.seconds)
    rounded = runtime_model.achievable_depth(params, args.qubits, args.seconds)
    if args.json:
        _print_json(
            {
                "qubits": args.qubits,
                "seconds": args.seconds,
                "depth": depth,
                "achievable_depth": rounded,
            }
        )
    else:
        print(f"depth = {_fmt(depth)}  (achievable: {rounded})")
    return 0


def cmd_fit(args) -> int:
    points = runtime_model.ingest_benchmarks(args.data)
    params, residual = runtime_model.fit_params(points, flops=args.flops)
    if args.json:
        _print_json(
            {
                "a1": params.a1,
                "a2": params.a2,
                "flops": params.flops,
                "residual_norm": residual,
                "points": len(points),
            }
        )
    else:
        print(f"a1 = {_fmt(params.a1)}")
        print(f"a2 = {_fmt(params.a2)}")
        print(f"flops = {_fmt(params.flops)}")
        print(f"residual_norm = {_fmt(residual)}  ({len(points)} points)")
    return 0


def cmd_tables(args) -> int:
    params = _params_from_args(args)
    table = runtime_model.depth_table(
        params, args.qubits, runtime_model.STANDARD_HORIZONS, halve=args.modified
    )
    if args.json:
        _print_json(table.to_dict())
    else:
        print(table.to_text())
    return 0


def cmd_heatmap(args) -> int:
    params = _params_from_args(args)
    data = runtime_model.heatmap(params, args.qubits, args.depth, step=args.step)
    paths = runtime_model.write_heatmap_csv(data, args.out)
    if args.json:
        _print_json({name: str(path) for name, path in paths.items()})
    else:
        for name in ("heatmap", "interval", "contours"):
            print(f"wrote {paths[name]}")
    return 0


def cmd_simulate(args) -> int:
    graph = lattice.build_grid(args.rows, args.cols)
    mode = "exact" if graph.n <= lattice.EXACT_CUT_LIMIT else "heuristic"
    cut = lattice.min_balanced_cut(graph, mode=mode)
    report = simulator.verify_caps(graph, args.depth, [args.seed], [cut])
    if args.report:
        report.write_csv(args.report)
    if args.json:
        payload = report.to_json_dict()
        payload["cut"] = {"side_a": list(cut.side_a), "crossings": cut.crossings}
        _print_json(payload)
        return 0 if report.ok else 1
    print(f"grid {args.rows}x{args.cols}, depth {args.depth}, seed {args.seed}")
    print(f"min cut: f = {cut.crossings}, side_a = {list(cut.side_a)}")
    print("layer  entropy_ebits  rank  crossing_cz  cap")
    for rec in report.records:
        print(
            f"{rec.layer:<5d}  {rec.entropy_ebits:<13.6g}  {rec.rank:<4d}  "
            f"{rec.crossing_cz:<11d}  {rec.cap}"
        )
    if args.report:
        print(f"wrote {args.report}")
    print(f"verdict: {'pass' if report.ok else 'fail'}")
    return 0 if report.ok else 1


def _verify_reference_table() -> tuple[bool, str]:
    table = runtime_model.depth_table(runtime_model.DEFAULT_PARAMS, DEFAULT_TABLE_QUBITS)
    got = tuple(depths for _, _, depths in table.rows)
    ok = got == REFERENCE_DEPTHS
    return ok, f"got {got}" if not ok else f"{len(REFERENCE_DEPTHS) * 2} cells exact"


def _verify_deformed_consistency(limit: int = 400) -> tuple[bool, str]:
    cases = 0
    for side in range(2, int(limit ** 0.5) + 1):
        n = side * side
        for k in range(side):
            if n % (side - k) != 0:
                continue
            cases += 1
            graph = lattice.build_deformed_grid(n, k)
            f = side - k
            if bounds.deformed_edge_count(n, k) != graph.edge_count:
                return False, f"edge count mismatch at (n={n}, k={k})"
            if bounds.deformed_log2_chi(n, k) != bounds.cut_log2_chi(n, f):
                return False, f"log2 chi mismatch at (n={n}, k={k})"
            if bounds.deformed_gate_count(n, k) != bounds.cut_gate_count(n, graph.edge_count, f):
                return False, f"gate count mismatch at (n={n}, k={k})"
    return True, f"{cases} (n, k) cases exact"


def cmd_verify(args) -> int:
    checks: list[tuple[str, bool, str]] = []

    ok, detail = _verify_reference_table()
    checks.append(("runtime-table-reproduction", ok, detail))

    ok, detail = _verify_deformed_consistency()
    checks.append(("deformed-bound-consistency", ok, detail))

    suite = simulator.run_cap_suite(
        max_qubits=args.max_qubits, num_seeds=args.seeds, depth=args.depth
    )
    cap_ok = all(g.report.ok for g in suite.grids)
    detail = (
        f"{len(suite.grids)} grids, {args.seeds} seeds, depth {args.depth}"
        if cap_ok
        else suite.first_violation() or "violation"
    )
    checks.append(("simulator-ebit-caps", cap_ok, detail))

    deviation = max((g.invariance_deviation for g in suite.grids), default=0.0)
    checks.append(
        ("local-gate-invariance", deviation <= suite.tol, f"max deviation {deviation:.3g}")
    )

    width = max(len(name) for name, _, _ in checks)
    all_ok = True
    for name, ok, detail in checks:
        print(f"{'PASS' if ok else 'FAIL'}  {name.ljust(width)}  {detail}")
        all_ok &= ok
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entscale",
        description="Entanglement-scaling bounds, runtime frontiers and cap verification "
        "for nearest-neighbor random circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="cut-based lower bounds for a lattice")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--grid", nargs=2, type=int, metavar=("R", "C"))
    source.add_argument("--deformed", nargs=2, type=int, metavar=("N", "K"))
    source.add_argument("--graph", metavar="FILE")
    p.add_argument("--cut", choices=("exact", "heuristic"), default="exact")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("interval", help="entangling-depth window [sqrt(4n), 8*sqrt(n)]")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_interval)

    p = sub.add_parser("runtime-eval", help="model runtime at (qubits, depth)")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    _add_param_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_runtime_eval)

    p = sub.add_parser("runtime-invert", help="depth frontier for a time budget")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--seconds", type=float, required=True)
    _add_param_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_runtime_invert)

    p = sub.add_parser("fit", help="fit (a1, a2) to a benchmark CSV")
    p.add_argument("--data", required=True, metavar="FILE")
    p.add_argument("--flops", type=float, default=runtime_model.DEFAULT_PARAMS.flops)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("tables", help="achievable-depth table per time horizon")
    p.add_argument("--modified", action="store_true",
                   help="halve depths for the harder benchmark variant")
    p.add_argument("--qubits", type=_parse_int_list, default=DEFAULT_TABLE_QUBITS,
                   metavar="LIST")
    _add_param_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("heatmap", help="emit runtime heatmap CSV data")
    p.add_argument("--qubits", type=_parse_range, required=True, metavar="MIN:MAX")
    p.add_argument("--depth", type=_parse_range, required=True, metavar="MIN:MAX")
    p.add_argument("--step", type=int, default=1)
    p.add_argument("--out", required=True, metavar="DIR")
    _add_param_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_heatmap)

    p = sub.add_parser("simulate", help="simulate one seeded circuit with cap checks")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--report", metavar="FILE")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the end-to-end verification matrix")
    p.add_argument("--max-qubits", type=int, default=16)
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
