"""Command line interface.

Exit codes: 0 success, 2 usage error, 3 input/parse error, 4 budget exhausted
before any clique was found (``solve``/``match``).
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from . import bench
from .generate import generate_random_attributed, generate_random_weighted
from .graph import WeightedGraph
from .matching import AttributeKernel, graph_kernel
from .serialize import GraphFormatError, load_dataset, load_graph_file, save_graph_file
from .solver import (
    EstimateKind,
    PivotStrategy,
    SolverConfig,
    enumerate_basic,
    enumerate_pivot,
    solve,
)

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_BUDGET = 0, 2, 3, 4

PIVOTS = {
    "none": PivotStrategy.NONE,
    "first": PivotStrategy.FIRST,
    "random": PivotStrategy.RANDOM,
    "wdeg": PivotStrategy.MAX_WDEG,
    "clique": PivotStrategy.MAX_WEIGHT_CLIQUE,
}
ESTIMATES = {
    "inf": EstimateKind.INFINITE,
    "deg": EstimateKind.DEG,
    "sum": EstimateKind.SUM,
    "cs": EstimateKind.CS,
}


class InputError(Exception):
    pass


def _read_graph(path, **opts):
    try:
        return load_graph_file(path, **opts)
    except (GraphFormatError, ValueError, OSError) as exc:
        raise InputError(str(exc)) from None


def _weighted(path) -> WeightedGraph:
    g = _read_graph(path)
    try:
        return g.to_weighted()
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _string_codes(path):
    if path is None:
        return None
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _kernel(args) -> AttributeKernel:
    if args.kernel == "rbf":
        return AttributeKernel.rbf(args.sigma)
    return AttributeKernel(args.kernel)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def cmd_solve(args) -> int:
    z = _weighted(args.file)
    cfg = SolverConfig(
        pivot=PIVOTS[args.pivot],
        estimate=ESTIMATES[args.estimate],
        budget=args.budget,
        rng_seed=args.seed,
    )
    rep = solve(z, cfg)
    print("clique:", " ".join(z.labels(rep.best_clique)))
    print("weight:", _fmt(rep.best_weight))
    print("recursions:", rep.recursions)
    print("completed:", str(rep.completed).lower())
    if args.trace:
        with open(args.trace, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["recursions", "best_weight"])
            w.writerows((r, repr(wt)) for r, wt in rep.improvements)
    if not rep.completed and not rep.best_clique:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_enumerate(args) -> int:
    z = _weighted(args.file)
    found = []
    visit = found.append
    if PIVOTS[args.pivot] is PivotStrategy.NONE:
        calls = enumerate_basic(z, visit)
    else:
        calls = enumerate_pivot(z, PIVOTS[args.pivot], args.seed, visit)
    for c in sorted(found, key=lambda c: sorted(c)):
        try:
            wt = _fmt(z.clique_weight(c))
        except ValueError:
            wt = "nan"
        print(" ".join(z.labels(c)), wt, sep="\t")
    print(f"# {len(found)} maximal cliques, {calls} recursions", file=sys.stderr)
    return EXIT_OK


def cmd_match(args) -> int:
    codes = _string_codes(args.string_codes)
    x = _read_graph(args.x, string_codes=codes)
    y = _read_graph(args.y, string_codes=codes)
    cfg = SolverConfig(
        pivot=PIVOTS[args.pivot],
        estimate=ESTIMATES[args.estimate],
        budget=args.budget,
        rng_seed=args.seed,
    )
    try:
        res = graph_kernel(x, y, _kernel(args), cfg)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print("k:", _fmt(res.kernel_value))
    print("l(X):", _fmt(res.length_x))
    print("l(Y):", _fmt(res.length_y))
    print("s:", "undefined" if res.similarity is None else _fmt(res.similarity))
    pairs = res.morphism.labelled(x, y)
    print("morphism:", " ".join(f"{a}->{b}" for a, b in pairs.items()))
    print("recursions:", res.report.recursions)
    print("completed:", str(res.report.completed).lower())
    if not res.report.completed and not res.report.best_clique:
        return EXIT_BUDGET
    return EXIT_OK


def _budgets(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad budget list {text!r}") from None
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError("budgets must be positive integers")
    return sorted(set(values))


def cmd_bench(args) -> int:
    codes = _string_codes(args.string_codes)
    try:
        data = load_dataset(args.dir, args.collection, string_codes=codes)
    except (GraphFormatError, ValueError, OSError) as exc:
        raise InputError(str(exc)) from None
    dataset = [(name, g) for name, g, _ in data]
    configs = None
    if args.pivot:
        configs = [
            SolverConfig(pivot=PIVOTS[p], estimate=ESTIMATES[args.estimate])
            for p in args.pivot
        ]
    elif args.estimate != "cs":
        configs = [
            SolverConfig(pivot=c.pivot, estimate=ESTIMATES[args.estimate])
            for c in bench.default_configs()
        ]
    kernel = _kernel(args)
    try:
        records, aggregates = bench.run_benchmark(
            dataset, kernel, configs, args.budgets, args.seed, args.include_self
        )
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            bench.write_csv(records + aggregates, fh)
    else:
        bench.write_csv(records + aggregates, sys.stdout)
    if args.compare_estimates:
        states, worse = bench.deg_vs_cs(dataset, kernel, args.include_self)
        print(f"# deg > cs at {worse} of {states} sampled states", file=sys.stderr)
    return EXIT_OK


def cmd_stats(args) -> int:
    try:
        data = load_dataset(args.dir, args.collection, structure_only=True)
    except (GraphFormatError, ValueError, OSError) as exc:
        raise InputError(str(exc)) from None
    st = bench.dataset_stats([g for _, g, _ in data], [c for _, _, c in data])
    rows = [bench.STATS_HEADER, st.row(Path(args.dir).name)]
    widths = [max(len(r[k]) for r in rows) for k in range(len(rows[0]))]
    for r in rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return EXIT_OK


def _weight_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if lo > hi:
        raise argparse.ArgumentTypeError("weight range needs lo <= hi")
    return lo, hi


def cmd_gen(args) -> int:
    if args.attr_dim is not None:
        g = generate_random_attributed(args.n, args.p, args.attr_dim, args.seed)
    else:
        lo, hi = args.weights or (0.0, 1.0)
        g = generate_random_weighted(args.n, args.p, lo, hi, args.seed)
    save_graph_file(g, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bkclique", description="Maximum weight clique search and graph matching."
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def pivot_opt(p, default):
        p.add_argument("--pivot", choices=list(PIVOTS), default=default)

    p = sub.add_parser("solve", help="find a maximum weight clique")
    p.add_argument("file")
    pivot_opt(p, "clique")
    p.add_argument("--estimate", choices=["inf", "deg", "sum"], default="sum")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trace", help="write incumbent improvements as CSV")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("enumerate", help="list all maximal cliques")
    p.add_argument("file")
    pivot_opt(p, "none")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("match", help="graph kernel and similarity of two graphs")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--kernel", choices=["dot", "rbf", "discrete"], required=True)
    p.add_argument("--sigma", type=float, default=1.0)
    pivot_opt(p, "clique")
    p.add_argument("--estimate", choices=list(ESTIMATES), default="cs")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--string-codes", help="JSON {attr: {value: code}} for GXL strings")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("bench", help="pairwise similarity benchmark to CSV")
    p.add_argument("dir")
    p.add_argument("--kernel", choices=["dot", "rbf", "discrete"], default="dot")
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument(
        "--budgets", type=_budgets, default=list(bench.DEFAULT_BUDGETS),
        help="comma separated recursion budgets",
    )
    p.add_argument("--pivot", choices=list(PIVOTS), action="append",
                   help="repeatable; default: none, random, wdeg, clique")
    p.add_argument("--estimate", choices=list(ESTIMATES), default="cs")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--include-self", action="store_true")
    p.add_argument("--collection", help="collection file (.cxl) inside dir")
    p.add_argument("--string-codes")
    p.add_argument("--compare-estimates", action="store_true",
                   help="report how often deg exceeds cs")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("stats", help="dataset characteristics")
    p.add_argument("dir")
    p.add_argument("--collection")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("gen", help="write a random graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--weights", type=_weight_range)
    grp.add_argument("--attr-dim", type=int)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    try:
        if getattr(args, "budget", None) is not None and args.budget < 1:
            parser.error("--budget must be positive")
        if args.command == "gen":
            if args.n < 1 or not 0 <= args.p <= 1 or (args.attr_dim is not None and args.attr_dim < 1):
                parser.error("gen needs n >= 1, 0 <= p <= 1, attr-dim >= 1")
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
