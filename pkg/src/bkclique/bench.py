"""Pairwise-similarity benchmark and dataset statistics.

Every unordered pair of graphs is matched once per solver configuration. The
search runs to the largest budget and is snapshotted at each smaller one, so a
record for budget ``a`` is the state of the search after ``a`` recursive calls.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import time
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Optional, Sequence

from .graph import AttributedGraph
from .matching import AssociationGraph, AttributeKernel, estimate_cs, graph_length
from .solver import (
    EstimateKind,
    PivotStrategy,
    SearchState,
    SolverConfig,
    estimate_deg,
    solve,
)

DEFAULT_BUDGETS = (2, 5, 10, 50, 100, 500, 1000, 5000, 10000, 50000)
AGGREGATE_ID = "__mean__"


def default_configs(seed: int = 0) -> list[SolverConfig]:
    return [
        SolverConfig(pivot=p, estimate=EstimateKind.CS, rng_seed=seed)
        for p in (
            PivotStrategy.NONE,
            PivotStrategy.RANDOM,
            PivotStrategy.MAX_WDEG,
            PivotStrategy.MAX_WEIGHT_CLIQUE,
        )
    ]


@dataclass
class BenchRecord:
    graph_x: str
    graph_y: str
    pivot: str
    estimate: str
    budget: int
    recursions_used: float
    best_weight: float
    similarity: Optional[float]
    completed: bool
    wall_time_ms: float


@dataclass
class DatasetStats:
    class_count: Optional[int]
    avg_nodes: float
    max_nodes: int
    avg_edges: float
    max_edges: int

    def row(self, name: str = "") -> list[str]:
        classes = "-" if self.class_count is None else str(self.class_count)
        return [
            name,
            classes,
            f"{self.avg_nodes:.1f}",
            str(self.max_nodes),
            f"{self.avg_edges:.1f}",
            str(self.max_edges),
        ]


STATS_HEADER = ["data set", "#(classes)", "avg(nodes)", "max(nodes)", "avg(edges)", "max(edges)"]


def dataset_stats(
    graphs: Sequence[AttributedGraph], labels: Optional[Sequence[Optional[str]]] = None
) -> DatasetStats:
    if not graphs:
        raise ValueError("dataset_stats needs at least one graph")
    nodes = [g.n for g in graphs]
    edges = [g.edge_count for g in graphs]
    classes = None
    if labels is not None and any(lbl is not None for lbl in labels):
        classes = len({lbl for lbl in labels if lbl is not None})
    return DatasetStats(
        class_count=classes,
        avg_nodes=sum(nodes) / len(nodes),
        max_nodes=max(nodes),
        avg_edges=sum(edges) / len(edges),
        max_edges=max(edges),
    )


def _mean(values: list[float]) -> float:
    return sum(values) / len(values) if values else math.nan


def graph_pairs(n: int, include_self: bool = False) -> list[tuple[int, int]]:
    if include_self:
        return list(itertools.combinations_with_replacement(range(n), 2))
    return list(itertools.combinations(range(n), 2))


def run_benchmark(
    dataset: Sequence[tuple[str, AttributedGraph]],
    kernel: AttributeKernel,
    configs: Sequence[SolverConfig] | None = None,
    budgets: Sequence[int] = DEFAULT_BUDGETS,
    seed: int = 0,
    include_self: bool = False,
) -> tuple[list[BenchRecord], list[BenchRecord]]:
    """Return ``(records, aggregates)``.

    Records come per (pair, config, budget) in that nesting order; aggregates
    per (config, budget) hold means over pairs.  Pair ``k`` is solved with rng
    seed ``seed ^ k``.
    """
    if not dataset:
        raise ValueError("benchmark needs a nonempty dataset")
    budgets = list(budgets)
    if not budgets or any(b < 1 for b in budgets) or budgets != sorted(set(budgets)):
        raise ValueError("budgets must be strictly ascending positive integers")
    configs = list(configs) if configs is not None else default_configs(seed)
    lengths = [graph_length(g, kernel) for _, g in dataset]

    records: list[BenchRecord] = []
    for k, (a, b) in enumerate(graph_pairs(len(dataset), include_self)):
        (nx, gx), (ny, gy) = dataset[a], dataset[b]
        t0 = time.perf_counter()
        assoc = AssociationGraph(gx, gy, kernel)
        build_ms = (time.perf_counter() - t0) * 1000.0
        denom = lengths[a] * lengths[b]
        for cfg in configs:
            run_cfg = SolverConfig(
                pivot=cfg.pivot,
                estimate=cfg.estimate,
                budget=budgets[-1],
                rng_seed=seed ^ k,
                trace_points=budgets,
                deg_scope=cfg.deg_scope,
            )
            report = solve(assoc.weighted, run_cfg, assoc)
            for tp in report.trace:
                records.append(
                    BenchRecord(
                        graph_x=nx,
                        graph_y=ny,
                        pivot=cfg.pivot.value,
                        estimate=cfg.estimate.value,
                        budget=tp.alpha,
                        recursions_used=tp.recursions,
                        best_weight=tp.best_weight,
                        similarity=tp.best_weight / denom if denom > 0 else None,
                        completed=tp.completed,
                        wall_time_ms=build_ms + tp.elapsed_ms,
                    )
                )
    return records, aggregate(records)


def aggregate(records: Iterable[BenchRecord]) -> list[BenchRecord]:
    groups: dict[tuple[str, str, int], list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.pivot, r.estimate, r.budget), []).append(r)
    out = []
    for (pivot, estimate, budget), rs in groups.items():
        sims = [r.similarity for r in rs if r.similarity is not None]
        out.append(
            BenchRecord(
                graph_x=AGGREGATE_ID,
                graph_y=AGGREGATE_ID,
                pivot=pivot,
                estimate=estimate,
                budget=budget,
                recursions_used=_mean([r.recursions_used for r in rs]),
                best_weight=_mean([r.best_weight for r in rs]),
                similarity=_mean(sims) if sims else None,
                completed=all(r.completed for r in rs),
                wall_time_ms=_mean([r.wall_time_ms for r in rs]),
            )
        )
    return out


CSV_COLUMNS = [f.name for f in fields(BenchRecord)]


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(records: Iterable[BenchRecord], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([_cell(v) for v in astuple(r)])


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()


def deg_vs_cs(dataset: Sequence[tuple[str, AttributedGraph]], kernel, include_self=False):
    """Count states where the deg estimate exceeds the cs estimate.

    States checked per pair: the root and every single pair-vertex clique.
    Returns ``(states, deg_gt_cs)``.
    """
    states = worse = 0
    for a, b in graph_pairs(len(dataset), include_self):
        assoc = AssociationGraph(dataset[a][1], dataset[b][1], kernel)
        z = assoc.weighted
        for clique in [()] + [(v,) for v in z.vertices]:
            st = SearchState.extending(z, clique)
            states += 1
            if estimate_deg(z, st) > estimate_cs(assoc, st) + 1e-12:
                worse += 1
    return states, worse
