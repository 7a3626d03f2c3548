import csv
import io

import pytest

from bkclique.bench import (
    AGGREGATE_ID,
    CSV_COLUMNS,
    aggregate,
    dataset_stats,
    deg_vs_cs,
    records_to_csv,
    run_benchmark,
)
from bkclique.generate import generate_random_attributed, generate_random_weighted
from bkclique.graph import WeightedGraph
from bkclique.matching import AttributeKernel, graph_kernel
from bkclique.solver import SolverConfig, solve

DOT = AttributeKernel.dot()


def dataset(k, n=4, seed=0):
    return [
        (f"g{i}", generate_random_attributed(n + i % 2, 0.5, 2, seed=seed + i))
        for i in range(k)
    ]


class TestStats:
    def test_arithmetic(self):
        gs = [
            WeightedGraph.from_weights(
                [1, 1, 1], {(0, 1): 1, (1, 2): 1}
            ),
            WeightedGraph.from_weights(
                [1] * 5, {(0, 1): 1, (1, 2): 1, (2, 3): 1, (3, 4): 1}
            ),
        ]
        s = dataset_stats(gs)
        assert (s.avg_nodes, s.max_nodes, s.avg_edges, s.max_edges) == (4.0, 5, 3.0, 4)
        assert s.class_count is None
        assert s.row("x") == ["x", "-", "4.0", "5", "3.0", "4"]

    def test_classes(self):
        gs = [generate_random_weighted(2, 1.0, seed=i) for i in range(3)]
        assert dataset_stats(gs, ["a", "b", "a"]).class_count == 2

    def test_empty(self):
        with pytest.raises(ValueError):
            dataset_stats([])


class TestGenerate:
    def test_extremes(self):
        assert generate_random_weighted(6, 0.0, seed=1).edge_count == 0
        assert generate_random_weighted(6, 1.0, seed=1).edge_count == 15
        assert generate_random_attributed(5, 1.0, 2, seed=1).edge_count == 10
        assert generate_random_attributed(5, 0.0, 2, seed=1).edge_count == 0

    def test_deterministic(self):
        assert generate_random_weighted(8, 0.5, seed=4) == generate_random_weighted(8, 0.5, seed=4)
        assert generate_random_attributed(8, 0.5, 3, seed=4) == generate_random_attributed(8, 0.5, 3, seed=4)

    def test_ranges(self):
        g = generate_random_weighted(10, 0.7, 2.0, 3.0, seed=2)
        assert all(2.0 < g.w[i][j] <= 3.0 for i, j in g.edges())
        a = generate_random_attributed(10, 0.7, 2, seed=2)
        assert all(0.01 <= x <= 1.01 for i in a.vertices for x in a.vertex_attr(i))

    @pytest.mark.parametrize(
        "args", [(0, 0.5), (3, -0.1), (3, 1.5)]
    )
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            generate_random_weighted(*args)
        with pytest.raises(ValueError):
            generate_random_attributed(*args)

    def test_invalid_range(self):
        with pytest.raises(ValueError):
            generate_random_weighted(3, 0.5, 2.0, 1.0)


class TestBenchmark:
    def test_counts(self):
        cfg = [SolverConfig(pivot="max_weight_clique", estimate="cs")]
        recs, aggs = run_benchmark(dataset(3), DOT, cfg, [2, 10])
        assert len(recs) == 6 and len(aggs) == 2

    def test_default_configs_counts(self):
        recs, aggs = run_benchmark(dataset(5, n=3), DOT, budgets=[2, 5, 50])
        assert len(recs) == 10 * 4 * 3 and len(aggs) == 4 * 3
        assert {r.pivot for r in recs} == {"none", "random", "max_wdeg", "max_weight_clique"}
        assert {r.estimate for r in recs} == {"cs"}

    def test_include_self(self):
        recs, _ = run_benchmark(dataset(3), DOT, budgets=[5], include_self=True)
        assert len(recs) == 6 * 4

    def test_huge_budget_is_exact(self):
        data = dataset(4)
        cfg = SolverConfig(pivot="max_weight_clique", estimate="cs")
        recs, _ = run_benchmark(data, DOT, [cfg], [10**7])
        names = dict(data)
        for r in recs:
            exact = graph_kernel(names[r.graph_x], names[r.graph_y], DOT, cfg)
            assert r.completed
            assert r.similarity == pytest.approx(exact.similarity, abs=1e-12)

    def test_aggregate_mean_non_decreasing(self):
        budgets = [2, 5, 10, 50, 100, 500]
        _, aggs = run_benchmark(dataset(5, n=5, seed=11), DOT, budgets=budgets)
        by_cfg = {}
        for a in aggs:
            by_cfg.setdefault(a.pivot, []).append((a.budget, a.similarity))
        for rows in by_cfg.values():
            sims = [s for _, s in sorted(rows)]
            assert sims == sorted(sims)

    def test_aggregates_recompute(self):
        recs, aggs = run_benchmark(dataset(4), DOT, budgets=[2, 50])
        assert aggregate(recs) == aggs
        for a in aggs:
            rs = [r for r in recs if (r.pivot, r.estimate, r.budget) == (a.pivot, a.estimate, a.budget)]
            assert a.similarity == sum(r.similarity for r in rs) / len(rs)
            assert a.graph_x == AGGREGATE_ID

    def test_deterministic_except_time(self):
        a, _ = run_benchmark(dataset(4), DOT, budgets=[2, 10, 100], seed=3)
        b, _ = run_benchmark(dataset(4), DOT, budgets=[2, 10, 100], seed=3)
        strip = lambda rs: [(r.graph_x, r.graph_y, r.pivot, r.budget, r.recursions_used, r.best_weight, r.completed) for r in rs]  # noqa: E731
        assert strip(a) == strip(b)

    def test_snapshot_matches_rerun(self):
        data = dataset(3, n=5, seed=5)
        budgets = [2, 5, 10, 50, 100]
        recs, _ = run_benchmark(data, DOT, budgets=budgets, seed=9)
        names = dict(data)
        pairs = {(r.graph_x, r.graph_y) for r in recs}
        index = {p: k for k, p in enumerate(sorted(pairs))}
        for r in recs:
            x, y = names[r.graph_x], names[r.graph_y]
            cfg = SolverConfig(pivot=r.pivot, estimate=r.estimate, budget=r.budget,
                               rng_seed=9 ^ index[(r.graph_x, r.graph_y)])
            fresh = graph_kernel(x, y, DOT, cfg)
            assert fresh.kernel_value == r.best_weight

    def test_bad_budgets(self):
        with pytest.raises(ValueError):
            run_benchmark(dataset(2), DOT, budgets=[10, 5])
        with pytest.raises(ValueError):
            run_benchmark([], DOT)

    def test_csv(self):
        recs, aggs = run_benchmark(dataset(3), DOT, budgets=[2, 5])
        text = records_to_csv(recs + aggs)
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == CSV_COLUMNS
        assert len(rows) == 1 + len(recs) + len(aggs)
        assert all(len(r) == len(CSV_COLUMNS) for r in rows)
        float(rows[1][CSV_COLUMNS.index("similarity")])


def test_deg_vs_cs_report():
    states, worse = deg_vs_cs(dataset(3, n=3), DOT)
    assert states > 0 and 0 <= worse <= states


def test_weighted_solver_on_generated_graphs():
    z = generate_random_weighted(10, 0.5, seed=1)
    assert solve(z, SolverConfig(estimate="sum")).completed
