import itertools
import random

import pytest

from bkclique.graph import AttributedGraph, WeightedGraph


def make_g1() -> WeightedGraph:
    # ids 1..4 map to indices 0..3
    return WeightedGraph.from_weights(
        [1, 1, 1, 2],
        {(0, 1): 1, (0, 2): 1, (1, 2): 1, (0, 3): 5},
        ids=["1", "2", "3", "4"],
    )


def make_x2() -> AttributedGraph:
    return AttributedGraph(["1", "2"], [[1.0], [1.0]], {(0, 1): [2.0]})


def make_y2() -> AttributedGraph:
    return AttributedGraph(["1'", "2'"], [[1.0], [1.0]], {(0, 1): [3.0]})


@pytest.fixture
def g1():
    return make_g1()


@pytest.fixture
def x2():
    return make_x2()


@pytest.fixture
def y2():
    return make_y2()


def random_weighted(n, p, seed, lo=0.0, hi=1.0):
    from bkclique.generate import generate_random_weighted

    return generate_random_weighted(n, p, lo, hi, seed)


def unit_graph(n, p, seed, vertex_weight=1.0, edge_weight=1.0):
    rng = random.Random(seed)
    edges = {
        (i, j): edge_weight
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    }
    return WeightedGraph.from_weights([vertex_weight] * n, edges)


# -- oracles that only use pairwise lookups -------------------------------


def naive_cliques(z):
    """Every clique as a frozenset, by testing each subset pair by pair."""
    out = []
    for size in range(z.n + 1):
        for combo in itertools.combinations(range(z.n), size):
            if all(z.has_edge(a, b) for a, b in itertools.combinations(combo, 2)):
                out.append(frozenset(combo))
    return out


def naive_weight(z, clique):
    total = 0.0
    for a in clique:
        wa = z.weight(a, a)
        total += 0.0 if wa is None else wa
    for a, b in itertools.combinations(sorted(clique), 2):
        total += z.weight(a, b)
    return total


def naive_maximal(z):
    cl = naive_cliques(z)
    return {c for c in cl if not any(c < d for d in cl)}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
