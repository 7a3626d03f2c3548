import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkclique.graph import AttributedGraph, WeightedGraph, make_attribute
from conftest import naive_cliques, naive_weight, random_weighted


def test_g1_oracle_values(g1):
    # freeze the hand-computed G1 numbers against the pairwise oracle first
    maximal = {c for c in naive_cliques(g1) if not any(c < d for d in naive_cliques(g1))}
    assert maximal == {frozenset({0, 1, 2}), frozenset({0, 3})}
    assert naive_weight(g1, {0, 3}) == 8
    assert naive_weight(g1, {0, 1, 2}) == 6
    assert max(naive_weight(g1, c) for c in naive_cliques(g1)) == 8


class TestAttribute:
    def test_null_differs_from_zero(self):
        assert make_attribute(None) is None
        assert make_attribute(0.0) == (0.0,)

    @pytest.mark.parametrize("bad", [[], [float("nan")], [1.0, float("inf")]])
    def test_rejects(self, bad):
        with pytest.raises(ValueError):
            make_attribute(bad)

    def test_zero_weight_edge_is_an_edge(self):
        g = WeightedGraph.from_weights([1, 1], {(0, 1): 0.0})
        assert g.has_edge(0, 1)
        assert not g.all_positive


class TestNeighbors:
    def test_g1(self, g1):
        assert g1.neighbors(0) == {1, 2, 3}
        assert 0 not in g1.neighbors(0)

    def test_edgeless(self):
        g = WeightedGraph.from_weights([1, 2, 3], {})
        assert all(g.neighbors(i) == frozenset() for i in g.vertices)

    def test_triangle(self):
        g = WeightedGraph.from_weights([0, 0, 0], {(0, 1): 1, (0, 2): 1, (1, 2): 1})
        assert g.neighbors(0) == {1, 2}

    def test_unknown_vertex(self, g1):
        with pytest.raises(KeyError):
            g1.neighbors(7)


class TestWeightedDegree:
    def test_g1(self, g1):
        assert [g1.weighted_degree(i) for i in g1.vertices] == [8, 3, 3, 7]

    def test_isolated(self):
        assert WeightedGraph.from_weights([2.5], {}).weighted_degree(0) == 2.5

    def test_unweighted_triangle_matches_degree(self):
        g = WeightedGraph.from_weights([0, 0, 0], {(0, 1): 1, (0, 2): 1, (1, 2): 1})
        assert all(g.weighted_degree(i) == g.degree(i) == 2 for i in g.vertices)

    def test_null_vertex_weight(self, g1):
        with pytest.raises(ValueError):
            g1.delete_subgraph({0}).weighted_degree(0)

    def test_unknown_vertex(self, g1):
        with pytest.raises(KeyError):
            g1.weighted_degree(-1)


class TestCliqueWeight:
    def test_examples(self, g1):
        assert g1.clique_weight(set()) == 0
        assert g1.clique_weight({0, 3}) == 8
        assert g1.clique_weight({0, 1, 2}) == 6

    def test_not_a_clique(self, g1):
        with pytest.raises(ValueError):
            g1.clique_weight({1, 3})

    def test_is_clique(self, g1):
        assert g1.is_clique({0, 3})
        assert not g1.is_clique({1, 3})
        assert g1.is_clique(set()) and g1.is_clique({2})


class TestDerived:
    def test_induced_identity(self, g1):
        assert g1.induced_subgraph(g1.vertices) == g1

    def test_induced_pair(self, g1):
        h = g1.induced_subgraph({0, 1})
        assert h.ids == ("1", "2")
        assert h.weight(0, 1) == 1 and h.weight(0, 0) == 1 and h.weight(1, 1) == 1

    def test_induced_nonadjacent(self, g1):
        h = g1.induced_subgraph({1, 3})
        assert h.n == 2 and h.edge_count == 0

    def test_induced_rejects_foreign(self, g1):
        with pytest.raises(KeyError):
            g1.induced_subgraph({0, 9})

    def test_delete_nothing(self, g1):
        assert g1.delete_subgraph(set()) == g1

    def test_delete_everything(self, g1):
        h = g1.delete_subgraph(g1.vertices)
        assert h.n == 4
        assert all(h.attr(i, j) is None for i in h.vertices for j in h.vertices)

    def test_delete_g1_pair(self, g1):
        h = g1.delete_subgraph({0, 1})
        assert h.weight(0, 0) is None and h.weight(1, 1) is None and h.weight(0, 1) is None
        assert h.weight(0, 2) == 1 and h.weight(1, 2) == 1 and h.weight(0, 3) == 5
        assert h.weight(2, 2) == 1 and h.weight(3, 3) == 2

    def test_deleted_graph_keeps_type(self, g1):
        assert isinstance(g1.delete_subgraph({0}), WeightedGraph)

    def test_weighted_requires_scalars(self):
        with pytest.raises(ValueError):
            WeightedGraph(["a"], [[1.0, 2.0]])

    def test_to_weighted(self):
        g = AttributedGraph(["a", "b"], [[1.0], [2.0]], {(0, 1): [3.0]})
        assert g.to_weighted().weight(0, 1) == 3.0
        with pytest.raises(ValueError):
            AttributedGraph(["a"], [[1.0, 2.0]]).to_weighted()

    def test_duplicate_ids(self):
        with pytest.raises(ValueError):
            AttributedGraph(["a", "a"], [[1.0], [1.0]])

    def test_empty_graph_is_legal(self):
        g = WeightedGraph.from_weights([], {})
        assert g.n == 0 and g.clique_weight(set()) == 0


graphs = st.builds(
    random_weighted,
    n=st.integers(1, 9),
    p=st.sampled_from([0.2, 0.5, 0.9]),
    seed=st.integers(0, 10_000),
)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_symmetry(z):
    for i, j in itertools.product(z.vertices, repeat=2):
        assert z.attr(i, j) == z.attr(j, i)
        assert z.w[i][j] == z.w[j][i]


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_incremental_weight_identity(z):
    for c in naive_cliques(z):
        common = [v for v in z.vertices if v not in c and all(z.has_edge(v, u) for u in c)]
        for v in common:
            step = z.weight(v, v) + sum(z.weight(v, u) for u in c)
            assert z.clique_weight(c | {v}) - z.clique_weight(c) == pytest.approx(step, abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(graphs, st.data())
def test_delete_preserves_outside_pairs(z, data):
    s = data.draw(st.sets(st.sampled_from(list(z.vertices))))
    h = z.delete_subgraph(s)
    for i, j in itertools.product(z.vertices, repeat=2):
        if i in s and j in s:
            assert h.attr(i, j) is None
        else:
            assert h.attr(i, j) == z.attr(i, j)


@settings(max_examples=40, deadline=None)
@given(graphs)
def test_clique_weight_matches_induced_sum(z):
    for c in naive_cliques(z):
        h = z.induced_subgraph(c)
        total = sum(h.weight(i, i) for i in h.vertices) + sum(a[0] for _, a in h.edge_items())
        assert z.clique_weight(c) == pytest.approx(total, abs=1e-12)


def test_unweighted_degree_identity():
    from conftest import unit_graph

    z = unit_graph(10, 0.5, seed=3, vertex_weight=0.0)
    assert all(z.weighted_degree(i) == len(z.neighbors(i)) for i in z.vertices)
