"""Immutable attributed and weighted graphs.

Vertices are dense indices ``0..n-1`` in construction order; external string
ids are kept alongside for reporting.  Neighborhoods are Python ints used as
bitsets, so ``P & graph.adj[i]`` is the intersection step of Bron-Kerbosch.

An attribute is either ``None`` (the null attribute, "no attribute / no
edge") or a non-empty tuple of finite floats.  ``(0.0,)`` is a real attribute
and therefore a real edge.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from typing import Optional, Tuple, Union

Attribute = Optional[Tuple[float, ...]]
VertexSet = frozenset  # frozenset[int] of vertex indices

__all__ = [
    "Attribute",
    "AttributedGraph",
    "WeightedGraph",
    "bits",
    "clique_weight",
    "delete_subgraph",
    "induced_subgraph",
    "is_clique",
    "make_attribute",
    "mask_of",
    "mask_weight",
    "neighbors",
    "popcount",
    "weighted_degree",
]


def make_attribute(value: Union[None, float, int, Iterable[float]]) -> Attribute:
    """Normalize ``value`` into an :data:`Attribute`, validating finiteness."""
    if value is None:
        return None
    if isinstance(value, (int, float)):
        comps = (float(value),)
    else:
        comps = tuple(float(x) for x in value)
    if not comps:
        raise ValueError("attribute vector must have dimension >= 1")
    for x in comps:
        if not math.isfinite(x):
            raise ValueError(f"attribute component {x!r} is not finite")
    return comps


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class AttributedGraph:
    """Undirected graph with an attribute on every vertex and every edge.

    ``attr(i, j)`` is total over vertex pairs: vertex attribute for ``i == j``,
    edge attribute or ``None`` otherwise.
    """

    __slots__ = ("ids", "_index", "_vattr", "_eattr", "adj")

    def __init__(
        self,
        ids: Sequence[str],
        vertex_attrs: Sequence[object],
        edge_attrs: Mapping[Tuple[int, int], object] | None = None,
    ):
        ids = tuple(str(i) for i in ids)
        if len(set(ids)) != len(ids):
            raise ValueError("vertex ids must be distinct")
        if len(vertex_attrs) != len(ids):
            raise ValueError("one vertex attribute per vertex is required")
        n = len(ids)
        self.ids = ids
        self._index = {v: k for k, v in enumerate(ids)}
        self._vattr = tuple(self._check_attr(make_attribute(a)) for a in vertex_attrs)
        eattr: dict[Tuple[int, int], Tuple[float, ...]] = {}
        adj = [0] * n
        for (i, j), a in (edge_attrs or {}).items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) references an unknown vertex")
            if i == j:
                raise ValueError(f"self-loop on vertex {i}; use the vertex attribute")
            key = (i, j) if i < j else (j, i)
            a = self._check_attr(make_attribute(a))
            if a is None:
                continue
            if key in eattr and eattr[key] != a:
                raise ValueError(f"conflicting attributes for edge {key}")
            eattr[key] = a
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        self._eattr = eattr
        self.adj = tuple(adj)

    def _check_attr(self, a: Attribute) -> Attribute:
        return a

    @classmethod
    def _rebuild(cls, ids, vattr, eattr):
        return cls(ids, vattr, eattr)

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.ids)

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def vertices(self) -> range:
        return range(len(self.ids))

    @property
    def all_mask(self) -> int:
        return (1 << len(self.ids)) - 1

    def index(self, vertex_id: str) -> int:
        try:
            return self._index[str(vertex_id)]
        except KeyError:
            raise KeyError(f"unknown vertex id {vertex_id!r}") from None

    def labels(self, vertices: Iterable[int]) -> list[str]:
        return [self.ids[v] for v in sorted(vertices)]

    def _check_vertex(self, i: int) -> None:
        if not (isinstance(i, int) and 0 <= i < len(self.ids)):
            raise KeyError(f"unknown vertex {i!r}")

    def _check_subset(self, vertices: Iterable[int]) -> frozenset:
        vs = frozenset(vertices)
        for v in vs:
            self._check_vertex(v)
        return vs

    def attr(self, i: int, j: int) -> Attribute:
        self._check_vertex(i)
        self._check_vertex(j)
        if i == j:
            return self._vattr[i]
        return self._eattr.get((i, j) if i < j else (j, i))

    def vertex_attr(self, i: int) -> Attribute:
        self._check_vertex(i)
        return self._vattr[i]

    def edges(self) -> list[Tuple[int, int]]:
        """Edges as ``(i, j)`` with ``i < j``, sorted."""
        return sorted(self._eattr)

    def edge_items(self) -> list[Tuple[Tuple[int, int], Tuple[float, ...]]]:
        return sorted(self._eattr.items())

    @property
    def edge_count(self) -> int:
        return len(self._eattr)

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and bool(self.adj[i] >> j & 1)

    def neighbors(self, i: int) -> frozenset:
        self._check_vertex(i)
        return frozenset(bits(self.adj[i]))

    def degree(self, i: int) -> int:
        self._check_vertex(i)
        return popcount(self.adj[i])

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = self._check_subset(vertices)
        m = mask_of(vs)
        return all((self.adj[v] | (1 << v)) & m == m for v in vs)

    # -- derived graphs --------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]):
        """Return ``Z[S]``; vertices keep their relative order and ids."""
        keep = sorted(self._check_subset(vertices))
        remap = {old: new for new, old in enumerate(keep)}
        eattr = {
            (remap[i], remap[j]): a
            for (i, j), a in self._eattr.items()
            if i in remap and j in remap
        }
        return self._rebuild(
            [self.ids[v] for v in keep], [self._vattr[v] for v in keep], eattr
        )

    def delete_subgraph(self, vertices: Iterable[int]):
        """Return ``X - X[S]``: every attribute with both ends in ``S`` becomes null."""
        s = self._check_subset(vertices)
        vattr = [None if v in s else a for v, a in enumerate(self._vattr)]
        eattr = {
            k: a for k, a in self._eattr.items() if not (k[0] in s and k[1] in s)
        }
        return self._rebuild(self.ids, vattr, eattr)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AttributedGraph) or type(other) is not type(self):
            return NotImplemented
        return (
            self.ids == other.ids
            and self._vattr == other._vattr
            and self._eattr == other._eattr
        )

    def __hash__(self) -> int:
        return hash((self.ids, self._vattr, tuple(sorted(self._eattr.items()))))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, edges={self.edge_count})"

    @property
    def attr_dims(self) -> set[int]:
        dims = {len(a) for a in self._vattr if a is not None}
        dims.update(len(a) for a in self._eattr.values())
        return dims

    def to_weighted(self) -> "WeightedGraph":
        """Reinterpret a graph with one-dimensional attributes as weights."""
        if self.attr_dims - {1}:
            raise ValueError("weighted graphs need one-dimensional attributes")
        return WeightedGraph(self.ids, self._vattr, self._eattr)


class WeightedGraph(AttributedGraph):
    """Attributed graph with scalar real weights.

    ``w[i][j]`` is a dense table of weights with ``0.0`` standing in for the
    null attribute; edge existence is read from ``adj``, never from ``w``.
    """

    __slots__ = ("w", "all_positive")

    def __init__(self, ids, vertex_attrs, edge_attrs=None):
        super().__init__(ids, vertex_attrs, edge_attrs)
        n = len(self.ids)
        w = [[0.0] * n for _ in range(n)]
        for i, a in enumerate(self._vattr):
            if a is not None:
                w[i][i] = a[0]
        for (i, j), a in self._eattr.items():
            w[i][j] = w[j][i] = a[0]
        self.w = tuple(tuple(row) for row in w)
        self.all_positive = all(
            a[0] > 0 for a in self._vattr if a is not None
        ) and all(a[0] > 0 for a in self._eattr.values())

    def _check_attr(self, a: Attribute) -> Attribute:
        if a is not None and len(a) != 1:
            raise ValueError(f"weighted graph attributes must be scalars, got {a}")
        return a

    @classmethod
    def from_weights(
        cls,
        vertex_weights: Sequence[Optional[float]],
        edge_weights: Mapping[Tuple[int, int], float],
        ids: Sequence[str] | None = None,
    ) -> "WeightedGraph":
        if ids is None:
            ids = [str(k) for k in range(len(vertex_weights))]
        return cls(ids, list(vertex_weights), dict(edge_weights))

    def weight(self, i: int, j: int) -> Optional[float]:
        a = self.attr(i, j)
        return None if a is None else a[0]

    def weighted_degree(self, i: int) -> float:
        if self.vertex_attr(i) is None:
            raise ValueError(f"vertex {i} has a null weight")
        row = self.w[i]
        return row[i] + sum(row[j] for j in bits(self.adj[i]))

    def clique_weight(self, vertices: Iterable[int]) -> float:
        vs = sorted(self._check_subset(vertices))
        if not self.is_clique(vs):
            raise ValueError(f"{vs} is not a clique")
        return mask_weight(self, mask_of(vs))


def mask_weight(z: WeightedGraph, mask: int) -> float:
    """Sum of vertex and edge weights over a clique given as a bitmask."""
    vs = list(bits(mask))
    w = z.w
    total = 0.0
    for k, i in enumerate(vs):
        row = w[i]
        total += row[i]
        for j in vs[k + 1 :]:
            total += row[j]
    return total


def neighbors(z: AttributedGraph, i: int) -> frozenset:
    return z.neighbors(i)


def weighted_degree(z: WeightedGraph, i: int) -> float:
    return z.weighted_degree(i)


def clique_weight(z: WeightedGraph, vertices: Iterable[int]) -> float:
    return z.clique_weight(vertices)


def is_clique(z: AttributedGraph, vertices: Iterable[int]) -> bool:
    return z.is_clique(vertices)


def induced_subgraph(z: AttributedGraph, vertices: Iterable[int]):
    return z.induced_subgraph(vertices)


def delete_subgraph(z: AttributedGraph, vertices: Iterable[int]):
    return z.delete_subgraph(vertices)
