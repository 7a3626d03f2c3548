"""Graph matching by maximum weight clique search on an association graph.

For attributed graphs X and Y the association graph has one vertex per pair
``(i, j)`` of ``V_X x V_Y``.  Two pair-vertices ``(i, j)`` and ``(r, s)`` are
adjacent iff ``i != r`` and ``j != s``, so cliques are exactly the partial
injective maps X -> Y.  Weights are attribute-kernel values:

* vertex ``(i, j)``:  ``k(a_X(i, i), a_Y(j, j))``
* edge   ``(i, j)-(r, s)``:  ``k(a_X(i, r), a_Y(j, s))``

so the weight of a clique equals the matching objective of its map, counting
every unordered vertex pair of the domain once.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .graph import Attribute, AttributedGraph, WeightedGraph
from .solver import SearchState, SolverConfig, SolverReport, solve


@dataclass(frozen=True)
class AttributeKernel:
    """Kernel on attributes; any comparison involving the null attribute is 0."""

    kind: str = "dot"
    sigma: float = 1.0

    def __post_init__(self):
        if self.kind not in ("dot", "rbf", "discrete"):
            raise ValueError(f"unknown attribute kernel {self.kind!r}")
        if self.kind == "rbf" and not self.sigma > 0:
            raise ValueError("rbf kernel needs sigma > 0")

    @classmethod
    def dot(cls) -> "AttributeKernel":
        return cls("dot")

    @classmethod
    def rbf(cls, sigma: float = 1.0) -> "AttributeKernel":
        return cls("rbf", sigma)

    @classmethod
    def discrete(cls) -> "AttributeKernel":
        return cls("discrete")

    def __call__(self, a: Attribute, b: Attribute) -> float:
        if a is None or b is None:
            return 0.0
        if self.kind == "discrete":
            return 1.0 if a == b else 0.0
        if len(a) != len(b):
            raise ValueError(f"attribute dimensions differ: {len(a)} vs {len(b)}")
        if self.kind == "dot":
            return math.fsum(x * y for x, y in zip(a, b))
        d2 = math.fsum((x - y) ** 2 for x, y in zip(a, b))
        return math.exp(-d2 / (2.0 * self.sigma**2))


def kernel_eval(k: AttributeKernel, a: Attribute, b: Attribute) -> float:
    return k(a, b)


@dataclass(frozen=True)
class PartialMorphism:
    """Partial injective map, stored as sorted ``(i, j)`` pairs of indices."""

    pairs: tuple = ()

    def __post_init__(self):
        pairs = tuple(sorted((int(i), int(j)) for i, j in self.pairs))
        src = [i for i, _ in pairs]
        dst = [j for _, j in pairs]
        if len(set(src)) != len(src) or len(set(dst)) != len(dst):
            raise ValueError(f"mapping {pairs} is not injective")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_dict(cls, mapping: dict) -> "PartialMorphism":
        return cls(tuple(mapping.items()))

    @property
    def domain(self) -> frozenset:
        return frozenset(i for i, _ in self.pairs)

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def labelled(self, x: AttributedGraph, y: AttributedGraph) -> dict:
        return {x.ids[i]: y.ids[j] for i, j in self.pairs}


class CSTracker:
    """Running Cauchy-Schwarz bound ``l(X - X_C) * l(Y - Y_C)`` for one solve.

    ``push``/``pop`` cost O(|C|): entering ``(i, j)`` removes the self-kernel
    mass of every X pair between ``i`` and the already projected vertices
    (``i`` itself included), and likewise on the Y side.
    """

    def __init__(self, assoc: "AssociationGraph"):
        self.assoc = assoc
        self.xs: list[int] = []
        self.ys: list[int] = []
        self.removed: list[tuple[float, float]] = []
        self.rem_x = 0.0
        self.rem_y = 0.0

    def push(self, v: int) -> None:
        i, j = self.assoc.pair_of[v]
        sx, sy = self.assoc.self_kernel_x[i], self.assoc.self_kernel_y[j]
        dx = sx[i] + sum(sx[r] for r in self.xs)
        dy = sy[j] + sum(sy[s] for s in self.ys)
        self.xs.append(i)
        self.ys.append(j)
        self.removed.append((dx, dy))
        self.rem_x += dx
        self.rem_y += dy

    def pop(self, v: int) -> None:
        self.xs.pop()
        self.ys.pop()
        dx, dy = self.removed.pop()
        self.rem_x -= dx
        self.rem_y -= dy

    def value(self) -> float:
        lx2 = max(0.0, self.assoc.total_x - self.rem_x)
        ly2 = max(0.0, self.assoc.total_y - self.rem_y)
        return math.sqrt(lx2) * math.sqrt(ly2)


class AssociationGraph:
    """Weighted association graph ``X (x) Y`` with provenance to its factors."""

    def __init__(self, x: AttributedGraph, y: AttributedGraph, kernel: AttributeKernel):
        if x.n == 0 or y.n == 0:
            raise ValueError("association graphs need nonempty factors")
        self.x, self.y, self.kernel = x, y, kernel
        nx, ny = x.n, y.n
        self.pair_of = [(i, j) for i in range(nx) for j in range(ny)]

        # kernel values between X pair attributes and Y pair attributes
        xattr = [[x.attr(i, r) for r in range(nx)] for i in range(nx)]
        yattr = [[y.attr(j, s) for s in range(ny)] for j in range(ny)]
        vweights = [kernel(xattr[i][i], yattr[j][j]) for i, j in self.pair_of]
        xpairs = [(i, r) for i in range(nx) for r in range(i + 1, nx)]
        ypairs = [(j, s) for j in range(ny) for s in range(ny) if j != s]
        eweights = {}
        for i, r in xpairs:
            a = xattr[i][r]
            for j, s in ypairs:
                eweights[(i * ny + j, r * ny + s)] = kernel(a, yattr[j][s])
        ids = [json.dumps([x.ids[i], y.ids[j]]) for i, j in self.pair_of]
        self.weighted = WeightedGraph(ids, vweights, eweights)

        self.self_kernel_x = [[kernel(a, a) for a in row] for row in xattr]
        self.self_kernel_y = [[kernel(b, b) for b in row] for row in yattr]
        self.total_x = _closed_form_sq(self.self_kernel_x)
        self.total_y = _closed_form_sq(self.self_kernel_y)

    @property
    def n(self) -> int:
        return self.weighted.n

    def vertex(self, i: int, j: int) -> int:
        if not (0 <= i < self.x.n and 0 <= j < self.y.n):
            raise KeyError(f"no pair-vertex ({i}, {j})")
        return i * self.y.n + j

    def cs_tracker(self) -> CSTracker:
        return CSTracker(self)


def _closed_form_sq(table) -> float:
    n = len(table)
    return math.fsum(table[i][j] for i in range(n) for j in range(i, n))


def build_association(
    x: AttributedGraph, y: AttributedGraph, kernel: AttributeKernel
) -> AssociationGraph:
    return AssociationGraph(x, y, kernel)


def clique_to_morphism(a: AssociationGraph, clique: Iterable[int]) -> PartialMorphism:
    clique = frozenset(clique)
    if not a.weighted.is_clique(clique):
        raise ValueError(f"{sorted(clique)} is not a clique of the association graph")
    return PartialMorphism(tuple(a.pair_of[v] for v in clique))


def morphism_to_clique(a: AssociationGraph, phi: PartialMorphism | dict) -> frozenset:
    if isinstance(phi, dict):
        phi = PartialMorphism.from_dict(phi)
    return frozenset(a.vertex(i, j) for i, j in phi.pairs)


def graph_length(x: AttributedGraph, kernel: AttributeKernel) -> float:
    """``sqrt(k(X, X))`` via the identity map, without any clique search."""
    sq = math.fsum(kernel(a, a) for a in (x.vertex_attr(i) for i in x.vertices))
    sq += math.fsum(kernel(a, a) for _, a in x.edge_items())
    return math.sqrt(max(0.0, sq))


def estimate_cs(a: AssociationGraph, state: SearchState) -> float:
    """Cauchy-Schwarz bound recomputed from scratch via graph deletion."""
    cx = {a.pair_of[v][0] for v in state.C}
    cy = {a.pair_of[v][1] for v in state.C}
    return graph_length(a.x.delete_subgraph(cx), a.kernel) * graph_length(
        a.y.delete_subgraph(cy), a.kernel
    )


@dataclass
class MatchResult:
    kernel_value: float
    length_x: float
    length_y: float
    similarity: Optional[float]
    morphism: PartialMorphism
    report: SolverReport


def graph_kernel(
    x: AttributedGraph,
    y: AttributedGraph,
    kernel: AttributeKernel,
    config: SolverConfig | None = None,
) -> MatchResult:
    """Solve the matching problem on ``X (x) Y`` and decode the best clique."""
    config = config or SolverConfig(estimate="cs")
    assoc = AssociationGraph(x, y, kernel)
    report = solve(assoc.weighted, config, assoc)
    lx, ly = graph_length(x, kernel), graph_length(y, kernel)
    sim = report.best_weight / (lx * ly) if lx > 0 and ly > 0 else None
    return MatchResult(
        kernel_value=report.best_weight,
        length_x=lx,
        length_y=ly,
        similarity=sim,
        morphism=clique_to_morphism(assoc, report.best_clique),
        report=report,
    )


def similarity(
    x: AttributedGraph,
    y: AttributedGraph,
    kernel: AttributeKernel,
    config: SolverConfig | None = None,
) -> float:
    result = graph_kernel(x, y, kernel, config)
    if result.similarity is None:
        raise ValueError("similarity is undefined for a graph of length 0")
    return result.similarity


def morphism_objective(
    x: AttributedGraph, y: AttributedGraph, kernel: AttributeKernel, phi: PartialMorphism
) -> float:
    """Matching objective of ``phi`` summed over unordered pairs of its domain."""
    pairs = phi.pairs
    total = []
    for a, (i, j) in enumerate(pairs):
        for r, s in pairs[a:]:
            total.append(kernel(x.attr(i, r), y.attr(j, s)))
    return math.fsum(total)


def brute_force_kernel(
    x: AttributedGraph, y: AttributedGraph, kernel: AttributeKernel
) -> tuple[float, PartialMorphism]:
    """Maximize the matching objective over every partial injective map."""
    best, best_phi = 0.0, PartialMorphism()
    for size in range(1, min(x.n, y.n) + 1):
        for dom in itertools.combinations(range(x.n), size):
            for img in itertools.permutations(range(y.n), size):
                phi = PartialMorphism(tuple(zip(dom, img)))
                val = morphism_objective(x, y, kernel, phi)
                if val > best:
                    best, best_phi = val, phi
    return best, best_phi

