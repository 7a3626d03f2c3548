"""Bron-Kerbosch enumeration and branch-and-bound for maximum weight cliques.

Three searches share one pivot selector:

* :func:`enumerate_basic` visits every maximal clique without pivoting.
* :func:`enumerate_pivot` visits the same cliques, expanding only ``P - N(pivot)``.
* :func:`solve` keeps an incumbent and prunes a node unless
  ``w(C) + h(C) > w(C*)``,  where ``h`` is one of the estimates below.

Vertex sets are int bitmasks internally; public results are frozensets of
vertex indices.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, NamedTuple, Optional, Protocol, Sequence

from .graph import WeightedGraph, bits, mask_of, mask_weight

BRUTE_FORCE_MWCP_MAX_N = 20
BRUTE_FORCE_ENUMERATE_MAX_N = 16


class PivotStrategy(str, Enum):
    NONE = "none"
    FIRST = "first"
    RANDOM = "random"
    MAX_WDEG = "max_wdeg"
    MAX_WEIGHT_CLIQUE = "max_weight_clique"


class EstimateKind(str, Enum):
    INFINITE = "infinite"
    DEG = "deg"
    SUM = "sum"
    CS = "cs"


class EstimateTracker(Protocol):
    """Per-solve incremental bound, notified as vertices enter and leave ``C``."""

    def push(self, v: int) -> None: ...

    def pop(self, v: int) -> None: ...

    def value(self) -> float: ...


@dataclass(frozen=True)
class SearchState:
    C: frozenset
    P: frozenset
    S: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "C", frozenset(self.C))
        object.__setattr__(self, "P", frozenset(self.P))
        object.__setattr__(self, "S", frozenset(self.S))
        if self.C & self.P or self.C & self.S or self.P & self.S:
            raise ValueError("C, P and S must be pairwise disjoint")

    @classmethod
    def root(cls, z: WeightedGraph) -> "SearchState":
        return cls(frozenset(), frozenset(z.vertices))

    @classmethod
    def extending(cls, z: WeightedGraph, clique) -> "SearchState":
        """State for ``clique`` with ``P`` = every vertex adjacent to all of it."""
        cm = mask_of(clique)
        common = z.all_mask & ~cm
        for v in bits(cm):
            common &= z.adj[v]
        return cls(frozenset(clique), frozenset(bits(common)))


@dataclass(frozen=True)
class SolverConfig:
    pivot: PivotStrategy = PivotStrategy.MAX_WEIGHT_CLIQUE
    estimate: EstimateKind = EstimateKind.DEG
    budget: Optional[int] = None
    rng_seed: int = 0
    initial_incumbent: Optional[frozenset] = None
    trace_points: Optional[Sequence[int]] = None
    # "restricted": weighted degree inside Z[C u P]; "global": inside Z
    deg_scope: str = "restricted"

    def __post_init__(self):
        object.__setattr__(self, "pivot", PivotStrategy(self.pivot))
        object.__setattr__(self, "estimate", EstimateKind(self.estimate))
        if self.budget is not None and self.budget < 1:
            raise ValueError("budget must be a positive integer")
        if self.deg_scope not in ("restricted", "global"):
            raise ValueError(f"unknown deg_scope {self.deg_scope!r}")
        if self.initial_incumbent is not None:
            object.__setattr__(
                self, "initial_incumbent", frozenset(self.initial_incumbent)
            )
        if self.trace_points is not None:
            pts = tuple(sorted(set(int(t) for t in self.trace_points)))
            if pts and pts[0] < 1:
                raise ValueError("trace points must be positive")
            object.__setattr__(self, "trace_points", pts)


class TracePoint(NamedTuple):
    alpha: int
    recursions: int
    best_weight: float
    elapsed_ms: float
    completed: bool


@dataclass
class SolverReport:
    best_clique: frozenset
    best_weight: float
    recursions: int
    completed: bool
    trace: list = field(default_factory=list)
    improvements: list = field(default_factory=list)
    all_positive: bool = True


# -- per-node primitives on bitmasks ---------------------------------------


def _wdeg_within(z: WeightedGraph, i: int, mask: int) -> float:
    row = z.w[i]
    return row[i] + sum(row[j] for j in bits(z.adj[i] & mask))


def _gain(z: WeightedGraph, i: int, cmask: int) -> float:
    """``w(C + {i}) - w(C)`` for ``i`` adjacent to all of ``C``."""
    row = z.w[i]
    return row[i] + sum(row[j] for j in bits(cmask))


def _pick_pivot(z, strategy, cmask, pmask, rng) -> int:
    if not pmask:
        raise ValueError("cannot choose a pivot from an empty P")
    if strategy is PivotStrategy.FIRST:
        return (pmask & -pmask).bit_length() - 1
    if strategy is PivotStrategy.RANDOM:
        cand = list(bits(pmask))
        return cand[rng.randrange(len(cand))]
    if strategy is PivotStrategy.MAX_WDEG:
        scope = cmask | pmask
        score = lambda i: _wdeg_within(z, i, scope)  # noqa: E731
    elif strategy is PivotStrategy.MAX_WEIGHT_CLIQUE:
        score = lambda i: _gain(z, i, cmask)  # noqa: E731
    else:
        raise ValueError(f"strategy {strategy!r} does not choose a pivot")
    best, best_score = -1, 0.0
    for i in bits(pmask):
        s = score(i)
        if best < 0 or s > best_score:
            best, best_score = i, s
    return best


def _deg_bound(z, cmask, pmask, global_wdeg=None) -> float:
    if not pmask:
        return 0.0
    if global_wdeg is not None:
        return max(0.0, max(global_wdeg[i] for i in bits(pmask)))
    scope = cmask | pmask
    return max(0.0, max(_wdeg_within(z, i, scope) for i in bits(pmask)))


def _sum_bound(z, cmask, pmask) -> float:
    scope = cmask | pmask
    return sum(max(0.0, _wdeg_within(z, i, scope)) for i in bits(pmask))


# -- public state-level operations ----------------------------------------


def select_pivot(
    z: WeightedGraph,
    state: SearchState,
    strategy: PivotStrategy = PivotStrategy.MAX_WEIGHT_CLIQUE,
    rng: random.Random | None = None,
) -> int:
    """Choose ``i_p`` from ``state.P``; ties go to the least vertex index."""
    strategy = PivotStrategy(strategy)
    if strategy is PivotStrategy.RANDOM and rng is None:
        rng = random.Random(0)
    return _pick_pivot(z, strategy, mask_of(state.C), mask_of(state.P), rng)


def estimate_deg(z: WeightedGraph, state: SearchState, scope: str = "restricted") -> float:
    """Largest weighted degree over ``P``, measured inside ``Z[C u P]``.

    ``scope="global"`` measures the degree in the whole graph instead.
    """
    gw = None
    if scope == "global":
        gw = [_wdeg_within(z, i, z.all_mask) for i in z.vertices]
    return _deg_bound(z, mask_of(state.C), mask_of(state.P), gw)


def estimate_sum(z: WeightedGraph, state: SearchState) -> float:
    """Sum over ``P`` of the clamped weighted degrees inside ``Z[C u P]``.

    Admissible for non-negative weights: every vertex added to ``C``
    contributes at most its own restricted weighted degree.
    """
    return _sum_bound(z, mask_of(state.C), mask_of(state.P))


# -- enumeration -----------------------------------------------------------


def enumerate_basic(z: WeightedGraph, visitor: Callable[[frozenset], None]) -> int:
    """Visit every maximal clique once; return the number of ``bk`` calls."""
    calls = 0
    adj = z.adj

    def bk(c: int, p: int, s: int) -> None:
        nonlocal calls
        calls += 1
        if not p and not s:
            visitor(frozenset(bits(c)))
        for i in bits(p):
            bk(c | 1 << i, p & adj[i], s & adj[i])
            p &= ~(1 << i)
            s |= 1 << i

    bk(0, z.all_mask, 0)
    return calls


def enumerate_pivot(
    z: WeightedGraph,
    strategy: PivotStrategy,
    rng_seed: int,
    visitor: Callable[[frozenset], None],
) -> int:
    """Bron-Kerbosch with a pivot chosen from ``P`` by ``strategy``."""
    strategy = PivotStrategy(strategy)
    if strategy is PivotStrategy.NONE:
        raise ValueError("use enumerate_basic for the unpivoted search")
    rng = random.Random(rng_seed)
    calls = 0
    adj = z.adj

    def bk(c: int, p: int, s: int) -> None:
        nonlocal calls
        calls += 1
        if not p:
            if not s:
                visitor(frozenset(bits(c)))
            return
        ip = _pick_pivot(z, strategy, c, p, rng)
        for i in bits(p & ~adj[ip]):
            bk(c | 1 << i, p & adj[i], s & adj[i])
            p &= ~(1 << i)
            s |= 1 << i

    bk(0, z.all_mask, 0)
    return calls


# -- branch and bound ------------------------------------------------------


class _Stop(Exception):
    pass


class _Search:
    def __init__(self, z: WeightedGraph, config: SolverConfig, tracker, observer=None):
        self.z = z
        self.observer = observer
        self.cfg = config
        self.pivot = config.pivot
        self.estimate = config.estimate
        self.tracker = tracker
        self.rng = random.Random(config.rng_seed)
        self.budget = config.budget
        self.points = list(config.trace_points or ())
        self.next_point = 0
        self.calls = 0
        self.trace: list[TracePoint] = []
        self.improvements: list[tuple[int, float]] = []
        self.global_wdeg = None
        if self.estimate is EstimateKind.DEG and config.deg_scope == "global":
            self.global_wdeg = [_wdeg_within(z, i, z.all_mask) for i in z.vertices]
        self.best_mask = 0
        self.best_w = 0.0
        self.t0 = time.perf_counter()

    def _bound(self, c: int, p: int) -> float:
        est = self.estimate
        if est is EstimateKind.DEG:
            return _deg_bound(self.z, c, p, self.global_wdeg)
        if est is EstimateKind.SUM:
            return _sum_bound(self.z, c, p)
        return self.tracker.value()

    def _snapshot(self, completed: bool) -> None:
        self.trace.append(
            TracePoint(
                self.points[self.next_point],
                self.calls,
                self.best_w,
                (time.perf_counter() - self.t0) * 1000.0,
                completed,
            )
        )
        self.next_point += 1

    def bk(self, c: int, p: int, s: int, wc: float) -> None:
        self.calls += 1
        if self.observer is not None:
            self.observer(c, p, s, wc)
        if not p and not s and wc > self.best_w:
            self.best_mask, self.best_w = c, wc
            self.improvements.append((self.calls, wc))
        if self.next_point < len(self.points) and self.points[self.next_point] == self.calls:
            self._snapshot(False)
        if self.budget is not None and self.calls >= self.budget:
            raise _Stop
        if not p:
            return
        if self.estimate is not EstimateKind.INFINITE:
            if not wc + self._bound(c, p) > self.best_w:
                return
        if self.pivot is PivotStrategy.NONE:
            cand = p
        else:
            cand = p & ~self.z.adj[_pick_pivot(self.z, self.pivot, c, p, self.rng)]
        adj = self.z.adj
        tracker = self.tracker
        for i in bits(cand):
            gain = _gain(self.z, i, c)
            if tracker is not None:
                tracker.push(i)
            try:
                self.bk(c | 1 << i, p & adj[i], s & adj[i], wc + gain)
            finally:
                if tracker is not None:
                    tracker.pop(i)
            p &= ~(1 << i)
            s |= 1 << i


def solve(
    z: WeightedGraph,
    config: SolverConfig | None = None,
    estimate_context=None,
    observer: Optional[Callable[[int, int, int, float], None]] = None,
) -> SolverReport:
    """Find a maximum weight clique, optionally within a recursion budget.

    ``estimate_context`` is required for the ``cs`` estimate and must offer
    ``cs_tracker()`` returning an :class:`EstimateTracker` (association graphs
    do).  The initial incumbent, when given, must be a clique.  ``observer``
    is called on every ``bk`` entry with ``(C, P, S, w(C))``, sets as bitmasks.
    """
    config = config or SolverConfig()
    tracker = None
    if config.estimate is EstimateKind.CS:
        make = getattr(estimate_context, "cs_tracker", None)
        if make is None:
            raise ValueError("the cs estimate needs association-graph provenance")
        tracker = make()
    search = _Search(z, config, tracker, observer)
    if config.initial_incumbent is not None:
        inc = config.initial_incumbent
        if not z.is_clique(inc):
            raise ValueError(f"initial incumbent {sorted(inc)} is not a clique")
        search.best_mask = mask_of(inc)
        search.best_w = mask_weight(z, search.best_mask)
    completed = True
    try:
        search.bk(0, z.all_mask, 0, 0.0)
    except _Stop:
        completed = False
    if completed:
        while search.next_point < len(search.points):
            search._snapshot(True)
    return SolverReport(
        best_clique=frozenset(bits(search.best_mask)),
        best_weight=search.best_w,
        recursions=search.calls,
        completed=completed,
        trace=search.trace,
        improvements=search.improvements,
        all_positive=z.all_positive,
    )


# -- exhaustive oracles ----------------------------------------------------


def _clique_table(z: WeightedGraph) -> dict[int, float]:
    """Weight of every clique, built by growing masks one top vertex at a time."""
    table = {0: 0.0}
    for mask in range(1, 1 << z.n):
        top = mask.bit_length() - 1
        rest = mask ^ (1 << top)
        if rest not in table or z.adj[top] & rest != rest:
            continue
        row = z.w[top]
        table[mask] = table[rest] + row[top] + sum(row[j] for j in bits(rest))
    return table


def brute_force_mwcp(z: WeightedGraph) -> tuple[frozenset, float]:
    """Exhaustive maximum weight clique; ties go to the lexicographically least set."""
    if z.n > BRUTE_FORCE_MWCP_MAX_N:
        raise ValueError(f"brute force is capped at {BRUTE_FORCE_MWCP_MAX_N} vertices")
    best_key, best_w = (), 0.0
    found = False
    for mask, wt in _clique_table(z).items():
        key = tuple(bits(mask))
        if not found or wt > best_w or (wt == best_w and key < best_key):
            best_key, best_w, found = key, wt, True
    return frozenset(best_key), best_w


def brute_force_enumerate(z: WeightedGraph) -> set[frozenset]:
    """All inclusion-maximal cliques by exhaustive subset checks."""
    if z.n > BRUTE_FORCE_ENUMERATE_MAX_N:
        raise ValueError(
            f"brute force is capped at {BRUTE_FORCE_ENUMERATE_MAX_N} vertices"
        )
    out = set()
    for mask in _clique_table(z):
        common = z.all_mask & ~mask
        for v in bits(mask):
            common &= z.adj[v]
        if not common:
            out.add(frozenset(bits(mask)))
    return out


def all_cliques(z: WeightedGraph, limit: int = 200_000) -> dict[frozenset, float]:
    """Every clique (including the empty one) with its weight.

    Cliques are grown by appending vertices of increasing index, so each is
    produced once; ``limit`` caps the total count.
    """
    out: dict[frozenset, float] = {}
    adj, w = z.adj, z.w

    def grow(members: list, cand: int, wt: float) -> None:
        if len(out) >= limit:
            raise ValueError(f"more than {limit} cliques")
        out[frozenset(members)] = wt
        for v in bits(cand):
            row = w[v]
            gain = row[v] + sum(row[j] for j in members)
            members.append(v)
            grow(members, cand & adj[v] & ~((2 << v) - 1), wt + gain)
            members.pop()

    grow([], z.all_mask, 0.0)
    return out


__all__ = [
    "EstimateKind",
    "PivotStrategy",
    "SearchState",
    "SolverConfig",
    "SolverReport",
    "TracePoint",
    "all_cliques",
    "brute_force_enumerate",
    "brute_force_mwcp",
    "enumerate_basic",
    "enumerate_pivot",
    "estimate_deg",
    "estimate_sum",
    "select_pivot",
    "solve",
]
