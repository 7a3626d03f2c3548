"""Seeded random instances for tests and benchmarks."""

from __future__ import annotations

import random

from .graph import AttributedGraph, WeightedGraph

ATTR_SHIFT = 0.01


def _check(n: int, p: float) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError("edge probability must lie in [0, 1]")


def generate_random_weighted(
    n: int, p: float, lo: float = 0.0, hi: float = 1.0, seed: int = 0
) -> WeightedGraph:
    """G(n, p) with vertex and edge weights drawn from ``(lo, hi]``.

    ``hi - (hi - lo) * u`` with ``u`` in ``[0, 1)`` keeps ``lo`` itself out of
    range, so ``lo=0`` gives strictly positive weights.
    """
    _check(n, p)
    if lo > hi:
        raise ValueError("weight range needs lo <= hi")
    rng = random.Random(seed)
    draw = lambda: hi - (hi - lo) * rng.random()  # noqa: E731
    vw = [draw() for _ in range(n)]
    ew = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                ew[(i, j)] = draw()
    return WeightedGraph.from_weights(vw, ew, ids=[str(k + 1) for k in range(n)])


def generate_random_attributed(
    n: int, p: float, attr_dim: int = 1, seed: int = 0
) -> AttributedGraph:
    """G(n, p) with attribute vectors uniform on ``[0, 1]^d`` shifted by 0.01."""
    _check(n, p)
    if attr_dim < 1:
        raise ValueError("attr_dim must be >= 1")
    rng = random.Random(seed)
    vec = lambda: tuple(ATTR_SHIFT + rng.random() for _ in range(attr_dim))  # noqa: E731
    va = [vec() for _ in range(n)]
    ea = {}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                ea[(i, j)] = vec()
    return AttributedGraph([str(k + 1) for k in range(n)], va, ea)
