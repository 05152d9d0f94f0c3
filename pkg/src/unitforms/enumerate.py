"""Exhaustive and random generation of small quivers for sweeps.

Quivers are generated with vertices numbered in order of first appearance
along the arrow list, which picks exactly one representative per vertex
relabelling class while keeping every orientation and arrow order.
"""

from __future__ import annotations

import random
from typing import Iterator

from .quivers import Quiver, structural_predicates


def _extend(prefix: list[tuple[int, int]], used: int, remaining: int, max_vertices: int):
    if remaining == 0:
        yield prefix, used
        return
    for s in range(1, min(used + 1, max_vertices) + 1):
        used_s = max(used, s)
        for t in range(1, min(used_s + 1, max_vertices) + 1):
            if t == s:
                continue
            prefix.append((s, t))
            yield from _extend(prefix, max(used_s, t), remaining - 1, max_vertices)
            prefix.pop()


def quivers(n_arrows: int, max_vertices: int | None = None, connected: bool = True) -> Iterator[Quiver]:
    """All loop-less quivers with ``n_arrows`` arrows, one per vertex relabelling."""
    if max_vertices is None:
        max_vertices = n_arrows + 1
    for arrows, used in _extend([], 0, n_arrows, max_vertices):
        q = Quiver.from_arrows(list(arrows), used)
        if not connected or structural_predicates(q).connected:
            yield q


def connected_quivers(max_arrows: int, max_vertices: int | None = None) -> Iterator[Quiver]:
    for n in range(1, max_arrows + 1):
        yield from quivers(n, max_vertices)


def tree_quivers(n_arrows: int) -> Iterator[Quiver]:
    for q in quivers(n_arrows, n_arrows + 1):
        if q.n_vertices == n_arrows + 1:
            yield q


def one_tree_quivers(max_vertices: int) -> Iterator[Quiver]:
    for n in range(2, max_vertices + 1):
        for q in quivers(n, n):
            if q.n_vertices == n:
                yield q


def random_connected_quiver(rng: random.Random, n_arrows: int, n_vertices: int | None = None) -> Quiver:
    """Random spanning tree plus extra arrows, shuffled and randomly oriented."""
    if n_vertices is None:
        n_vertices = rng.randint(2, n_arrows + 1)
    n_vertices = max(2, min(n_vertices, n_arrows + 1))
    edges = [(rng.randint(1, v - 1), v) for v in range(2, n_vertices + 1)]
    while len(edges) < n_arrows:
        s, t = rng.sample(range(1, n_vertices + 1), 2)
        edges.append((s, t))
    rng.shuffle(edges)
    arrows = [(s, t) if rng.random() < 0.5 else (t, s) for s, t in edges]
    perm = list(range(1, n_vertices + 1))
    rng.shuffle(perm)
    return Quiver.from_arrows([(perm[s - 1], perm[t - 1]) for s, t in arrows], n_vertices)


def random_tree_quiver(rng: random.Random, n_arrows: int) -> Quiver:
    return random_connected_quiver(rng, n_arrows, n_arrows + 1)
