"""Reduction of trees to maximal stars and of 1-trees to maximal 1-stars.

Every reduction is a sequence of admissible FS-transformations, so the
accumulated matrix B is a strong congruence: Gram(out) = B^T Gram(in) B.
The recursions work on a subset of arrow positions at a time; arrows outside
the subset live in other components and never break admissibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import (
    NotAOneStarError,
    NotAOneTreeError,
    NotAStarError,
    NotATreeError,
    VertexNotInQuiverError,
)
from .quivers import Quiver, relabel_vertices, structural_predicates
from .transforms import IteratedTransform, PointInversion, compose, fst


@dataclass(frozen=True)
class OneStarShape:
    """Shape of a maximal 1-star with n+1 arrows whose parallel pair is (ell, m)."""

    n: int
    ell: int
    m: int

    def __post_init__(self):
        if not 1 <= self.ell < self.m <= self.n + 1:
            raise ValueError(f"need 1 <= ell < m <= n+1, got {self}")

    @property
    def gap(self) -> int:
        return self.m - self.ell

    def to_json(self) -> dict:
        return {"ell": self.ell, "m": self.m, "n": self.n}


class _Reducer:
    """Running quiver plus the iterated transformation applied so far."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        self.it = IteratedTransform.empty(quiver.n_arrows)

    def fs(self, i: int, j: int):
        self.it, self.quiver = compose(self.it, fst(self.quiver, i, j), self.quiver, require_admissible=True)

    def invert_arrows(self, arrows):
        if arrows:
            self.it, self.quiver = compose(self.it, PointInversion(frozenset(arrows)), self.quiver)


# -- shape helpers ----------------------------------------------------------

def _centers(quiver: Quiver, arrows: Sequence[int]) -> set[int]:
    if not arrows:
        return set()
    common = set(quiver.minu(arrows[0]))
    for k in arrows[1:]:
        common &= quiver.minu(k)
    return common


def _vertices(quiver: Quiver, arrows: Sequence[int]) -> set[int]:
    out = set()
    for k in arrows:
        out |= quiver.minu(k)
    return out


def star_centers(quiver: Quiver) -> set[int]:
    return _centers(quiver, range(1, quiver.n_arrows + 1))


def is_maximal_star(quiver: Quiver) -> bool:
    return structural_predicates(quiver).tree and bool(star_centers(quiver))


def is_maximal_one_star(quiver: Quiver) -> bool:
    return structural_predicates(quiver).one_tree and bool(star_centers(quiver))


def _local_shape(quiver: Quiver, arrows: Sequence[int]) -> OneStarShape:
    pairs = [
        (a + 1, b + 1)
        for a in range(len(arrows))
        for b in range(a + 1, len(arrows))
        if quiver.are_parallel(arrows[a], arrows[b])
    ]
    if len(pairs) != 1 or not _centers(quiver, arrows):
        raise NotAOneStarError("not a maximal 1-star")
    ell, m = pairs[0]
    return OneStarShape(len(arrows) - 1, ell, m)


def one_star_shape(quiver: Quiver) -> OneStarShape:
    if not is_maximal_one_star(quiver):
        raise NotAOneStarError("not a maximal 1-star")
    return _local_shape(quiver, range(1, quiver.n_arrows + 1))


def one_star_quiver(n: int, ell: int, m: int) -> Quiver:
    """The 1-star with shape (ell, m), center 1 and every arrow leaving the center.

    Leaves are numbered by the first arrow that reaches them.
    """
    OneStarShape(n, ell, m)
    arrows = []
    for t in range(1, n + 2):
        if t < m:
            arrows.append((1, t + 1))
        elif t == m:
            arrows.append((1, ell + 1))
        else:
            arrows.append((1, t))
    return Quiver.from_arrows(arrows, n + 1)


def star_quiver(n: int) -> Quiver:
    """Maximal star with n arrows 1 -> t+1."""
    return Quiver.from_arrows([(1, t + 1) for t in range(1, n + 1)], n + 1)


def _split(quiver: Quiver, arrows: Sequence[int], removed: int, root: int) -> list[int]:
    """Arrows of ``arrows`` (minus ``removed``) in the component of ``root``."""
    rest = [k for k in arrows if k != removed]
    reach = {root}
    changed = True
    while changed:
        changed = False
        for k in rest:
            mi = quiver.minu(k)
            if mi & reach and not mi <= reach:
                reach |= mi
                changed = True
    return [k for k in rest if quiver.minu(k) & reach]


# -- stars ------------------------------------------------------------------

def _recenter_star(r: _Reducer, arrows: Sequence[int], v: int):
    if v in _centers(r.quiver, arrows):
        return
    leaf_of = [k for k in arrows if v in r.quiver.minu(k)]
    if len(leaf_of) != 1:
        raise VertexNotInQuiverError(f"vertex {v} is not in this star")
    t = list(arrows).index(leaf_of[0]) + 1
    for _ in range(t):
        for a, b in zip(arrows[1:], arrows[:-1]):
            r.fs(a, b)
    assert v in _centers(r.quiver, arrows)


def _reduce_tree(r: _Reducer, arrows: list[int], v: int):
    if len(arrows) <= 1:
        return
    if len(arrows) > 2:
        top = arrows[-1]
        a, b = r.quiver.arrow(top)
        side_a = _split(r.quiver, arrows, top, a)
        side_b = _split(r.quiver, arrows, top, b)
        if not side_b or not side_a:
            center = a if not side_b else b
            _reduce_tree(r, side_a or side_b, center)
        else:
            x, y, side_x = (a, b, side_a) if arrows[-2] in side_a else (b, a, side_b)
            _reduce_tree(r, side_x, x)
            r.fs(arrows[-2], top)
            _reduce_tree(r, arrows[:-1], y)
    _recenter_star(r, arrows, v)


def recenter_star(star: Quiver, v: int) -> tuple[Quiver, IteratedTransform]:
    if not is_maximal_star(star):
        raise NotAStarError("input is not a maximal star")
    if not 1 <= v <= star.n_vertices:
        raise VertexNotInQuiverError(f"vertex {v} not in quiver")
    r = _Reducer(star)
    _recenter_star(r, list(range(1, star.n_arrows + 1)), v)
    return r.quiver, r.it


def tree_to_star(quiver: Quiver, v: int) -> tuple[Quiver, IteratedTransform]:
    """Admissible iterated FS-transformation taking a tree to a maximal star centered at v."""
    if not structural_predicates(quiver).tree:
        raise NotATreeError("input is not a tree quiver")
    if not 1 <= v <= quiver.n_vertices:
        raise VertexNotInQuiverError(f"vertex {v} not in quiver")
    r = _Reducer(quiver)
    _reduce_tree(r, list(range(1, quiver.n_arrows + 1)), v)
    assert is_maximal_star(r.quiver) and v in star_centers(r.quiver)
    return r.quiver, r.it


# -- 1-stars ----------------------------------------------------------------

def _one_star_plan(shape: OneStarShape) -> list[tuple[int, int]]:
    """Local FS pairs moving the center to the leaf of arrow 1."""
    n, ell, m = shape.n, shape.ell, shape.m
    w = [(t + 1, t) for t in range(1, n + 1)]
    if ell > 1:
        return w
    if m > 2:
        return [p for p in w if p != (m, m - 1)]
    big_m = [(t, t + 1) for t in range(n, 0, -1)]
    small_m = [(t, t + 1) for t in range(n - 1, 0, -1)]
    return big_m * (n - 1) + small_m


def next_shape(shape: OneStarShape) -> OneStarShape:
    """Shape after one recentering step."""
    if shape.ell > 1:
        return OneStarShape(shape.n, shape.ell - 1, shape.m - 1)
    return OneStarShape(shape.n, shape.m - 1, shape.n + 1)


def _one_star_step(r: _Reducer, arrows: Sequence[int]) -> OneStarShape:
    shape = _local_shape(r.quiver, arrows)
    for a, b in _one_star_plan(shape):
        r.fs(arrows[a - 1], arrows[b - 1])
    return _local_shape(r.quiver, arrows)


def _recenter_one_star(r: _Reducer, arrows: Sequence[int], v: int):
    if v not in _vertices(r.quiver, arrows):
        raise VertexNotInQuiverError(f"vertex {v} is not in this 1-star")
    # each step moves the center to the next leaf, so len(arrows) steps suffice
    for _ in range(len(arrows) + 1):
        if v in _centers(r.quiver, arrows):
            return
        _one_star_step(r, arrows)
    raise AssertionError(f"recentering never reached vertex {v}")


def recenter_one_star(star: Quiver, v: int) -> tuple[Quiver, IteratedTransform]:
    if not is_maximal_one_star(star):
        raise NotAOneStarError("input is not a maximal 1-star")
    r = _Reducer(star)
    _recenter_one_star(r, list(range(1, star.n_arrows + 1)), v)
    return r.quiver, r.it


def one_star_step(star: Quiver) -> tuple[Quiver, IteratedTransform, OneStarShape]:
    """One recentering move (W, W_m or M^(n-1) M_n); returns the new shape."""
    if not is_maximal_one_star(star):
        raise NotAOneStarError("input is not a maximal 1-star")
    r = _Reducer(star)
    shape = _one_star_step(r, list(range(1, star.n_arrows + 1)))
    return r.quiver, r.it, shape


def _reduce_one_tree(r: _Reducer, arrows: list[int], v: int):
    if len(arrows) > 2:
        top = arrows[-1]
        a, b = r.quiver.arrow(top)
        side_a = _split(r.quiver, arrows, top, a)
        if b in _vertices(r.quiver, side_a):
            # removing the top arrow leaves a spanning tree
            _reduce_tree(r, side_a, a)
        else:
            side_b = _split(r.quiver, arrows, top, b)
            if not side_b or not side_a:
                center = a if not side_b else b
                _reduce_one_tree(r, side_a or side_b, center)
            else:
                x, y, side_x = (a, b, side_a) if arrows[-2] in side_a else (b, a, side_b)
                below = arrows[-2]
                if len(side_x) == len(_vertices(r.quiver, side_x)):
                    _reduce_one_tree(r, side_x, x)
                else:
                    _reduce_tree(r, side_x, x)
                w = r.quiver.other_end(below, x)
                cycle = any(k != below and r.quiver.are_parallel(k, below) for k in side_x)
                r.fs(below, top)
                if cycle:
                    _reduce_tree(r, arrows[:-1], w)
                else:
                    _reduce_one_tree(r, arrows[:-1], y)
    _recenter_one_star(r, arrows, v)


def one_tree_to_one_star(quiver: Quiver, v: int | None = None) -> tuple[Quiver, OneStarShape, IteratedTransform]:
    """Admissible iterated FS-transformation taking a 1-tree to a maximal 1-star.

    With ``v`` given the result is centered at v; otherwise the center is
    whatever the reduction produces first.
    """
    if not structural_predicates(quiver).one_tree:
        raise NotAOneTreeError("input is not a 1-tree quiver")
    arrows = list(range(1, quiver.n_arrows + 1))
    r = _Reducer(quiver)
    target = v if v is not None else quiver.arrow(quiver.n_arrows).source
    if not 1 <= target <= quiver.n_vertices:
        raise VertexNotInQuiverError(f"vertex {target} not in quiver")
    _reduce_one_tree(r, arrows, target)
    return r.quiver, one_star_shape(r.quiver), r.it


# -- canonical representatives ---------------------------------------------

def one_star_class(shape: OneStarShape) -> int:
    """d = min(m - ell, n + 1 - (m - ell))."""
    return min(shape.gap, shape.n + 1 - shape.gap)


def normalize_one_star(shape: OneStarShape) -> tuple[int, list[OneStarShape], list[tuple[int, int]]]:
    """Class d, the shapes visited and the FS index pairs reaching (n+1-d, n+1)."""
    d = one_star_class(shape)
    target = OneStarShape(shape.n, shape.n + 1 - d, shape.n + 1)
    shapes = [shape]
    pairs: list[tuple[int, int]] = []
    while shapes[-1] != target:
        if len(shapes) > 2 * (shape.n + 2):
            raise AssertionError("shape walk did not reach the canonical shape")
        pairs.extend(_one_star_plan(shapes[-1]))
        shapes.append(next_shape(shapes[-1]))
    return d, shapes, pairs


def _orient_outward(r: _Reducer, center: int):
    flip = [k for k, a in enumerate(r.quiver.arrows, 1) if a.source != center]
    r.invert_arrows(flip)


def _canonical_labels(quiver: Quiver, center: int) -> Quiver:
    mapping = {center: 1}
    for a in quiver.arrows:
        for x in a:
            if x not in mapping:
                mapping[x] = len(mapping) + 1
    for x in range(1, quiver.n_vertices + 1):
        mapping.setdefault(x, len(mapping) + 1)
    return relabel_vertices(quiver, mapping)


def canonical_star(quiver: Quiver, center: int = 1) -> tuple[Quiver, IteratedTransform]:
    """Tree -> maximal star at ``center`` -> all arrows outward -> relabelled.

    The returned quiver equals ``star_quiver(n)``; the matrix is a strong
    congruence from q_Q to its unit form.
    """
    star, it = tree_to_star(quiver, center)
    r = _Reducer(star)
    r.it = it
    _orient_outward(r, center)
    return _canonical_labels(r.quiver, center), r.it


def canonical_one_star(quiver: Quiver) -> tuple[Quiver, int, IteratedTransform]:
    """1-tree -> 1-star of shape (n+1-d, n+1), arrows outward, relabelled.

    Returns the quiver (equal to ``one_star_quiver(n, n+1-d, n+1)``), d and the
    accumulated transformation.
    """
    star, shape, it = one_tree_to_one_star(quiver)
    r = _Reducer(star)
    r.it = it
    d, shapes, _ = normalize_one_star(shape)
    arrows = list(range(1, quiver.n_arrows + 1))
    for expected in shapes[1:]:
        got = _one_star_step(r, arrows)
        assert got == expected, (got, expected)
    centers = star_centers(r.quiver)
    center = r.quiver.arrow(1).source if len(centers) > 1 else min(centers)
    _orient_outward(r, center)
    return _canonical_labels(r.quiver, center), d, r.it
