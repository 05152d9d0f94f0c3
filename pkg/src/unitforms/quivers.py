"""Quivers with totally ordered arrows and their incidence data.

Vertices are ``1..n_vertices``; arrow ``i`` is ``arrows[i-1]``, so the arrow
order is simply list order.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from . import _matrix as mx
from .errors import ColumnNotIncidenceError, InvalidWalkError, NotConnectedError
from .forms import Bigraph, UnitForm, rank_corank


class Arrow(NamedTuple):
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    n_vertices: int
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        arrows = tuple(Arrow(int(s), int(t)) for s, t in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if self.n_vertices < 1:
            raise ValueError("a quiver needs at least one vertex")
        for k, (s, t) in enumerate(arrows, 1):
            if s == t:
                raise ValueError(f"arrow {k} is a loop at vertex {s}")
            if not (1 <= s <= self.n_vertices and 1 <= t <= self.n_vertices):
                raise ValueError(f"arrow {k} = ({s}, {t}) leaves the vertex set")

    @classmethod
    def from_arrows(cls, arrows: Sequence[Sequence[int]], n_vertices: int | None = None) -> Quiver:
        arrows = [tuple(a) for a in arrows]
        if n_vertices is None:
            n_vertices = max((max(a) for a in arrows), default=1)
        return cls(n_vertices, tuple(Arrow(*a) for a in arrows))

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def arrow(self, i: int) -> Arrow:
        if not 1 <= i <= self.n_arrows:
            raise IndexError(f"arrow {i} out of range 1..{self.n_arrows}")
        return self.arrows[i - 1]

    def minu(self, i: int) -> frozenset[int]:
        """Vertices incident to arrow i."""
        return frozenset(self.arrow(i))

    def other_end(self, i: int, v: int) -> int:
        s, t = self.arrow(i)
        if v == s:
            return t
        if v == t:
            return s
        raise ValueError(f"vertex {v} is not incident to arrow {i}")

    def are_parallel(self, i: int, j: int) -> bool:
        return self.minu(i) == self.minu(j)

    def are_adjacent(self, i: int, j: int) -> bool:
        return bool(self.minu(i) & self.minu(j))

    def neighbours(self, i: int) -> list[int]:
        """Q1(i): arrows other than i sharing a vertex with i."""
        mi = self.minu(i)
        return [k for k in range(1, self.n_arrows + 1) if k != i and mi & self.minu(k)]

    def degree(self, v: int) -> int:
        return sum(v in a for a in self.arrows)

    def arrows_at(self, v: int) -> list[int]:
        return [k for k, a in enumerate(self.arrows, 1) if v in a]

    def sigma(self, v: int, i: int) -> int:
        s, t = self.arrow(i)
        return 1 if v == s else -1 if v == t else 0

    def pairing(self, i: int, j: int) -> int:
        """<i, j> = I_i^T I_j."""
        return sum(self.sigma(v, i) * self.sigma(v, j) for v in self.minu(i) | self.minu(j))

    def to_json(self) -> dict:
        return {"vertices": self.n_vertices, "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data) -> Quiver:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["vertices"]), tuple(Arrow(*a) for a in data["arrows"]))

    def to_text(self) -> str:
        return "".join(f"{s} -> {t}\n" for s, t in self.arrows)

    @classmethod
    def from_text(cls, text: str, n_vertices: int | None = None) -> Quiver:
        arrows = []
        for line in re.split(r"[\n;,]", text):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            m = re.fullmatch(r"(\d+)\s*->\s*(\d+)", line)
            if m is None:
                raise ValueError(f"cannot parse arrow {line!r}")
            arrows.append((int(m.group(1)), int(m.group(2))))
        return cls.from_arrows(arrows, n_vertices)


class Step(NamedTuple):
    arrow: int
    direction: int


@dataclass(frozen=True)
class Walk:
    start: int
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Step(int(a), int(e)) for a, e in self.steps))

    def vertices(self, quiver: Quiver) -> list[int]:
        """The vertex sequence v_0, ..., v_l, checking that the steps chain."""
        vs = [self.start]
        for arrow, eps in self.steps:
            if eps not in (1, -1):
                raise InvalidWalkError(f"direction must be +1 or -1, got {eps}")
            try:
                s, t = quiver.arrow(arrow)
            except IndexError as exc:
                raise InvalidWalkError(str(exc)) from None
            here, there = (s, t) if eps == 1 else (t, s)
            if here != vs[-1]:
                raise InvalidWalkError(f"arrow {arrow}^{eps:+d} does not start at vertex {vs[-1]}")
            vs.append(there)
        return vs

    def end(self, quiver: Quiver) -> int:
        return self.vertices(quiver)[-1]

    def __len__(self):
        return len(self.steps)

    def reverse(self, quiver: Quiver) -> Walk:
        return Walk(self.end(quiver), tuple(Step(a, -e) for a, e in reversed(self.steps)))


def incidence_matrix(quiver: Quiver) -> mx.Matrix:
    """m x n matrix whose column i is e_sou(i) - e_tar(i)."""
    m = mx.zeros(quiver.n_vertices, quiver.n_arrows)
    for i, (s, t) in enumerate(quiver.arrows):
        m[s - 1][i] = 1
        m[t - 1][i] = -1
    return m


def quiver_from_incidence(matrix, n_vertices: int | None = None) -> Quiver:
    """Inverse of :func:`incidence_matrix`; every column must be e_s - e_t."""
    rows = len(matrix) if n_vertices is None else n_vertices
    n_cols = len(matrix[0]) if len(matrix) else 0
    arrows = []
    for j in range(n_cols):
        col = [matrix[i][j] for i in range(len(matrix))]
        plus = [i for i, x in enumerate(col) if x == 1]
        minus = [i for i, x in enumerate(col) if x == -1]
        if len(plus) != 1 or len(minus) != 1 or any(x not in (0, 1, -1) for x in col):
            raise ColumnNotIncidenceError(f"column {j + 1} = {col} is not of the form e_s - e_t")
        arrows.append(Arrow(plus[0] + 1, minus[0] + 1))
    return Quiver(rows, tuple(arrows))


def unit_form_of(quiver: Quiver) -> UnitForm:
    """q_Q: the unit form whose symmetric Gram matrix is I(Q)^T I(Q)."""
    arrows = quiver.arrows
    n = len(arrows)
    rows = []
    for i, (si, ti) in enumerate(arrows):
        row = [0] * n
        row[i] = 1
        for j in range(i + 1, n):
            sj, tj = arrows[j]
            row[j] = (si == sj) + (ti == tj) - (si == tj) - (ti == sj)
        rows.append(tuple(row))
    return UnitForm(n, tuple(rows))


def incidence_bigraph(quiver: Quiver) -> Bigraph:
    """Inc(Q): one vertex per arrow, signed edges from shared vertices."""
    n = quiver.n_arrows
    adj = mx.zeros(n, n)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for v in quiver.minu(i) & quiver.minu(j):
                adj[i - 1][j - 1] += -quiver.sigma(v, i) * quiver.sigma(v, j)
    return Bigraph(n, mx.to_tuple(adj))


def _components(quiver: Quiver) -> list[set[int]]:
    adj = {v: set() for v in range(1, quiver.n_vertices + 1)}
    for s, t in quiver.arrows:
        adj[s].add(t)
        adj[t].add(s)
    seen = set()
    comps = []
    for v in adj:
        if v in seen:
            continue
        comp = {v}
        queue = deque([v])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in comp:
                    comp.add(w)
                    queue.append(w)
        seen |= comp
        comps.append(comp)
    return comps


def is_connected(quiver: Quiver) -> bool:
    return len(_components(quiver)) == 1


class Structure(NamedTuple):
    connected: bool
    tree: bool
    one_tree: bool


def structural_predicates(quiver: Quiver) -> Structure:
    conn = is_connected(quiver)
    return Structure(
        conn,
        conn and quiver.n_arrows == quiver.n_vertices - 1,
        conn and quiver.n_arrows == quiver.n_vertices,
    )


def corank_of_quiver(quiver: Quiver, check: bool = True) -> int:
    """|Q1| - |Q0| + 1, cross-checked against the exact Gram corank."""
    if not is_connected(quiver):
        raise NotConnectedError("corank formula needs a connected quiver")
    c = quiver.n_arrows - quiver.n_vertices + 1
    if check and quiver.n_arrows:
        exact = rank_corank(unit_form_of(quiver))[1]
        assert exact == c, (exact, c)
    return c


def canonical_extension_quiver(n: int, c: int) -> Quiver:
    """Linear quiver 1 -> 2 -> ... -> n+1 followed by c arrows n+1 -> 1."""
    if n < 1 or c < 0:
        raise ValueError("need n >= 1 and c >= 0")
    arrows = [Arrow(k, k + 1) for k in range(1, n + 1)]
    arrows += [Arrow(n + 1, 1)] * c
    return Quiver(n + 1, tuple(arrows))


def walk_vector(quiver: Quiver, walk: Walk) -> list[int]:
    """I_alpha = sum eps_t I_(i_t); telescopes to e_start - e_end."""
    vs = walk.vertices(quiver)
    vec = [0] * quiver.n_vertices
    for arrow, eps in walk.steps:
        s, t = quiver.arrow(arrow)
        vec[s - 1] += eps
        vec[t - 1] -= eps
    expected = [0] * quiver.n_vertices
    expected[vs[0] - 1] += 1
    expected[vs[-1] - 1] -= 1
    assert vec == expected
    return vec


def relabel_vertices(quiver: Quiver, mapping: dict[int, int]) -> Quiver:
    """Rename vertices through a bijection of 1..n_vertices."""
    return Quiver(quiver.n_vertices, tuple(Arrow(mapping[s], mapping[t]) for s, t in quiver.arrows))


def induced_subquiver_arrows(quiver: Quiver, arrows: Sequence[int]) -> list[set[int]]:
    """Vertex sets of the connected pieces spanned by a subset of arrows."""
    parent: dict[int, int] = {}

    def find(v):
        while parent.setdefault(v, v) != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for k in arrows:
        s, t = quiver.arrow(k)
        parent[find(s)] = find(t)
    groups: dict[int, set[int]] = {}
    for v in list(parent):
        groups.setdefault(find(v), set()).add(v)
    return list(groups.values())
