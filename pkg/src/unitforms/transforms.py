"""Point inversions, swaps, flations and FS-transformations.

Everything acts on the right: a form q becomes q∘T with G' = T^T G T, and a
quiver Q becomes Q·T with I(Q·T) = I(Q) T.  Indices are 1-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from . import _matrix as mx
from .errors import (
    NonUnitResult,
    NotAdmissibleError,
    ParallelArrowsError,
    WrongSign,
)
from .forms import UnitForm, transform_form
from .quivers import Arrow, Quiver


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class PointInversion:
    indices: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "indices", frozenset(int(c) for c in self.indices))

    def matrix(self, n: int) -> mx.Matrix:
        _check_indices(n, *self.indices)
        m = mx.identity(n)
        for c in self.indices:
            m[c - 1][c - 1] = -1
        return m

    def inverse(self) -> PointInversion:
        return self

    def to_json(self) -> dict:
        return {"op": "invert", "c": sorted(self.indices)}


@dataclass(frozen=True)
class Swap:
    i: int
    j: int

    def __post_init__(self):
        _check_distinct(self.i, self.j)

    def matrix(self, n: int) -> mx.Matrix:
        _check_indices(n, self.i, self.j)
        m = mx.identity(n)
        a, b = self.i - 1, self.j - 1
        m[a][a] = m[b][b] = 0
        m[a][b] = m[b][a] = 1
        return m

    def inverse(self) -> Swap:
        return self

    def to_json(self) -> dict:
        return {"op": "swap", "i": self.i, "j": self.j}


@dataclass(frozen=True)
class Flation:
    """T^eps_ij : x -> x - eps * x_i * e_j."""

    i: int
    j: int
    eps: int

    def __post_init__(self):
        _check_distinct(self.i, self.j)
        if self.eps not in (-1, 0, 1):
            raise ValueError("eps must be -1, 0 or +1")

    def matrix(self, n: int) -> mx.Matrix:
        _check_indices(n, self.i, self.j)
        m = mx.identity(n)
        m[self.j - 1][self.i - 1] = -self.eps
        return m

    def inverse(self) -> Flation:
        return Flation(self.i, self.j, -self.eps)

    def to_json(self) -> dict:
        return {"op": "flation", "i": self.i, "j": self.j, "eps": self.eps}


@dataclass(frozen=True)
class FST:
    """FS-transformation T^eps_ij S_ij."""

    i: int
    j: int
    eps: int

    def __post_init__(self):
        _check_distinct(self.i, self.j)
        if self.eps not in (-1, 0, 1):
            raise ValueError("eps must be -1, 0 or +1")

    def matrix(self, n: int) -> mx.Matrix:
        return mx.matmul(Flation(self.i, self.j, self.eps).matrix(n), Swap(self.i, self.j).matrix(n))

    def inverse(self) -> FST:
        return FST(self.j, self.i, -self.eps)

    def to_json(self) -> dict:
        return {"op": "fst", "i": self.i, "j": self.j, "eps": self.eps}


ElementaryTransform = Union[PointInversion, Swap, Flation, FST]
Context = Union[UnitForm, Quiver]


def _check_distinct(i, j):
    if i == j:
        raise ValueError(f"indices must be distinct, got {i} twice")


def _check_indices(n, *indices):
    for k in indices:
        if not 1 <= k <= n:
            raise IndexError(f"index {k} out of range 1..{n}")


def transform_matrix(t: ElementaryTransform, n: int) -> mx.Matrix:
    return t.matrix(n)


def transform_from_json(data) -> ElementaryTransform:
    op = data["op"]
    if op == "invert":
        return PointInversion(frozenset(data["c"]))
    if op == "swap":
        return Swap(data["i"], data["j"])
    if op == "flation":
        return Flation(data["i"], data["j"], data["eps"])
    if op == "fst":
        return FST(data["i"], data["j"], data["eps"])
    raise ValueError(f"unknown transformation {op!r}")


# -- sign conventions -------------------------------------------------------

def flation_sign(context: Context, i: int, j: int) -> int:
    """The sign making T^eps_ij a flation: sgn(q_ij), or -eps_i eps_j on quivers."""
    if isinstance(context, UnitForm):
        _check_indices(context.n, i, j)
        return _sgn(context.coeff(i, j))
    return _quiver_flation_sign(context, i, j)


def fst(context: Context, i: int, j: int) -> FST:
    """FS_ij with the sign read off the context."""
    return FST(i, j, flation_sign(context, i, j))


def _quiver_flation_sign(quiver: Quiver, i: int, j: int) -> int:
    shared = quiver.minu(i) & quiver.minu(j)
    if not shared:
        return 0
    v = min(shared)
    eps_i = 1 if quiver.arrow(i).target == v else -1
    eps_j = 1 if quiver.arrow(j).source == v else -1
    return -eps_i * eps_j


# -- application ------------------------------------------------------------

def apply_to_form(q: UnitForm, t: ElementaryTransform) -> UnitForm:
    if isinstance(t, (Flation, FST)):
        _check_indices(q.n, t.i, t.j)
        qij = q.coeff(t.i, t.j)
        if t.eps != _sgn(qij):
            raise WrongSign(f"eps={t.eps} but q_{t.i}{t.j}={qij}")
        if abs(qij) > 1:
            raise NonUnitResult(f"|q_{t.i}{t.j}| = {abs(qij)} > 1")
    return transform_form(q, t.matrix(q.n))


def apply_to_quiver(quiver: Quiver, t: ElementaryTransform) -> Quiver:
    arrows = list(quiver.arrows)
    if isinstance(t, PointInversion):
        _check_indices(quiver.n_arrows, *t.indices)
        for c in t.indices:
            s, tt = arrows[c - 1]
            arrows[c - 1] = Arrow(tt, s)
        return Quiver(quiver.n_vertices, tuple(arrows))
    _check_indices(quiver.n_arrows, t.i, t.j)
    if isinstance(t, Swap):
        arrows[t.i - 1], arrows[t.j - 1] = arrows[t.j - 1], arrows[t.i - 1]
        return Quiver(quiver.n_vertices, tuple(arrows))
    flated = _flate(quiver, t.i, t.j, t.eps)
    if isinstance(t, FST):
        return apply_to_quiver(flated, Swap(t.i, t.j))
    return flated


def _flate(quiver: Quiver, i: int, j: int, eps: int) -> Quiver:
    if not quiver.are_adjacent(i, j):
        if eps != 0:
            raise WrongSign(f"arrows {i} and {j} are not adjacent; only eps=0 applies")
        return quiver
    if quiver.are_parallel(i, j):
        raise ParallelArrowsError(f"arrows {i} and {j} are parallel")
    (v,) = quiver.minu(i) & quiver.minu(j)
    eps_i = 1 if quiver.arrow(i).target == v else -1
    eps_j = 1 if quiver.arrow(j).source == v else -1
    if eps != -eps_i * eps_j:
        raise WrongSign(f"flation of {i} by {j} needs eps={-eps_i * eps_j}, got {eps}")
    start = quiver.other_end(i, v)
    end = quiver.other_end(j, v)
    arrows = list(quiver.arrows)
    arrows[i - 1] = Arrow(start, end) if eps_i == 1 else Arrow(end, start)
    return Quiver(quiver.n_vertices, tuple(arrows))


def apply(context: Context, t: ElementaryTransform) -> Context:
    if isinstance(context, UnitForm):
        return apply_to_form(context, t)
    return apply_to_quiver(context, t)


def size_of(context: Context) -> int:
    return context.n if isinstance(context, UnitForm) else context.n_arrows


# -- admissibility ----------------------------------------------------------

def _between(i: int, j: int) -> range:
    return range(min(i, j) + 1, max(i, j))


def is_admissible(q: UnitForm, i: int, j: int) -> bool:
    """FS_ij is a strong congruence iff q_ik = 0 = q_kj for every k between i and j."""
    return all(q.coeff(i, k) == 0 and q.coeff(k, j) == 0 for k in _between(i, j))


def is_admissible_quiver(quiver: Quiver, i: int, j: int) -> bool:
    near = quiver.minu(i) | quiver.minu(j)
    return all(not (quiver.minu(k) & near) for k in _between(i, j))


def is_admissible_in(context: Context, i: int, j: int) -> bool:
    if isinstance(context, UnitForm):
        return is_admissible(context, i, j)
    return is_admissible_quiver(context, i, j)


# -- iterated transformations -----------------------------------------------

@dataclass(frozen=True)
class IteratedTransform:
    n: int
    steps: tuple = ()
    accumulated: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.accumulated is None:
            acc = mx.to_tuple(mx.identity(self.n))
            for s in self.steps:
                acc = right_multiply(acc, s)
            object.__setattr__(self, "accumulated", acc)
        else:
            object.__setattr__(self, "accumulated", mx.to_tuple(self.accumulated))

    @classmethod
    def empty(cls, n: int) -> IteratedTransform:
        return cls(n, (), mx.to_tuple(mx.identity(n)))

    def __len__(self):
        return len(self.steps)

    def then(self, other: IteratedTransform) -> IteratedTransform:
        """Concatenation: first ``self``, then ``other``."""
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return IteratedTransform(
            self.n, self.steps + other.steps, mx.to_tuple(mx.matmul(self.accumulated, other.accumulated))
        )

    def to_json(self) -> list[dict]:
        return [s.to_json() for s in self.steps]

    @classmethod
    def from_json(cls, n: int, data) -> IteratedTransform:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(n, tuple(transform_from_json(d) for d in data))


def right_multiply(a, t: ElementaryTransform) -> tuple:
    """a * matrix(t), done as the column operation t stands for."""
    rows = [list(r) for r in a]
    n = len(rows[0]) if rows else 0
    if isinstance(t, PointInversion):
        _check_indices(n, *t.indices)
        for r in rows:
            for c in t.indices:
                r[c - 1] = -r[c - 1]
    else:
        _check_indices(n, t.i, t.j)
        i, j = t.i - 1, t.j - 1
        if isinstance(t, (Flation, FST)) and t.eps:
            # column i of a T^eps_ij is a_i - eps a_j
            for r in rows:
                r[i] -= t.eps * r[j]
        if isinstance(t, (Swap, FST)):
            for r in rows:
                r[i], r[j] = r[j], r[i]
    return tuple(tuple(r) for r in rows)


def compose(
    it: IteratedTransform,
    t: ElementaryTransform,
    context: Context,
    *,
    require_admissible: bool = False,
) -> tuple[IteratedTransform, Context]:
    """Append ``t`` to ``it`` and apply it to the running ``context``."""
    if require_admissible and isinstance(t, FST) and not is_admissible_in(context, t.i, t.j):
        raise NotAdmissibleError(f"FS_{t.i},{t.j} is not admissible here")
    new_context = apply(context, t)
    acc = right_multiply(it.accumulated, t)
    return IteratedTransform(it.n, it.steps + (t,), acc), new_context


def replay(context: Context, steps, *, require_admissible: bool = False) -> tuple[IteratedTransform, Context]:
    it = IteratedTransform.empty(size_of(context))
    for t in steps:
        it, context = compose(it, t, context, require_admissible=require_admissible)
    return it, context


def invert(it: IteratedTransform) -> IteratedTransform:
    steps = tuple(s.inverse() for s in reversed(it.steps))
    inv = IteratedTransform(it.n, steps)
    return inv
