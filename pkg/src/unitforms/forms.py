"""Integral unit forms, bigraphs and Gram congruence certificates.

A unit form in ``n`` variables is stored through its upper triangular Gram
matrix (unit diagonal).  Indices exposed to callers are 1-based, matching the
usual notation ``q_ij``; the matrices themselves are plain 0-based tuples.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from . import _matrix as mx
from .errors import DimensionError


@dataclass(frozen=True)
class UnitForm:
    n: int
    tri_gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = mx.to_tuple(self.tri_gram)
        object.__setattr__(self, "tri_gram", g)
        if self.n < 1 or len(g) != self.n or any(len(r) != self.n for r in g):
            raise DimensionError(f"tri_gram must be {self.n}x{self.n}")
        for i in range(self.n):
            if g[i][i] != 1:
                raise ValueError(f"diagonal entry {i + 1} is {g[i][i]}, expected 1")
            if any(g[i][j] != 0 for j in range(i)):
                raise ValueError("tri_gram must be upper triangular")

    @classmethod
    def from_tri_gram(cls, rows) -> UnitForm:
        return cls(len(rows), mx.to_tuple(rows))

    @classmethod
    def from_symmetric(cls, gram) -> UnitForm:
        """Unit form whose symmetric Gram matrix is ``gram`` (diagonal all 2)."""
        n = len(gram)
        if any(gram[i][i] != 2 for i in range(n)):
            raise ValueError("symmetric Gram matrix of a unit form has diagonal 2")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ValueError("matrix is not symmetric")
        rows = [[gram[i][j] if j > i else int(i == j) for j in range(n)] for i in range(n)]
        return cls(n, mx.to_tuple(rows))

    @classmethod
    def from_coefficients(cls, n: int, coeffs: dict[tuple[int, int], int]) -> UnitForm:
        """Build from off-diagonal coefficients ``{(i, j): q_ij}`` with 1-based i < j."""
        rows = mx.identity(n)
        for (i, j), v in coeffs.items():
            if i == j:
                raise ValueError("diagonal coefficients of a unit form are fixed to 1")
            a, b = min(i, j), max(i, j)
            rows[a - 1][b - 1] = v
        return cls(n, mx.to_tuple(rows))

    def coeff(self, i: int, j: int) -> int:
        """q_ij with the symmetric convention q_ji = q_ij (1-based)."""
        a, b = min(i, j), max(i, j)
        return self.tri_gram[a - 1][b - 1]

    def symmetric_gram(self) -> mx.Matrix:
        return mx.mat_add(self.tri_gram, mx.transpose(self.tri_gram))

    def to_json(self) -> dict:
        return {"n": self.n, "tri_gram": [list(r) for r in self.tri_gram]}

    @classmethod
    def from_json(cls, data) -> UnitForm:
        if isinstance(data, str):
            data = json.loads(data)
        form = cls.from_tri_gram(data["tri_gram"])
        if "n" in data and data["n"] != form.n:
            raise DimensionError("field n does not match tri_gram size")
        return form

    def __str__(self):
        return "\n".join(" ".join(f"{x:3d}" for x in row) for row in self.tri_gram)


@dataclass(frozen=True)
class Bigraph:
    """Loop-less signed multigraph encoded by its triangular adjacency matrix.

    ``tri_adj[i][j]`` (i < j) is the signed number of edges between vertices
    i+1 and j+1: positive for solid edges, negative for dotted ones.
    """

    n_vertices: int
    tri_adj: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        a = mx.to_tuple(self.tri_adj)
        object.__setattr__(self, "tri_adj", a)
        n = self.n_vertices
        if len(a) != n or any(len(r) != n for r in a):
            raise DimensionError(f"tri_adj must be {n}x{n}")
        if any(a[i][j] != 0 for i in range(n) for j in range(i + 1)):
            raise ValueError("tri_adj must be strictly upper triangular")

    @classmethod
    def from_form(cls, q: UnitForm) -> Bigraph:
        return cls(q.n, mx.to_tuple(mx.mat_sub(mx.identity(q.n), q.tri_gram)))

    def to_form(self) -> UnitForm:
        return UnitForm(self.n_vertices, mx.to_tuple(mx.mat_sub(mx.identity(self.n_vertices), self.tri_adj)))

    def edges(self) -> list[tuple[int, int, int]]:
        """(i, j, sign) for every edge, 1-based, repeated by multiplicity."""
        out = []
        for i in range(self.n_vertices):
            for j in range(i + 1, self.n_vertices):
                d = self.tri_adj[i][j]
                sign = 1 if d > 0 else -1
                out.extend([(i + 1, j + 1, sign)] * abs(d))
        return out


class CongruenceKind(str, Enum):
    WEAK = "weak"
    STRONG = "strong"


@dataclass
class CongruenceCertificate:
    """Integer matrix B claimed to satisfy G' = B^T G B.

    For ``STRONG`` the identity is on triangular Gram matrices, for ``WEAK`` on
    symmetric ones.  ``verified`` is only ever set by :func:`verify_congruence`.
    """

    matrix_b: tuple[tuple[int, ...], ...]
    kind: CongruenceKind = CongruenceKind.STRONG
    verified: bool = field(default=False, compare=False)

    def __post_init__(self):
        self.matrix_b = mx.to_tuple(self.matrix_b)
        self.kind = CongruenceKind(self.kind)

    @property
    def n(self) -> int:
        return len(self.matrix_b)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "b": [list(r) for r in self.matrix_b]}

    @classmethod
    def from_json(cls, data) -> CongruenceCertificate:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(mx.to_tuple(data["b"]), CongruenceKind(data["kind"]))


def _check_len(q: UnitForm, x: Sequence[int]):
    if len(x) != q.n:
        raise DimensionError(f"vector of length {len(x)} for a form in {q.n} variables")


def evaluate(q: UnitForm, x: Sequence[int]) -> int:
    _check_len(q, x)
    g = q.tri_gram
    return sum(x[i] * sum(g[i][j] * x[j] for j in range(i, q.n)) for i in range(q.n))


def bilinear(q: UnitForm, x: Sequence[int], y: Sequence[int]) -> int:
    """q(x|y) = x^T G_q y."""
    _check_len(q, x)
    _check_len(q, y)
    return sum(a * b for a, b in zip(x, mx.matvec(q.symmetric_gram(), y)))


def rank_corank(q: UnitForm) -> tuple[int, int]:
    r = mx.rank(q.symmetric_gram())
    return r, q.n - r


def is_non_negative(q: UnitForm) -> bool:
    return mx.is_positive_semidefinite(q.symmetric_gram())


def is_positive(q: UnitForm) -> bool:
    return is_non_negative(q) and rank_corank(q)[1] == 0


def is_principal(q: UnitForm) -> bool:
    return is_non_negative(q) and rank_corank(q)[1] == 1


def _components(q: UnitForm) -> list[list[int]]:
    """Connected components as sorted 0-based index lists, by minimal index."""
    seen = [False] * q.n
    comps = []
    for start in range(q.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        queue = deque([start])
        while queue:
            i = queue.popleft()
            for j in range(q.n):
                if not seen[j] and j != i and q.coeff(i + 1, j + 1) != 0:
                    seen[j] = True
                    comp.append(j)
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def is_connected(q: UnitForm) -> bool:
    return len(_components(q)) == 1


def direct_sum(q1: UnitForm, q2: UnitForm) -> UnitForm:
    return UnitForm(q1.n + q2.n, mx.to_tuple(mx.block_diag(q1.tri_gram, q2.tri_gram)))


def direct_sum_all(forms: Sequence[UnitForm]) -> UnitForm:
    return UnitForm(sum(f.n for f in forms), mx.to_tuple(mx.block_diag(*(f.tri_gram for f in forms))))


def restrict(q: UnitForm, indices: Sequence[int]) -> UnitForm:
    """Restriction of q to the given 1-based indices (kept in the given order)."""
    g = q.tri_gram
    idx = [i - 1 for i in indices]
    rows = [[g[a][b] if ia <= ib else 0 for ib, b in enumerate(idx)] for ia, a in enumerate(idx)]
    return UnitForm(len(idx), mx.to_tuple(rows))


def permutation_matrix(perm: Sequence[int]) -> mx.Matrix:
    """P = [e_{rho^-1(1)} | ... | e_{rho^-1(n)}] for rho given as perm[i-1] = rho(i)."""
    n = len(perm)
    p = mx.zeros(n, n)
    for i, r in enumerate(perm):
        p[i][r - 1] = 1
    return p


def decompose_disconnected(q: UnitForm) -> tuple[tuple[int, ...], list[UnitForm]]:
    """Split q into connected parts by a strong congruence.

    Returns ``rho`` (``rho[i-1]`` is the new position of index i) and the
    parts, such that ``P^T Gq P`` is the block diagonal of the parts' Gram
    matrices with ``P = permutation_matrix(rho)``.  Components are listed by
    their smallest original index; the order inside a component is kept.
    """
    comps = _components(q)
    rho = [0] * q.n
    pos = 1
    parts = []
    for comp in comps:
        for i in comp:
            rho[i] = pos
            pos += 1
        parts.append(restrict(q, [i + 1 for i in comp]))
    return tuple(rho), parts


def congruence_image(q: UnitForm, b, kind: CongruenceKind = CongruenceKind.STRONG) -> mx.Matrix:
    """B^T G B for the triangular (strong) or symmetric (weak) Gram matrix."""
    g = q.tri_gram if CongruenceKind(kind) is CongruenceKind.STRONG else q.symmetric_gram()
    return mx.matmul(mx.matmul(mx.transpose(b), g), b)


def verify_congruence(qp: UnitForm, q: UnitForm, cert: CongruenceCertificate) -> bool:
    """Exact check that ``cert`` carries q onto qp; stores the outcome on ``cert``."""
    if cert.n != q.n or qp.n != q.n:
        raise DimensionError("certificate and forms must have the same size")
    ok = abs(mx.det(cert.matrix_b)) == 1
    if ok:
        image = congruence_image(q, cert.matrix_b, cert.kind)
        target = qp.tri_gram if cert.kind is CongruenceKind.STRONG else qp.symmetric_gram()
        ok = mx.to_tuple(image) == mx.to_tuple(target)
    cert.verified = ok
    return ok


def transform_form(q: UnitForm, t) -> UnitForm:
    """The form q∘T, i.e. the unit form with symmetric Gram matrix T^T G_q T.

    Raises ``ValueError`` when the image is not a unit form.
    """
    return UnitForm.from_symmetric(mx.matmul(mx.matmul(mx.transpose(t), q.symmetric_gram()), t))
