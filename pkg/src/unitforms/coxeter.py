"""Inverse quivers and Coxeter matrices.

The inverse quiver is built three ways: from minimally decreasing walks (the
primary construction), from the identity I(Q^-1) = I(Q) G^-1, and from the
column recursion I_k^-1 = I_k - sum_{i<k} I_i^-1 <i, k>.  The last two exist
so that the first can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from . import _matrix as mx
from .errors import ColumnNotIncidenceError
from .forms import UnitForm, is_non_negative, is_positive, rank_corank
from .quivers import Arrow, Quiver, Step, Walk, incidence_matrix, quiver_from_incidence, unit_form_of

INFINITE = "infinite"


def _smaller_at(quiver: Quiver, v: int, i: int) -> list[int]:
    """Q1^<(v, i): arrows j < i incident to v (i itself incident to v)."""
    return [j for j in range(1, i) if v in quiver.minu(j)]


def min_decreasing_walk(quiver: Quiver, i: int, direction: int) -> Walk:
    """The right complete minimally decreasing walk starting with arrow i.

    ``direction=+1`` starts at sou(i), ``-1`` at tar(i).
    """
    s, t = quiver.arrow(i)
    start, here = (s, t) if direction == 1 else (t, s)
    steps = [Step(i, direction)]
    current = i
    while True:
        smaller = _smaller_at(quiver, here, current)
        if not smaller:
            break
        nxt = max(smaller)
        ns, nt = quiver.arrow(nxt)
        eps = 1 if ns == here else -1
        here = nt if eps == 1 else ns
        steps.append(Step(nxt, eps))
        current = nxt
    return Walk(start, tuple(steps))


def inverse_quiver(quiver: Quiver) -> Quiver:
    arrows = []
    for i in range(1, quiver.n_arrows + 1):
        src = min_decreasing_walk(quiver, i, -1).end(quiver)
        tgt = min_decreasing_walk(quiver, i, 1).end(quiver)
        arrows.append(Arrow(src, tgt))
    return Quiver(quiver.n_vertices, tuple(arrows))


def inverse_via_gram(quiver: Quiver) -> Quiver:
    g_inv = mx.unitriangular_inverse(unit_form_of(quiver).tri_gram)
    cols = mx.matmul(incidence_matrix(quiver), g_inv)
    return quiver_from_incidence(cols, quiver.n_vertices)


def inverse_via_recursion(quiver: Quiver) -> Quiver:
    inc = incidence_matrix(quiver)
    cols: list[list[int]] = []
    for k in range(1, quiver.n_arrows + 1):
        col = mx.column(inc, k - 1)
        for i in range(1, k):
            p = quiver.pairing(i, k)
            if p:
                col = [c - p * x for c, x in zip(col, cols[i - 1])]
        cols.append(col)
    return quiver_from_incidence(mx.from_columns(cols, quiver.n_vertices), quiver.n_vertices)


def triangular_inverse_identity(quiver: Quiver) -> bool:
    """Check Gram(Q) * Gram(Q^-1) = Id for the triangular Gram matrices."""
    prod = mx.matmul(unit_form_of(quiver).tri_gram, unit_form_of(inverse_quiver(quiver)).tri_gram)
    if prod != mx.identity(quiver.n_arrows):
        raise ColumnNotIncidenceError("triangular Gram matrices of Q and Q^-1 are not inverse")
    return True


@dataclass(frozen=True)
class CoxeterData:
    matrix: tuple[tuple[int, ...], ...]
    char_poly: tuple[int, ...]
    coxeter_number: int | str
    cap_based: bool = field(default=False)

    def to_json(self) -> dict:
        return {
            "phi": [list(r) for r in self.matrix],
            "charpoly": list(self.char_poly),
            "coxeter_number": self.coxeter_number,
            "cap_based": self.cap_based,
        }


def _totient(m: int) -> int:
    out, k, p = m, m, 2
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            out -= out // p
        p += 1
    if k > 1:
        out -= out // k
    return out


def order_bound(n: int) -> int:
    """lcm of all m with phi(m) <= n.

    An n x n integer matrix of finite order has every eigenvalue a root of
    unity of degree at most n, and is diagonalizable, so its order divides
    this number.
    """
    bound = 1
    # phi(m) >= sqrt(m/2), so m <= 2 n^2 covers every candidate
    for m in range(1, 2 * n * n + 3):
        if _totient(m) <= n:
            bound = lcm(bound, m)
    return bound


def _prime_factors(k: int) -> list[int]:
    out, p = [], 2
    while p * p <= k:
        if k % p == 0:
            out.append(p)
            while k % p == 0:
                k //= p
        p += 1
    if k > 1:
        out.append(k)
    return out


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division by a monic integer polynomial (ascending coefficients)."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * max(len(num) - dn, 1)
    for k in range(len(num) - 1 - dn, -1, -1):
        c = num[k + dn]
        quot[k] = c
        if c:
            for t, d in enumerate(den):
                num[k + t] -= c * d
    rem = num[:dn] or [0]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return quot, rem


_CYCLOTOMIC: dict[int, list[int]] = {}


def cyclotomic(m: int) -> list[int]:
    if m not in _CYCLOTOMIC:
        poly = [-1] + [0] * (m - 1) + [1]
        for d in range(1, m):
            if m % d == 0:
                poly, _ = _poly_divmod(poly, cyclotomic(d))
        _CYCLOTOMIC[m] = poly
    return _CYCLOTOMIC[m]


def _root_of_unity_orders(poly: list[int]) -> list[int] | None:
    """Orders m with Phi_m dividing ``poly``, or None if another factor remains."""
    n = len(poly) - 1
    orders = []
    for m in range(1, 2 * n * n + 3):
        if _totient(m) > n:
            continue
        while len(poly) > 1:
            quot, rem = _poly_divmod(poly, cyclotomic(m))
            if rem != [0]:
                break
            poly = quot
            orders.append(m)
    return orders if len(poly) == 1 else None


def matrix_order(a, cap: int | None = None) -> tuple[int | str, bool]:
    """Multiplicative order of ``a`` (or INFINITE) and whether a cap decided it.

    Without ``cap`` the answer is exact: a finite order forces every
    eigenvalue to be a root of unity, so the characteristic polynomial splits
    into cyclotomic factors and the order divides the lcm of their indices.
    With ``cap`` only the powers k <= cap are tried.
    """
    n = len(a)
    ident = mx.identity(n)
    if cap is not None:
        power = mx.identity(n)
        for k in range(1, cap + 1):
            power = mx.matmul(power, a)
            if power == ident:
                return k, False
        return INFINITE, True
    orders = _root_of_unity_orders(mx.charpoly(a))
    if orders is None:
        return INFINITE, False
    bound = lcm(*orders) if orders else 1
    if mx.mat_pow(a, bound) != ident:
        return INFINITE, False
    order = bound
    for p in _prime_factors(bound):
        while order % p == 0 and mx.mat_pow(a, order // p) == ident:
            order //= p
    return order, False


def _data(phi, cap: int | None) -> CoxeterData:
    number, capped = matrix_order(phi, cap)
    return CoxeterData(mx.to_tuple(phi), tuple(mx.charpoly(phi)), number, capped)


def coxeter_matrix(q: UnitForm) -> mx.Matrix:
    """-G^T G^-1 for the triangular Gram matrix G."""
    g = q.tri_gram
    return mx.scale(-1, mx.matmul(mx.transpose(g), mx.unitriangular_inverse(g)))


def coxeter_from_form(q: UnitForm, cap: int | None = None) -> CoxeterData:
    return _data(coxeter_matrix(q), cap)


def coxeter_matrix_of_quiver(quiver: Quiver) -> mx.Matrix:
    """Id - I(Q)^T I(Q^-1)."""
    prod = mx.matmul(mx.transpose(incidence_matrix(quiver)), incidence_matrix(inverse_quiver(quiver)))
    return mx.mat_sub(mx.identity(quiver.n_arrows), prod)


def coxeter_from_quiver(quiver: Quiver, cap: int | None = None) -> CoxeterData:
    return _data(coxeter_matrix_of_quiver(quiver), cap)


def coxeter_polynomial(q: UnitForm) -> tuple[int, ...]:
    return tuple(mx.charpoly(coxeter_matrix(q)))


def one_star_coxeter_polynomial(n: int, ell: int, m: int) -> list[int]:
    """(x^(m-ell) - 1)(x^(n+1-(m-ell)) - 1), ascending coefficients."""
    if not 1 <= ell < m <= n + 1:
        raise ValueError("need 1 <= ell < m <= n+1")
    a = m - ell
    b = n + 1 - a
    return mx.poly_mul([-1] + [0] * (a - 1) + [1], [-1] + [0] * (b - 1) + [1])


@dataclass
class BoundsReport:
    max_offset: int
    max_entry: int
    positive: bool
    principal_small: bool
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_coxeter_bounds(q: UnitForm) -> BoundsReport:
    """Entry bounds on the Coxeter matrix of a type-A non-negative form."""
    phi = coxeter_matrix(q)
    n = q.n
    offsets = [abs(phi[i][j] - (i == j)) for i in range(n) for j in range(n)]
    entries = [abs(x) for row in phi for x in row]
    violations = []
    if max(offsets) > 2:
        violations.append(f"|c_ij - delta_ij| reaches {max(offsets)}")
    positive = is_positive(q)
    small = all(abs(q.coeff(i, j)) <= 1 for i in range(1, n + 1) for j in range(i + 1, n + 1))
    principal_small = is_non_negative(q) and rank_corank(q)[1] == 1 and small
    if positive and max(entries) > 1:
        violations.append(f"positive form with |c_ij| = {max(entries)}")
    if principal_small and max(entries) > 2:
        violations.append(f"principal form with |c_ij| = {max(entries)}")
    return BoundsReport(max(offsets), max(entries), positive, principal_small, violations)
