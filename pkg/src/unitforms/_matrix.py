"""Exact integer matrix helpers on plain nested lists.

Matrices are lists of rows (or tuples of tuples); entries are Python ints so
nothing ever overflows.  Only what the rest of the package needs lives here.
"""

from fractions import Fraction
from math import gcd
from operator import mul

Matrix = list[list[int]]


def to_tuple(a):
    return tuple(tuple(row) for row in a)


def to_list(a) -> Matrix:
    return [list(row) for row in a]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a, b) -> Matrix:
    bt = list(zip(*b))
    return [[sum(map(mul, row, col)) for col in bt] for row in a]


def matvec(a, x) -> list[int]:
    return [sum(r * v for r, v in zip(row, x)) for row in a]


def mat_add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c: int, a) -> Matrix:
    return [[c * x for x in row] for row in a]


def column(a, j: int) -> list[int]:
    return [row[j] for row in a]


def from_columns(cols, n_rows: int) -> Matrix:
    if not cols:
        return [[] for _ in range(n_rows)]
    return [list(r) for r in zip(*cols)]


def block_diag(*blocks) -> Matrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n, n)
    off = 0
    for b in blocks:
        k = len(b)
        for i in range(k):
            out[off + i][off:off + k] = list(b[i])
        off += k
    return out


def is_upper_triangular(a) -> bool:
    return all(a[i][j] == 0 for i in range(len(a)) for j in range(i))


def mat_pow(a, k: int) -> Matrix:
    result = identity(len(a))
    base = to_list(a)
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def det(a) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    m = to_list(a)
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def rank(a) -> int:
    """Exact rank by fraction-free row reduction."""
    m = to_list(a)
    if not m or not m[0]:
        return 0
    rows, cols = len(m), len(m[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, rows):
            f = m[i][c]
            if f:
                m[i] = [p * x - f * y for x, y in zip(m[i], m[r])]
                g = 0
                for x in m[i]:
                    g = gcd(g, x)
                if g > 1:
                    m[i] = [x // g for x in m[i]]
        r += 1
        if r == rows:
            break
    return r


def kernel_basis(a) -> list[list[int]]:
    """Integer vectors spanning the rational kernel of ``a``."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * cols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fcol]
        den = 1
        for x in v:
            den = den * x.denominator // gcd(den, x.denominator)
        basis.append([int(x * den) for x in v])
    return basis


def is_positive_semidefinite(a) -> bool:
    """Exact PSD test for a symmetric integer matrix.

    Symmetric elimination kept integral: with pivot p > 0 the remaining block
    becomes p*A' - a a^T, a positive multiple of the Schur complement.  A
    negative pivot fails, a zero pivot requires its whole remaining row to
    vanish.
    """
    m = [list(row) for row in a]
    n = len(m)
    for k in range(n):
        p = m[k][k]
        if p < 0:
            return False
        rk = m[k]
        if p == 0:
            if any(rk[j] for j in range(k + 1, n)):
                return False
            continue
        g = 0
        for i in range(k + 1, n):
            ri = m[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = p * ri[j] - f * rk[j]
                g = gcd(g, ri[j])
        if g > 1:
            for i in range(k + 1, n):
                m[i] = [x // g for x in m[i]]
    return True


def unitriangular_inverse(a) -> Matrix:
    """Inverse of an upper unitriangular integer matrix (back substitution)."""
    n = len(a)
    inv = identity(n)
    for j in range(n):
        for i in range(j - 1, -1, -1):
            inv[i][j] = -sum(a[i][k] * inv[k][j] for k in range(i + 1, j + 1))
    return inv


def unimodular_inverse(a) -> Matrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    out = []
    for row in m:
        tail = row[n:]
        if any(x.denominator != 1 for x in tail):
            raise ValueError("inverse is not integral")
        out.append([int(x) for x in tail])
    return out


def trace(a) -> int:
    return sum(a[i][i] for i in range(len(a)))


def charpoly(a) -> list[int]:
    """Coefficients of det(x*Id - a), ascending degree.

    Faddeev-LeVerrier recursion; every division is exact because the
    coefficients of an integer matrix's characteristic polynomial are integers.
    """
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    am = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} Id
        m = am
        for i in range(n):
            m[i][i] += coeffs[n - k + 1]
        am = matmul(a, m)
        tr = trace(am)
        if tr % k:
            raise ArithmeticError("non-integral trace step")
        coeffs[n - k] = -tr // k
    return coeffs


def poly_mul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_eval_matrix(coeffs: list[int], a) -> Matrix:
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    n = len(a)
    result = zeros(n, n)
    for c in reversed(coeffs):
        result = matmul(result, a)
        for i in range(n):
            result[i][i] += c
    return result
