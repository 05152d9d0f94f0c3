"""Strong Gram classification of non-negative unit forms of Dynkin type A.

A form is first realized as the unit form of a quiver (flation search
towards the canonical extension), then the quiver is brought to a canonical
star (corank 0) or 1-star (corank 1) by admissible FS-transformations.  Two
forms reducing to the same canonical quiver are strongly congruent, and the
certificate is the product of one reduction with the inverse of the other.
"""

from __future__ import annotations

import heapq
from operator import sub
from dataclasses import dataclass, field
from functools import lru_cache

from . import _matrix as mx
from .coxeter import coxeter_polynomial
from .errors import (
    CertificateError,
    NotConnectedError,
    NotNonNegative,
    NotTypeA,
    SearchLimitExceeded,
    WrongCorank,
)
from .forms import (
    CongruenceCertificate,
    CongruenceKind,
    UnitForm,
    decompose_disconnected,
    is_connected,
    is_non_negative,
    permutation_matrix,
    rank_corank,
    verify_congruence,
)
from .quivers import Quiver, canonical_extension_quiver, incidence_matrix, quiver_from_incidence, unit_form_of
from .stars import canonical_one_star, canonical_star
from .transforms import Flation, IteratedTransform, PointInversion, invert

DEFAULT_STATE_LIMIT = 10**6


@dataclass(frozen=True)
class RealizationResult:
    quiver: Quiver
    to_canonical: IteratedTransform
    dynkin_n: int
    corank_c: int
    visited: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        return {
            "quiver": self.quiver.to_json(),
            "dynkin": f"A{self.dynkin_n}",
            "corank": self.corank_c,
            "flations": self.to_canonical.to_json(),
            "visited": self.visited,
        }


# -- flation search -----------------------------------------------------------
# States are flat tuples of the symmetric off-diagonal coefficients q_ij
# (row major, diagonal stored as 0).  A flation T^eps_ij with eps = q_ij = +-1
# sends q_ia to q_ia - eps q_ja for a != i, j and q_ij to -eps.


def _state(q: UnitForm) -> tuple[int, ...]:
    n = q.n
    return tuple(0 if a == b else q.coeff(a + 1, b + 1) for a in range(n) for b in range(n))


def _flate_state(s: tuple[int, ...], n: int, i: int, j: int) -> tuple[int, ...]:
    eps = s[i * n + j]
    out = list(s)
    for a in range(n):
        if a != i and a != j:
            v = s[i * n + a] - eps * s[j * n + a]
            out[i * n + a] = out[a * n + i] = v
    out[i * n + j] = out[j * n + i] = -eps
    return tuple(out)


def _invert_state(s: tuple[int, ...], n: int, k: int) -> tuple[int, ...]:
    out = list(s)
    for a in range(n):
        out[k * n + a] = out[a * n + k] = -s[k * n + a]
    return tuple(out)


def _distance(s, t) -> int:
    return sum(map(abs, map(sub, s, t)))


def flation_search(q: UnitForm, target: UnitForm, limit: int = DEFAULT_STATE_LIMIT) -> tuple[list[Flation], int]:
    """Flations T_1, ..., T_k with q∘T_1∘...∘T_k = target, and the number of states visited.

    An index whose coefficients are all in {0, +-2} admits no flation; for
    such indices a sign change is used instead.  Among connected forms this
    only occurs in rank one, where every coefficient is +-2.

    Best-first over the flation orbit of q, keyed by the full Gram matrix and
    ordered by entrywise distance to the target.  Non-negative forms have
    coefficients in [-2, 2], so the orbit is finite; exhausting it raises
    NotTypeA, and visiting more than ``limit`` states raises
    SearchLimitExceeded.
    """
    n = q.n
    start, goal = _state(q), _state(target)
    parent: dict[tuple, tuple | None] = {start: None}
    heap = [(_distance(start, goal), start)]
    while heap:
        _, s = heapq.heappop(heap)
        if s == goal:
            path = []
            while parent[s] is not None:
                s, i, j, eps = parent[s]
                path.append(PointInversion(frozenset({i + 1})) if j is None else Flation(i + 1, j + 1, eps))
            return path[::-1], len(parent)
        for i in range(n):
            row = i * n
            moves = [(j, s[row + j]) for j in range(n) if s[row + j] in (1, -1)]
            if not moves:
                # no flation touches index i (only happens for rank one)
                moves = [(None, 0)]
            for j, eps in moves:
                nxt = _invert_state(s, n, i) if j is None else _flate_state(s, n, i, j)
                if nxt not in parent:
                    parent[nxt] = (s, i, j, eps)
                    if len(parent) > limit:
                        raise SearchLimitExceeded(f"more than {limit} states visited")
                    heapq.heappush(heap, (_distance(nxt, goal), nxt))
    raise NotTypeA("the flation orbit does not contain the canonical type-A form")


def _check_realizable(q: UnitForm) -> tuple[int, int]:
    if not is_connected(q):
        raise NotConnectedError("form is not connected")
    if not is_non_negative(q):
        raise NotNonNegative("form is not non-negative")
    rank, corank = rank_corank(q)
    return rank, corank


def realize_as_quiver(q: UnitForm, limit: int = DEFAULT_STATE_LIMIT) -> RealizationResult:
    """A quiver Q with q_Q = q, from flations T with q∘T = q_A where A is canonical."""
    n, c = _check_realizable(q)
    canonical = canonical_extension_quiver(n, c)
    steps, visited = flation_search(q, unit_form_of(canonical), limit)
    it = IteratedTransform(q.n, tuple(steps))
    t_inv = invert(it).accumulated
    quiver = quiver_from_incidence(mx.matmul(incidence_matrix(canonical), t_inv), n + 1)
    if unit_form_of(quiver) != q:
        raise CertificateError("realized quiver does not reproduce the form")
    return RealizationResult(quiver, it, n, c, visited)


# -- verdicts -----------------------------------------------------------------


@dataclass(frozen=True)
class Invariant:
    n: int
    corank: int
    d: int | None
    char_poly: tuple[int, ...]

    def to_json(self) -> dict:
        return {"n": self.n, "corank": self.corank, "d": self.d, "char_poly": list(self.char_poly)}


CONGRUENT = "congruent"
NOT_CONGRUENT = "not_congruent"
UNSUPPORTED = "unsupported_corank"


@dataclass
class ClassificationVerdict:
    congruent: bool | None
    status: str
    certificate: CongruenceCertificate | None
    invariant: Invariant
    invariant_other: Invariant
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "congruent": self.congruent,
            "status": self.status,
            "certificate": None if self.certificate is None else self.certificate.to_json(),
            "verified": None if self.certificate is None else self.certificate.verified,
            "invariant": self.invariant.to_json(),
            "invariant_other": self.invariant_other.to_json(),
            "reason": self.reason,
        }


@dataclass(frozen=True)
class Reduction:
    """Strong congruence V with V^T Gram(q) V = Gram(canonical quiver)."""

    quiver: Quiver
    canonical: Quiver
    matrix: tuple
    d: int | None


@lru_cache(maxsize=1 << 16)
def _reduction(q: UnitForm) -> Reduction:
    real = realize_as_quiver(q)
    if real.corank_c == 0:
        star, it = canonical_star(real.quiver)
        return Reduction(real.quiver, star, it.accumulated, None)
    if real.corank_c == 1:
        star, d, it = canonical_one_star(real.quiver)
        return Reduction(real.quiver, star, it.accumulated, d)
    raise WrongCorank(f"corank {real.corank_c} is not 0 or 1")


@lru_cache(maxsize=1 << 16)
def _inverse(m: tuple) -> tuple:
    return mx.to_tuple(mx.unimodular_inverse(m))


def reduce_to_canonical(q: UnitForm) -> Reduction:
    """Realize q and reduce it to the canonical star or 1-star (cached)."""
    return _reduction(q)


@lru_cache(maxsize=1 << 16)
def invariant_of(q: UnitForm) -> Invariant:
    rank, corank = rank_corank(q)
    d = None
    if corank == 1 and is_connected(q):
        try:
            d = _reduction(q).d
        except (NotNonNegative, NotTypeA, SearchLimitExceeded):
            d = None
    return Invariant(q.n, corank, d, tuple(coxeter_polynomial(q)))


def _certificate(q: UnitForm, qp: UnitForm, b, verify: bool = True) -> CongruenceCertificate:
    cert = CongruenceCertificate(mx.to_tuple(b), CongruenceKind.STRONG)
    if verify and not verify_congruence(qp, q, cert):
        raise CertificateError("constructed certificate does not verify")
    return cert


def _through_canonical(q: UnitForm, qp: UnitForm, verify: bool) -> CongruenceCertificate:
    r, rp = _reduction(q), _reduction(qp)
    if r.canonical != rp.canonical:
        raise CertificateError("reductions end in different canonical quivers")
    return _certificate(q, qp, mx.matmul(r.matrix, _inverse(rp.matrix)), verify)


def _connected_corank(q: UnitForm, expected: int) -> int:
    _, c = _check_realizable(q)
    if c != expected:
        raise WrongCorank(f"expected corank {expected}, got {c}")
    return c


def strong_congruence_positive(q: UnitForm, qp: UnitForm, verify: bool = True) -> ClassificationVerdict:
    """Connected positive type-A forms: congruent exactly when sizes agree."""
    _connected_corank(q, 0)
    _connected_corank(qp, 0)
    inv, invp = invariant_of(q), invariant_of(qp)
    if q.n != qp.n:
        return ClassificationVerdict(False, NOT_CONGRUENT, None, inv, invp, "different number of variables")
    cert = _through_canonical(q, qp, verify)
    return ClassificationVerdict(True, CONGRUENT, cert, inv, invp)


def strong_congruence_principal(q: UnitForm, qp: UnitForm, verify: bool = True) -> ClassificationVerdict:
    """Connected principal type-A forms: congruent exactly when the invariants d agree."""
    _connected_corank(q, 1)
    _connected_corank(qp, 1)
    inv, invp = invariant_of(q), invariant_of(qp)
    if q.n != qp.n:
        return ClassificationVerdict(False, NOT_CONGRUENT, None, inv, invp, "different number of variables")
    if inv.d != invp.d:
        return ClassificationVerdict(False, NOT_CONGRUENT, None, inv, invp, f"d = {inv.d} vs {invp.d}")
    cert = _through_canonical(q, qp, verify)
    return ClassificationVerdict(True, CONGRUENT, cert, inv, invp)


def _connected_key(q: UnitForm) -> tuple:
    inv = invariant_of(q)
    return (inv.n, inv.corank, inv.d)


def _connected_certificate(q: UnitForm, qp: UnitForm) -> mx.Matrix:
    if q == qp:
        return mx.identity(q.n)
    return _through_canonical(q, qp, verify=False).matrix_b


def classify(q: UnitForm, qp: UnitForm, verify: bool = True) -> ClassificationVerdict:
    """Decide strong congruence of two non-negative unit forms.

    Disconnected forms are split into connected parts by a permutation; parts
    are matched by their invariants and the part certificates are assembled
    into one block certificate.  Parts of corank >= 2 are not decided.
    """
    inv, invp = invariant_of(q), invariant_of(qp)

    def verdict(congruent, status, cert=None, reason=""):
        return ClassificationVerdict(congruent, status, cert, inv, invp, reason)

    for form in (q, qp):
        if not is_non_negative(form):
            raise NotNonNegative("form is not non-negative")
    if q == qp:
        return verdict(True, CONGRUENT, _certificate(q, qp, mx.identity(q.n), verify))
    if q.n != qp.n:
        return verdict(False, NOT_CONGRUENT, reason="different number of variables")
    if inv.corank != invp.corank:
        return verdict(False, NOT_CONGRUENT, reason="different coranks")
    if inv.char_poly != invp.char_poly:
        return verdict(False, NOT_CONGRUENT, reason="different Coxeter polynomials")

    rho, parts = decompose_disconnected(q)
    rhop, partsp = decompose_disconnected(qp)
    big = [p for p in parts + partsp if rank_corank(p)[1] >= 2]
    if big:
        return verdict(None, UNSUPPORTED, reason="a connected part has corank >= 2")

    keys = [_connected_key(p) for p in parts]
    keysp = [_connected_key(p) for p in partsp]
    if sorted(keys) != sorted(keysp):
        return verdict(False, NOT_CONGRUENT, reason="connected parts have different invariants")

    # match each part of q with an unused part of qp carrying the same key
    free: dict[tuple, list[int]] = {}
    for k, key in enumerate(keysp):
        free.setdefault(key, []).append(k)
    offsets_p = _offsets(partsp)
    blocks, rho_r = [], []
    for k, part in enumerate(parts):
        target = free[keys[k]].pop(0)
        blocks.append(_connected_certificate(part, partsp[target]))
        rho_r += [offsets_p[target] + t + 1 for t in range(part.n)]
    b = mx.matmul(
        mx.matmul(permutation_matrix(rho), mx.block_diag(*blocks)),
        mx.matmul(permutation_matrix(rho_r), mx.transpose(permutation_matrix(rhop))),
    )
    return verdict(True, CONGRUENT, _certificate(q, qp, b, verify))


def _offsets(parts) -> list[int]:
    out, pos = [], 0
    for p in parts:
        out.append(pos)
        pos += p.n
    return out
