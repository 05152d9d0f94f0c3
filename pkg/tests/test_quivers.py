import random

import pytest
import sympy

from unitforms import _matrix as mx
from unitforms.enumerate import quivers, random_connected_quiver
from unitforms.errors import ColumnNotIncidenceError, InvalidWalkError, NotConnectedError
from unitforms.forms import Bigraph, is_connected, is_non_negative
from unitforms.quivers import (
    Quiver,
    Step,
    Walk,
    canonical_extension_quiver,
    corank_of_quiver,
    incidence_bigraph,
    incidence_matrix,
    quiver_from_incidence,
    structural_predicates,
    unit_form_of,
    walk_vector,
)

from conftest import A1, A1_1, A2


@pytest.mark.parametrize(
    "quiver, inc",
    [
        (A1, [[1], [-1]]),
        (A2, [[1, 0], [-1, 1], [0, -1]]),
        (A1_1, [[1, -1], [-1, 1]]),
    ],
)
def test_incidence_matrix(quiver, inc):
    assert incidence_matrix(quiver) == inc
    assert quiver_from_incidence(inc) == quiver


@pytest.mark.parametrize(
    "quiver, tri",
    [
        (A1, ((1,),)),
        (A2, ((1, -1), (0, 1))),
        (A1_1, ((1, -2), (0, 1))),
    ],
)
def test_unit_form_of(quiver, tri):
    assert unit_form_of(quiver).tri_gram == tri


def test_incidence_bigraph_examples():
    assert incidence_bigraph(A1).tri_adj == ((0,),)
    assert incidence_bigraph(A2).edges() == [(1, 2, 1)]
    assert incidence_bigraph(A1_1).edges() == [(1, 2, 1), (1, 2, 1)]


def test_bad_columns_rejected():
    with pytest.raises(ColumnNotIncidenceError):
        quiver_from_incidence([[1, 1], [0, -1], [1, 0]])


@pytest.mark.parametrize("quiver, c", [(A1, 0), (A1_1, 1), (A2, 0)])
def test_corank_formula(quiver, c):
    assert corank_of_quiver(quiver) == c


def test_corank_needs_connected():
    with pytest.raises(NotConnectedError):
        corank_of_quiver(Quiver.from_arrows([(1, 2), (3, 4)]))


@pytest.mark.parametrize(
    "n, c, arrows",
    [
        (1, 0, [(1, 2)]),
        (1, 1, [(1, 2), (2, 1)]),
        (3, 2, [(1, 2), (2, 3), (3, 4), (4, 1), (4, 1)]),
    ],
)
def test_canonical_extension(n, c, arrows):
    assert canonical_extension_quiver(n, c) == Quiver.from_arrows(arrows)


def test_walk_vectors():
    assert walk_vector(A2, Walk(1)) == [0, 0, 0]
    assert walk_vector(A2, Walk(1, (Step(1, 1), Step(2, 1)))) == [1, 0, -1]
    assert walk_vector(A2, Walk(1, (Step(1, 1), Step(1, -1)))) == [0, 0, 0]
    with pytest.raises(InvalidWalkError):
        Walk(1, (Step(2, 1),)).vertices(A2)


@pytest.mark.parametrize(
    "quiver, expected",
    [
        (A1, (True, True, False)),
        (A1_1, (True, False, True)),
        (Quiver.from_arrows([(1, 2), (3, 4)]), (False, False, False)),
    ],
)
def test_structural_predicates(quiver, expected):
    assert tuple(structural_predicates(quiver)) == expected


def test_text_and_json_round_trip():
    q = Quiver.from_text("1 -> 2\n3->2 # comment\n3 -> 1")
    assert q.arrows == ((1, 2), (3, 2), (3, 1))
    assert Quiver.from_text(q.to_text()) == q
    assert Quiver.from_json(q.to_json()) == q
    with pytest.raises(ValueError):
        Quiver.from_text("1 => 2")
    with pytest.raises(ValueError):
        Quiver.from_arrows([(1, 1)])


def _all_small():
    """Connected quivers on <= 5 vertices: all with <= 5 arrows, then a seeded
    sample of 3000 with 6 arrows (there are about half a million of those)."""
    for n_arrows in range(1, 6):
        yield from quivers(n_arrows, max_vertices=5)
    rng = random.Random(6)
    for _ in range(3000):
        yield random_connected_quiver(rng, 6, rng.randint(2, 5))


def test_incidence_rank_and_form_properties():
    # exhaustive over connected quivers with <= 5 vertices and <= 6 arrows
    count = 0
    for q in _all_small():
        inc = incidence_matrix(q)
        assert mx.rank(inc) == q.n_vertices - 1
        assert all(sum(col) == 0 for col in zip(*inc))
        gram = mx.matmul(mx.transpose(inc), inc)
        assert all(gram[i][i] == 2 for i in range(q.n_arrows))
        form = unit_form_of(q)
        assert form.symmetric_gram() == gram
        assert Bigraph.from_form(form) == incidence_bigraph(q)
        count += 1
    assert count > 1000


def test_form_non_negative_and_connected_like_quiver():
    for n_arrows in range(1, 5):
        for q in quivers(n_arrows, connected=False):
            form = unit_form_of(q)
            assert is_non_negative(form)
            assert is_connected(form) == structural_predicates(q).connected


def test_incidence_rank_matches_sympy_sample(small_sweep):
    for q in small_sweep[::997]:
        assert mx.rank(incidence_matrix(q)) == sympy.Matrix(incidence_matrix(q)).rank()
