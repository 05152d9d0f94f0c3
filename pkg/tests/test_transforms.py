import pytest

from unitforms import _matrix as mx
from unitforms.enumerate import quivers
from unitforms.errors import NonUnitResult, NotAdmissibleError, ParallelArrowsError, WrongSign
from unitforms.forms import UnitForm
from unitforms.quivers import Quiver, incidence_matrix, structural_predicates, unit_form_of
from unitforms.stars import star_quiver
from unitforms.transforms import (
    FST,
    Flation,
    IteratedTransform,
    PointInversion,
    Swap,
    apply,
    apply_to_form,
    apply_to_quiver,
    compose,
    flation_sign,
    fst,
    invert,
    is_admissible,
    is_admissible_quiver,
    replay,
    right_multiply,
    transform_from_json,
)

from conftest import A1_1, A2, A3


def test_zero_flation_is_identity():
    assert Flation(1, 2, 0).matrix(3) == mx.identity(3)


def test_flation_matrix_on_basis():
    t = Flation(1, 2, 1).matrix(2)
    assert mx.matvec(t, [1, 0]) == [1, -1]
    assert mx.matvec(t, [0, 1]) == [0, 1]


@pytest.mark.parametrize("i, j, eps", [(1, 2, 1), (3, 1, -1), (2, 4, 0), (4, 3, 1)])
def test_fst_unimodular_and_inverse(i, j, eps):
    m = FST(i, j, eps).matrix(4)
    assert abs(mx.det(m)) == 1
    assert mx.matmul(m, FST(i, j, eps).inverse().matrix(4)) == mx.identity(4)
    assert FST(i, j, eps).inverse() == FST(j, i, -eps)


def test_index_errors():
    with pytest.raises(IndexError):
        Flation(1, 5, 1).matrix(3)
    with pytest.raises(ValueError):
        Swap(2, 2)


def test_flation_then_inverse_restores_form():
    q = unit_form_of(A2)
    eps = flation_sign(q, 1, 2)
    assert eps == -1
    q2 = apply_to_form(q, Flation(1, 2, eps))
    assert apply_to_form(q2, Flation(1, 2, -eps)) == q


def test_form_flation_errors():
    q = UnitForm.from_tri_gram([[1, -2], [0, 1]])
    with pytest.raises(NonUnitResult):
        apply_to_form(q, Flation(1, 2, -1))
    with pytest.raises(WrongSign):
        apply_to_form(unit_form_of(A2), Flation(1, 2, 1))


def test_quiver_flation_example():
    t = Flation(1, 2, -1)
    q2 = apply_to_quiver(A2, t)
    assert q2.arrows == ((1, 3), (2, 3))
    assert incidence_matrix(q2) == mx.matmul(incidence_matrix(A2), t.matrix(2))


def test_quiver_flation_errors():
    with pytest.raises(ParallelArrowsError):
        apply_to_quiver(A1_1, Flation(1, 2, 1))
    with pytest.raises(WrongSign):
        apply_to_quiver(A2, Flation(1, 2, 1))
    disjoint = Quiver.from_arrows([(1, 2), (3, 4)])
    assert apply_to_quiver(disjoint, Flation(1, 2, 0)) == disjoint


def test_double_inversion():
    inv = PointInversion(frozenset({1, 2, 3}))
    assert apply(apply(A3, inv), inv) == A3


def test_admissibility_examples():
    q = unit_form_of(A3)
    assert is_admissible(q, 1, 2) and is_admissible(q, 3, 2)
    assert not is_admissible(q, 1, 3)
    assert not is_admissible_quiver(A3, 1, 3)
    disjoint = Quiver.from_arrows([(1, 2), (5, 6), (3, 4)])
    assert is_admissible_quiver(disjoint, 1, 3)
    assert is_admissible(unit_form_of(disjoint), 1, 3)


def test_star_pairs_admissible_and_strong():
    star = star_quiver(4)
    q = unit_form_of(star)
    for i in range(1, 5):
        for j in range(1, 5):
            if i != j:
                # every pair of arrows in a star is adjacent through the center
                assert is_admissible(q, i, j) == (abs(i - j) == 1)
                m = fst(q, i, j).matrix(4)
                image = mx.matmul(mx.matmul(mx.transpose(m), q.tri_gram), m)
                assert mx.is_upper_triangular(image) == is_admissible(q, i, j)


def test_iterated_transforms():
    assert IteratedTransform.empty(3).accumulated == mx.to_tuple(mx.identity(3))
    t = FST(1, 2, -1)
    it = IteratedTransform(2, (t, t.inverse()))
    assert it.accumulated == mx.to_tuple(mx.identity(2))
    assert invert(IteratedTransform(3, ())).steps == ()
    assert invert(IteratedTransform(3, (FST(1, 3, 1),))).steps == (FST(3, 1, -1),)


def test_recentering_composition_on_star():
    star = star_quiver(4)
    steps = [fst(star, 2, 1)]
    it, cur = replay(star, steps[:1], require_admissible=True)
    for i in range(3, 5):
        it, cur = compose(it, fst(cur, i, i - 1), cur, require_admissible=True)
    b = it.accumulated
    assert abs(mx.det(b)) == 1
    q, q2 = unit_form_of(star), unit_form_of(cur)
    assert mx.matmul(mx.matmul(mx.transpose(b), q.tri_gram), b) == [list(r) for r in q2.tri_gram]


def test_not_admissible_rejected():
    with pytest.raises(NotAdmissibleError):
        compose(IteratedTransform.empty(3), fst(A3, 1, 3), A3, require_admissible=True)


def test_json_round_trip():
    it = IteratedTransform(4, (FST(1, 2, -1), PointInversion(frozenset({3})), Swap(2, 4), Flation(4, 1, 1)))
    assert IteratedTransform.from_json(4, it.to_json()) == it
    with pytest.raises(ValueError):
        transform_from_json({"op": "rotate"})


def _sweep():
    for n in range(1, 5):
        yield from quivers(n, max_vertices=4)
    for k, q in enumerate(quivers(5, max_vertices=4)):
        if k % 15 == 0:
            yield q


def _candidates(q):
    n = q.n_arrows
    for i in range(1, n + 1):
        yield PointInversion(frozenset({i}))
        for j in range(1, n + 1):
            if i != j:
                yield Swap(i, j)
                if not q.are_parallel(i, j):
                    eps = flation_sign(q, i, j)
                    yield Flation(i, j, eps)
                    yield FST(i, j, eps)


def test_quiver_transforms_commute_with_matrices():
    count = 0
    for q in _sweep():
        inc, form = incidence_matrix(q), unit_form_of(q)
        conn = structural_predicates(q).connected
        for t in _candidates(q):
            m = t.matrix(q.n_arrows)
            q2 = apply_to_quiver(q, t)
            assert incidence_matrix(q2) == mx.matmul(inc, m)
            assert unit_form_of(q2) == apply_to_form(form, t)
            assert right_multiply(mx.to_tuple(mx.identity(q.n_arrows)), t) == mx.to_tuple(m)
            assert (q2.n_vertices, q2.n_arrows) == (q.n_vertices, q.n_arrows)
            assert structural_predicates(q2).connected == conn
            count += 1
    assert count > 30000


def test_quiver_and_form_signs_agree():
    for n in range(2, 5):
        for q in quivers(n, max_vertices=4):
            form = unit_form_of(q)
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    if q.are_adjacent(i, j) and not q.are_parallel(i, j):
                        assert flation_sign(q, i, j) == flation_sign(form, i, j) != 0
                    assert is_admissible_quiver(q, i, j) == is_admissible(form, i, j)


def test_admissible_fst_is_strong():
    for n in range(2, 5):
        for q in quivers(n, max_vertices=5):
            form = unit_form_of(q)
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i == j or abs(form.coeff(i, j)) > 1:
                        continue
                    t = fst(form, i, j)
                    m = t.matrix(n)
                    image = mx.matmul(mx.matmul(mx.transpose(m), form.tri_gram), m)
                    if is_admissible(form, i, j):
                        assert image == [list(r) for r in apply_to_form(form, t).tri_gram]
