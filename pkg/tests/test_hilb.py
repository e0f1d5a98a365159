import pytest
import sympy as sp

from hhh.hilb import (
    HilbError,
    Partition,
    calibration_shift,
    fixed_point_data,
    localization_expansion,
    localization_sum,
    partitions,
    poly_terms,
    punctual_character,
    q1,
    q2,
    to_engine,
    torus_prediction,
    u,
)


def test_partitions():
    assert [p.parts for p in partitions(2)] == [(2,), (1, 1)]
    assert len(partitions(4)) == 5
    assert [p.parts for p in partitions(0)] == [()]
    assert [len(partitions(n)) for n in range(1, 8)] == [1, 2, 3, 5, 7, 11, 15]
    with pytest.raises(HilbError):
        Partition((1, 2))


def test_cell_statistics():
    lam = Partition((3, 1))
    assert lam.conjugate() == Partition((2, 1, 1))
    assert [(lam.arm(c), lam.leg(c)) for c in lam.cells] == [(2, 1), (1, 0), (0, 0), (0, 0)]


def test_fixed_point_examples():
    fp = fixed_point_data(Partition((1,)))
    assert fp.taut_expr() == 1 and fp.det_weight == (0, 0)
    assert sp.expand(fp.tangent_expr() - (q1 + q2)) == 0
    fp = fixed_point_data(Partition((2,)))
    assert sp.expand(fp.taut_expr() - (1 + q1)) == 0
    assert fp.det_weight == (1, 0)
    assert sp.expand(fp.tangent_expr() - (q1**2 + q2 / q1 + q1 + q2)) == 0
    swap = {q1: q2, q2: q1}
    tp = fixed_point_data(Partition((1, 1)))
    assert sp.expand(tp.taut_expr() - fp.taut_expr().subs(swap, simultaneous=True)) == 0
    assert sp.expand(tp.tangent_expr() - fp.tangent_expr().subs(swap, simultaneous=True)) == 0


@pytest.mark.parametrize("lam", [(1,), (2, 1), (3, 1), (2, 2, 1)])
def test_fixed_point_invariants(lam):
    fp = fixed_point_data(Partition(lam))
    n = sum(lam)
    assert fp.taut_expr().subs({q1: 1, q2: 1}) == n
    assert len(fp.tangent) == 2 * n


def test_localization_n1():
    (term,) = localization_sum(1, 5)
    assert sp.simplify(term - (1 + u) / ((1 - q1) * (1 - q2))) == 0
    (inv,) = localization_sum(1, 0, invert=True)
    assert sp.simplify(inv - (1 + u) / ((1 - 1 / q1) * (1 - 1 / q2))) == 0


@pytest.mark.parametrize("n,k", [(2, 0), (2, 1), (3, 1)])
def test_transpose_symmetry(n, k):
    total = sp.cancel(sp.together(sum(localization_sum(n, k))))
    swapped = total.subs({q1: q2, q2: q1}, simultaneous=True)
    assert sp.simplify(total - swapped) == 0


def test_expansion_nonnegative():
    e = localization_expansion(2, 0, 4)
    assert e[(0, 0, 0)] == 1
    assert all(c > 0 for c in e.values())


def test_punctual_character_examples():
    assert sp.expand(punctual_character(1, 4) - (1 + u)) == 0
    assert sp.expand(punctual_character(2, 0) - u * (1 + u)) == 0
    assert sp.expand(sp.factor(punctual_character(2, 1)) - (1 + u) * (1 + u * q1 + u * q2)) == 0


@pytest.mark.parametrize("n,k", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_punctual_character_positive_and_symmetric(n, k):
    P = punctual_character(n, k)
    terms = poly_terms(P)
    assert all(c > 0 for c in terms.values())
    assert {(x, e2, e1): c for (x, e1, e2), c in terms.items()} == terms


def test_torus_prediction_unknot_and_trefoil():
    # (1 - q^2) * unreduced unknot = 1 + a q^-2
    assert torus_prediction(1, 5).coeffs == {(0, 0, 0): 1, (1, 0, -2): 1}
    tref = torus_prediction(2, 1)
    assert sum(tref.coeffs.values()) == 6
    assert calibration_shift(2, 1) == (3, -1, -6)


def test_dictionary():
    assert to_engine((0, 1, 0)) == (0, 0, 2)
    assert to_engine((0, 0, 1)) == (0, 2, -2)
    assert to_engine((1, 0, 0)) == (-1, 0, 2)
