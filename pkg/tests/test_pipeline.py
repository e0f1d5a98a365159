import json

import pytest
import sympy as sp

from hhh.braid import BraidWord
from hhh.exactalg import TriSeries
from hhh.hilb import torus_prediction
from hhh.hochschild import unknot_factor
from hhh.pipeline import (
    PipelineError,
    compute_hhh,
    divide_unknot_factor,
    euler_characteristic,
    symmetry_image,
    verify_euler,
    verify_markov,
    verify_symmetry,
)

TREFOIL = [[1, -1, 0, 1], [1, 1, -4, 1], [2, -1, -4, 1]]


def test_unknot():
    res = compute_hhh(BraidWord(1, ()), window=20)
    assert res.reduced.to_rows() == [[0, 0, 0, 1]]
    assert res.unreduced.discrepancies(unknot_factor(20), 20) == []
    assert res.certified


def test_trefoil_three_monomials():
    res = compute_hhh(BraidWord(2, (1, 1, 1)))
    assert res.reduced.to_rows() == TREFOIL
    assert all(d > 0 for d in res.reduced.coeffs.values())


def test_trefoil_against_localization_oracle():
    # (1 - q^2) * unreduced = reduced * (1 + a q^-2) for a knot
    red = compute_hhh(BraidWord(2, (1, 1, 1))).reduced
    lifted = red * TriSeries({(0, 0, 0): 1, (1, 0, -2): 1}, None)
    assert lifted.discrepancies(torus_prediction(2, 1, 20), 20) == []


def test_stabilized_trefoil():
    res = compute_hhh(BraidWord(3, (1, 1, 1, 2)))
    assert res.reduced.to_rows() == TREFOIL


@pytest.mark.parametrize("n,word", [(2, (1, 1, 1)), (3, (1, -2, 1, -2))])
def test_divisibility(n, word):
    res = compute_hhh(BraidWord(n, word))
    product = (res.reduced * unknot_factor(res.window + 8)).truncate(res.window)
    assert product.discrepancies(res.unreduced, res.window) == []


@pytest.mark.parametrize("n,word", [(2, (1, 1, 1)), (2, (1, 1)), (3, (1, -2, 1, -2))])
def test_full_ring_agrees_with_split(n, word):
    a = compute_hhh(BraidWord(n, word), window=16)
    b = compute_hhh(BraidWord(n, word), window=16, method="full")
    assert a.unreduced.discrepancies(b.unreduced, 16) == []
    if a.reduced is not None:
        assert a.reduced.to_rows() == b.reduced.to_rows()


def test_divide_unknot_factor_roundtrip():
    red = TriSeries({(1, -1, 0): 1, (2, 0, -4): 3}, None)
    unred = (red * unknot_factor(30)).truncate(20)
    assert divide_unknot_factor(unred).discrepancies(red, 10) == []


def test_symmetry_involution():
    for key in [(0, 0, 0), (1, -1, 0), (2, 3, -7)]:
        assert symmetry_image(symmetry_image(key)) == key
    assert verify_symmetry(compute_hhh(BraidWord(1, ()))).ok
    assert verify_symmetry(compute_hhh(BraidWord(2, (1, 1, 1)))).ok
    assert verify_symmetry(compute_hhh(BraidWord(3, (1, -2, 1, -2)))).ok


def test_symmetry_rejects_links():
    with pytest.raises(PipelineError, match="only for knots"):
        verify_symmetry(compute_hhh(BraidWord(2, (1, 1))))


def test_symmetry_reports_violation():
    res = compute_hhh(BraidWord(2, (1, 1, 1)))
    res.reduced = TriSeries({(1, -1, 0): 1}, None)
    rep = verify_symmetry(res)
    assert not rep.ok and rep.first_violation()[0] == (1, -1, 0)


def test_markov_examples():
    assert verify_markov(BraidWord(1, ())).ok
    assert verify_markov(BraidWord(2, (1, 1, 1))).ok
    a = compute_hhh(BraidWord(2, (1,)))
    b = compute_hhh(BraidWord(1, ()))
    assert a.reduced.to_rows() == b.reduced.to_rows() == [[0, 0, 0, 1]]


@pytest.mark.parametrize("n,word", [(1, ()), (2, (1, 1, 1)), (3, (1, -2, 1, -2)), (2, (1, 1)), (2, ())])
def test_euler(n, word):
    rep = verify_euler(compute_hhh(BraidWord(n, word)))
    assert rep.ok, rep.violations


def test_euler_unknot_and_unlink():
    assert euler_characteristic(compute_hhh(BraidWord(1, ())).reduced) == 1
    one = euler_characteristic(compute_hhh(BraidWord(1, ()), window=12).unreduced)
    two = euler_characteristic(compute_hhh(BraidWord(2, ()), window=12).unreduced)
    from hhh.hecke import v

    top = sp.expand(one**2 - two)
    # only terms beyond the window may differ
    assert all(sp.Poly(t * v**100, v).degree() - 100 > 12 for t in sp.Add.make_args(top) if t != 0)


def test_json_document():
    res = compute_hhh(BraidWord(2, (1, 1, 1)))
    doc = json.loads(res.dumps())
    assert doc["schema"] == 1
    assert {"braid", "strands", "writhe", "components", "normalization", "window", "unreduced", "reduced"} <= doc.keys()
    assert doc["reduced"] == TREFOIL
    assert doc["unreduced"] == sorted(doc["unreduced"])
    link = json.loads(compute_hhh(BraidWord(2, (1, 1))).dumps())
    assert link["reduced"] is None and link["components"] == 2


def test_uncertified_tail():
    res = compute_hhh(BraidWord(2, (1, 1, 1)), window=2)
    assert not res.certified and res.notes


def test_divide_truncated_infinite_quotient():
    # the quotient 1/(1 - q^2) is not a polynomial; the result is certified below the cutoff
    unred = (unknot_factor(40) * unknot_factor(40)).truncate(20)
    quot = divide_unknot_factor(unred)
    assert quot.q_cutoff < 20
    assert quot.discrepancies(unknot_factor(40), quot.q_cutoff) == []


def test_divide_rejects_nondivisible():
    with pytest.raises(PipelineError):
        divide_unknot_factor(TriSeries({(0, 0, 0): 1}, None))
