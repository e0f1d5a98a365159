import pytest

from hhh.exactalg import PolyMatrix, TriSeries
from hhh.soergel import (
    BimoduleMap,
    Ring,
    SoergelError,
    bigraded_character,
    bs_bimodule,
    deloop_data,
    elementary_bimodule,
    hom_space,
    standard_maps,
    tensor_maps,
    tensor_over_R,
    unit_bimodule,
)

R2 = Ring(2)
R3 = Ring(3)


def _bimodules():
    return [
        unit_bimodule(2),
        elementary_bimodule(2, 1),
        bs_bimodule((1, 1), R2),
        bs_bimodule((1, 2, 1), R3),
        bs_bimodule((2, 1, 2), R3),
        bs_bimodule((1, 2), Ring(3, reduced=True)),
    ]


def test_elementary_right_action():
    B = elementary_bimodule(2, 1)
    x1, x2 = R2.x(1), R2.x(2)
    expected = PolyMatrix.from_rows([[R2.zero(), -(x1 * x2)], [R2.one(), x1 + x2]], 2)
    assert B.ra(1) == expected
    assert B.ra(2) == PolyMatrix.scalar(x1 + x2, 2) - B.ra(1)
    B3 = elementary_bimodule(3, 1)
    assert B3.ra(3) == PolyMatrix.scalar(R3.x(3), 2)
    assert B.basis_degrees == (0, 2)


def test_index_out_of_range():
    with pytest.raises(SoergelError):
        elementary_bimodule(2, 2)
    with pytest.raises(SoergelError):
        elementary_bimodule(3, 0)


@pytest.mark.parametrize("B", _bimodules(), ids=repr)
def test_right_actions_commute_and_are_central(B):
    m = B.ring.n
    for j in range(1, m + 1):
        for k in range(1, m + 1):
            assert B.ra(j) @ B.ra(k) == B.ra(k) @ B.ra(j)
        assert B.ra(j).with_degrees(B.basis_degrees, tuple(d + 2 for d in B.basis_degrees)).is_homogeneous()
    total = B.ra(1)
    for j in range(2, m + 1):
        total = total + B.ra(j)
    e1 = B.ring.x(1)
    for j in range(2, m + 1):
        e1 = e1 + B.ring.x(j)
    assert total == PolyMatrix.scalar(e1, B.rank)


def test_untouched_variables_act_as_scalars():
    B = bs_bimodule((1, 1), Ring(4))
    for j in (3, 4):
        assert B.ra(j) == PolyMatrix.scalar(Ring(4).x(j), 4)


def test_tensor_examples():
    B1 = elementary_bimodule(2, 1)
    BB = tensor_over_R(B1, B1)
    assert BB.rank == 4 and sorted(BB.basis_degrees) == [0, 2, 2, 4]
    assert bs_bimodule((1, 2, 1), R3).rank == 8
    BU = tensor_over_R(B1, unit_bimodule(2))
    assert BU.rank == 2 and BU.basis_degrees == B1.basis_degrees
    assert all(BU.ra(j) == B1.ra(j) for j in (1, 2))
    with pytest.raises(Exception):
        tensor_over_R(B1, elementary_bimodule(3, 1))


def test_characters():
    one_plus_q2 = TriSeries({(0, 0, 0): 1, (0, 0, 2): 1})
    B1 = elementary_bimodule(2, 1)
    assert bigraded_character(B1) == one_plus_q2
    assert bigraded_character(unit_bimodule(2)) == TriSeries.one()
    assert bigraded_character(bs_bimodule((1, 1), R2)) == one_plus_q2 * one_plus_q2
    # multiplicativity and the decategorified quadratic relation
    A, B = bs_bimodule((1, 2), R3), bs_bimodule((2, 1, 1), R3)
    assert bigraded_character(tensor_over_R(A, B)) == bigraded_character(A) * bigraded_character(B)
    assert bigraded_character(bs_bimodule((1, 1), R2)) == bigraded_character(B1) * one_plus_q2


@pytest.mark.parametrize("n,i", [(2, 1), (3, 1), (3, 2)])
def test_standard_maps(n, i):
    ring = Ring(n)
    mult, dot = standard_maps(n, i, ring)
    assert mult.intertwines() and dot.intertwines()
    assert mult.is_homogeneous() and dot.is_homogeneous()
    composite = mult.compose(dot).matrix
    assert composite == PolyMatrix.scalar(ring.x(i) - ring.x(i + 1), 1)
    # dot(1) = x_i (1(x)1) - 1(x)x_{i+1}, i.e. the column [-x_{i+1}, 1]
    assert dot.matrix[0, 0] == -ring.x(i + 1) and dot.matrix[1, 0] == ring.one()


def test_mult_surjective_on_slices():
    from hhh.exactalg import graded_slice_rank

    mult, _ = standard_maps(2, 1)
    M = mult.matrix.with_degrees(mult.target.degrees(), mult.source.degrees())
    for q in range(0, 16, 2):
        rank, _ = graded_slice_rank(M, q)
        assert rank == q // 2 + 1  # dimension of R in degree q


def test_spec_dot_formula_is_not_a_bimodule_map():
    # x_i(1(x)1) - 1(x)x_i: column [x_1, -1]
    ring = R2
    B1 = elementary_bimodule(2, 1)
    M = PolyMatrix.from_rows([[ring.x(1)], [-ring.one()]], 2, (0, 2), (2,))
    assert not BimoduleMap(unit_bimodule(2).shifted(2), B1, M).intertwines()


def test_tensor_of_maps_is_a_map():
    mult, dot = standard_maps(3, 1)
    B2 = elementary_bimodule(3, 2)
    from hhh.soergel import identity_map

    f = tensor_maps(mult, identity_map(B2))
    g = tensor_maps(identity_map(B2), dot)
    assert f.intertwines() and g.intertwines()


def test_hom_space_dimensions():
    B1 = elementary_bimodule(2, 1)
    R = unit_bimodule(2)
    assert len(hom_space(B1, R)) == 1
    assert len(hom_space(R.shifted(2), B1)) == 1
    assert len(hom_space(B1, B1)) == 1


@pytest.mark.parametrize("i,n", [(1, 2), (2, 3)])
def test_delooping_identities(i, n):
    d = deloop_data(Ring(n, reduced=True), i)
    (j0, j1), (p0, p1) = d.incl, d.proj
    for f in (j0, j1, p0, p1):
        assert f.intertwines()
