import random

import pytest

from hhh.braid import BraidWord
from hhh.complexes import (
    ChainComplex,
    complexes_equal_shape,
    deloop,
    elementary_complex,
    minimize,
    random_words,
    rouquier_complex,
    tensor_complexes,
    unit_complex,
)
from hhh.exactalg import sparse_rank
from hhh.exactalg.polymatrix import slice_offsets
from hhh.soergel import Ring, standard_maps


def slice_homology(C: ChainComplex, qs) -> dict:
    """Dimensions of the homology of C as a complex of graded left modules."""
    m = C.ring.arity
    out = {}
    for q in qs:
        ranks = {}
        for t in C.degrees():
            if t + 1 in C.groups:
                M = C.differential_matrix(t)
                cols, _, _ = M.slice_columns(q)
                ranks[t] = sparse_rank(cols)
        for t in C.degrees():
            degs = [d for B in C.groups[t] for d in B.degrees()]
            dim = slice_offsets(degs, m, q)[1] - ranks.get(t, 0) - ranks.get(t - 1, 0)
            if dim:
                out[(t, q)] = dim
    return out


def is_unit(C: ChainComplex) -> bool:
    return C.degrees() == [0] and len(C.groups[0]) == 1 and C.groups[0][0].word == () \
        and C.groups[0][0].global_shift == 0


def test_empty_word_is_unit():
    C = rouquier_complex(BraidWord(1, ()))
    assert is_unit(C) and not C.diff


def test_single_crossing():
    ring = Ring(2)
    C = rouquier_complex(BraidWord(2, (1,)), ring)
    assert C.degrees() == [0, 1]
    mult, _ = standard_maps(2, 1, ring)
    assert C.block(0, 0, 0) == mult.matrix
    assert C.d_squared_is_zero() and C.blocks_are_maps()


@pytest.mark.parametrize("reduced", [False, True])
def test_inverse_pair_minimizes_to_unit(reduced):
    ring = Ring(2, reduced)
    C = rouquier_complex(BraidWord(2, (1, -1)), ring)
    assert C.degrees() == [-1, 0, 1]
    assert is_unit(minimize(C))
    assert is_unit(minimize(rouquier_complex(BraidWord(2, (-1, 1)), ring)))


def test_tensor_shape_and_signs():
    ring = Ring(2)
    E = elementary_complex(ring, 1)
    C = tensor_complexes(E, E)
    words = {t: sorted(B.word for B in g) for t, g in C.groups.items()}
    assert words == {0: [(1, 1)], 1: [(1,), (1,)], 2: [()]}
    assert C.d_squared_is_zero()
    assert complexes_equal_shape(tensor_complexes(E, unit_complex(ring)), E)


def test_minimize_fixed_point():
    C = rouquier_complex(BraidWord(2, (1,)), Ring(2, True))
    assert complexes_equal_shape(minimize(C), C)


def test_random_words_invertibility_and_homology():
    rng = random.Random(11)
    ring = Ring(3, reduced=True)
    for w in random_words(3, 2, 4, rng):
        C = rouquier_complex(w * w.inverse(), ring)
        assert C.d_squared_is_zero()
        assert is_unit(minimize(C))


def test_minimize_preserves_slice_homology_and_euler_class():
    rng = random.Random(5)
    ring = Ring(3, reduced=True)
    for w in random_words(3, 3, 3, rng):
        C = rouquier_complex(w, ring)
        D = minimize(C)
        assert D.d_squared_is_zero() and D.blocks_are_maps()
        assert slice_homology(C, range(-8, 9)) == slice_homology(D, range(-8, 9))
        # the class in the split Grothendieck group modulo delooping
        assert _delooped_class(C) == _delooped_class(D)


def _delooped_class(C):
    return deloop(C).euler_character()


def test_incremental_minimization_agrees():
    ring = Ring(3, reduced=True)
    w = BraidWord(3, (1, -2, 1, -2))
    A = minimize(rouquier_complex(w, ring))
    B = minimize(rouquier_complex(w, ring, minimize_steps=True))
    assert slice_homology(A, range(-8, 9)) == slice_homology(B, range(-8, 9))


def test_euler_character_multiplicative():
    ring = Ring(3)
    C = rouquier_complex(BraidWord(3, (1,)), ring)
    D = rouquier_complex(BraidWord(3, (-2,)), ring)
    T = tensor_complexes(C, D)
    expected = {}
    for (wc, sc), mc in C.euler_character().items():
        for (wd, sd), md in D.euler_character().items():
            key = (wc + wd, sc + sd)
            expected[key] = expected.get(key, 0) + mc * md
    assert T.euler_character() == expected
