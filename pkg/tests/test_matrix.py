from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from orbitforge import matrix
from orbitforge.errors import Inconsistent, NonIntegral, NotSquare
from orbitforge.matrix import Mat
from orbitforge.poly import Poly


def test_mul_identity_and_inverse():
    m = Mat([[1, 2], [3, 5]])
    i2 = Mat.identity(2)
    assert m * i2 == m
    assert m * m.inv() == i2
    assert m.inv() * m == i2


def test_det_known():
    assert Mat([[1, 2], [3, 4]]).det() == -2
    assert Mat([[0, 0, 1], [0, 1, 0], [1, 0, 0]]).det() == -1
    assert Mat([[2, 0], [0, 3]]).det() == 6
    assert Mat([[1, 2], [2, 4]]).det() == 0


def test_singular_inverse():
    with pytest.raises(Inconsistent):
        Mat([[1, 2], [2, 4]]).inv()


def test_charpoly_companion():
    f = Poly([-2, 0, 0, 1])  # x^3 - 2
    assert Mat.companion(f).charpoly() == f
    g = Poly([3, -1, 4, 0, 1])
    assert Mat.companion(g).charpoly() == g


def test_charpoly_small():
    assert Mat([[0, 0], [0, 0]]).charpoly() == Poly([0, 0, 1])
    assert Mat([[0, 1], [1, 0]]).charpoly() == Poly([-1, 0, 1])
    assert Mat.diag([1, 2, 3]).charpoly() == Poly.from_roots([1, 2, 3])


entry = st.integers(min_value=-5, max_value=5)


@given(st.lists(st.lists(entry, min_size=3, max_size=3), min_size=3, max_size=3))
def test_charpoly_similarity_invariant(rows):
    m = Mat(rows)
    u = Mat([[1, 1, 0], [0, 1, 2], [0, 0, 1]])  # unipotent, invertible
    assert (u * m * u.inv()).charpoly() == m.charpoly()


@given(st.lists(st.lists(entry, min_size=3, max_size=3), min_size=3, max_size=3))
def test_charpoly_matches_det_definition(rows):
    m = Mat(rows)
    f = m.charpoly()
    # evaluate det(xI - M) at x = 7 directly
    x = 7
    d = (Mat.identity(3) * x - m).det()
    assert f(x) == d


def test_solve_and_kernel():
    m = Mat([[1, 2], [3, 4]])
    x = matrix.solve(m, (5, 6))
    assert m.apply(x) == (5, 6)
    sing = Mat([[1, 2], [2, 4]])
    with pytest.raises(Inconsistent):
        matrix.solve(sing, (1, 0))
    ker = matrix.kernel(sing)
    assert len(ker) == 1
    assert sing.apply(ker[0]) == (0, 0)


def test_solve_underdetermined():
    m = Mat([[1, 1, 1]])
    x = matrix.solve(m, (3,))
    assert sum(x) == 3


def test_hnf_identity():
    cols = matrix.hnf_columns([(1, 0), (0, 1)])
    assert cols == [(1, 0), (0, 1)]


def test_hnf_index_two_lattice():
    # oracle: the lattice spanned by (2,0), (0,2), (1,1) is
    # {(x, y) : x + y even}, index 2, HNF basis columns (1,1), (0,2)
    cols = matrix.hnf_columns([(2, 0), (0, 2), (1, 1)])
    assert cols == [(1, 1), (0, 2)]


def test_hnf_permutation_invariant():
    gens = [(4, 2), (2, 8), (6, 6)]
    base = matrix.hnf_columns(gens)
    import itertools

    for perm in itertools.permutations(gens):
        assert matrix.hnf_columns(list(perm)) == base


def test_hnf_rejects_rationals():
    with pytest.raises(NonIntegral):
        matrix.hnf_columns([(Fraction(1, 2), 0), (0, 1)])


def test_hnf_rank_deficient():
    cols = matrix.hnf_columns([(2, 4), (1, 2)])
    assert cols == [(1, 2)]


def test_apply_and_shape_errors():
    m = Mat([[1, 2, 3], [4, 5, 6]])
    assert m.apply((1, 0, 0)) == (1, 4)
    assert m.transpose().rows == ((1, 4), (2, 5), (3, 6))
    with pytest.raises(NotSquare):
        m.det()
