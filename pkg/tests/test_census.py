"""Tests for finite censuses and local/real orbit counts."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitforge.census import (CensusRow, charpoly_key, count_factors_fp,
                               finite_census, orbit_count_local,
                               orbit_count_real, so_order, _charpoly3,
                               _charpoly5_exact, _digits_array, _gram_np,
                               _ops3_from_digits, _so3_elements)
from orbitforge.errors import (BadPrime, BudgetExceeded, EvenPrime, EvenQ,
                               MaximalRankHypothesisFails, NonSeparableModP)
from orbitforge.matrix import Mat
from orbitforge.orbits import ADJOINT, STANDARD, SYM2
from orbitforge.poly import Poly

X3_MINUS_X = Poly([0, -1, 0, 1])
X3_PLUS_X = Poly([0, 1, 0, 1])
X3_PLUS_2X = Poly([0, 2, 0, 1])
X5_SKEW = Poly([0, 2, 0, 3, 0, 1])      # x(x^2+1)(x^2+2)
X5_TOTREAL = Poly([0, 4, 0, -5, 0, 1])  # x(x-1)(x+1)(x-2)(x+2)
X5_MINUS_X = Poly([0, -1, 0, 0, 0, 1])


@pytest.fixture(scope="module")
def census3_sym2():
    return finite_census(3, 1, SYM2)


@pytest.fixture(scope="module")
def census3_adj():
    return finite_census(3, 1, ADJOINT)


@pytest.fixture(scope="module")
def census5_sym2():
    return finite_census(5, 1, SYM2)


@pytest.fixture(scope="module")
def census5dim_adj():
    return finite_census(3, 2, ADJOINT)


# ---------------------------------------------------------------------------
# group order formula against direct enumeration

def test_so_order_frozen():
    # independently verified by the enumeration test below
    assert so_order(1, 3) == 24
    assert so_order(1, 5) == 120
    assert so_order(1, 7) == 336
    assert so_order(2, 3) == 51840


def test_so_order_bad_inputs():
    with pytest.raises(EvenQ):
        so_order(1, 4)
    with pytest.raises(EvenQ):
        so_order(1, 2)
    with pytest.raises(ValueError):
        so_order(0, 3)


@pytest.mark.parametrize("p", [3, 5])
def test_group_enumeration_matches_formula(p):
    G = _so3_elements(p)
    assert len(G) == so_order(1, p)


def test_group_elements_are_isometries():
    import numpy as np
    J = _gram_np(3)
    G = _so3_elements(5)
    keys = {g.tobytes() for g in G}
    for g in G[::7]:
        assert np.array_equal(g.T @ J @ g % 5, J)
    # closure under a few products
    for i, j in [(0, 1), (10, 97), (53, 118), (119, 119)]:
        prod = G[i] @ G[j] % 5
        assert prod.tobytes() in keys


# ---------------------------------------------------------------------------
# factor counting mod p

def test_count_factors_frozen():
    assert count_factors_fp(X3_MINUS_X, 5) == 3   # x(x-1)(x+1)
    assert count_factors_fp(X3_MINUS_X, 7) == 3
    assert count_factors_fp(Poly([1, 0, 1]), 3) == 1   # x^2+1 inert mod 3
    assert count_factors_fp(Poly([1, 1, 0, 1]), 5) == 1  # no roots mod 5
    assert count_factors_fp(X3_PLUS_X, 5) == 3    # x(x-2)(x+2)


def test_count_factors_errors():
    with pytest.raises(NonSeparableModP):
        count_factors_fp(Poly([0, 0, 0, 1]), 3)
    with pytest.raises(BadPrime):
        count_factors_fp(X3_MINUS_X, 9)
    with pytest.raises(BadPrime):
        count_factors_fp(Poly([Fraction(1, 3), 0, 1]), 3)


# ---------------------------------------------------------------------------
# vectorized characteristic polynomial against the exact one

def test_charpoly3_matches_exact_lift():
    p = 5
    digits = _digits_array(p ** 6, 6, p)[23::9341]
    T = _ops3_from_digits(digits, SYM2, p)
    c0, c1, c2 = _charpoly3(T, p)
    for i in range(len(T)):
        m = Mat([[Fraction(int(x)) for x in row] for row in T[i]])
        want = tuple(int(a) % p for a in m.charpoly().c)
        assert (int(c0[i]), int(c1[i]), int(c2[i]), 1) == want


# ---------------------------------------------------------------------------
# dimension three censuses

def test_census_sym2_p3_frozen(census3_sym2):
    r = census3_sym2
    assert r.group_order == 24
    assert r.space_size == 729  # 3^6 self-adjoint operators
    assert sum(row.operator_count for row in r.rows) == 729
    row = r.row((0, 2, 0, 1))   # x^3 - x mod 3, three factors so 4 orbits
    assert row.separable
    assert row.operator_count == 24
    assert row.orbit_count == 4
    assert row.orbit_sizes == (6, 6, 6, 6)
    assert row.stabilizer_orders == (4, 4, 4, 4)


def test_census_sym2_orbit_count_law(census3_sym2, census5_sym2):
    # 2^m orbits and group-order many operators per separable class
    for r in (census3_sym2, census5_sym2):
        seen_separable = 0
        for row in r.rows:
            if not row.separable:
                continue
            seen_separable += 1
            f = Poly(list(row.key))
            m = count_factors_fp(f, r.p) - 1
            assert row.orbit_count == 2 ** m
            assert row.operator_count == r.group_order
            for s, st_ in zip(row.orbit_sizes, row.stabilizer_orders):
                assert s * st_ == r.group_order
        assert seen_separable > 0


def test_census_adjoint_p3_frozen(census3_adj):
    r = census3_adj
    assert r.space_size == 27   # 3^3 skew-adjoint operators
    assert sum(row.operator_count for row in r.rows) == 27
    sep = [row for row in r.rows if row.separable]
    assert len(sep) == 2        # x^3+x and x^3+2x are the only separable odds
    assert r.row((0, 1, 0, 1)).orbit_sizes == (6,)
    assert r.row((0, 1, 0, 1)).stabilizer_orders == (4,)
    assert r.row((0, 2, 0, 1)).orbit_sizes == (12,)
    assert r.row((0, 2, 0, 1)).stabilizer_orders == (2,)


def test_census_standard_p3_frozen():
    r = finite_census(3, 1, STANDARD)
    assert r.space_size == 27
    assert sum(row.operator_count for row in r.rows) == 27
    zero_row = r.row(0)
    # the zero vector alone, then all nonzero null vectors in one orbit
    assert zero_row.orbit_sizes == (1, 8)
    for d in (1, 2):
        assert r.row(d).orbit_count == 1


def test_census_standard_null_count_independent():
    # direct scan oracle: 3^2 = 9 vectors of F_3^3 satisfy 2ac + b^2 = 0
    null = 0
    for a in range(3):
        for b in range(3):
            for c in range(3):
                if (2 * a * c + b * b) % 3 == 0:
                    null += 1
    r = finite_census(3, 1, STANDARD)
    assert sum(r.row(0).orbit_sizes) == null


def test_census_rows_are_partitions(census3_adj):
    for row in census3_adj.rows:
        assert sum(row.orbit_sizes) == row.operator_count
        assert row.complete


def test_census_polys_filter(census3_sym2):
    r = finite_census(3, 1, SYM2, polys=[X3_MINUS_X])
    assert len(r.rows) == 1
    assert r.rows[0] == census3_sym2.row((0, 2, 0, 1))


def test_census_jobs_merge_identically(census3_sym2):
    assert finite_census(3, 1, SYM2, jobs=2) == census3_sym2
    assert finite_census(3, 1, SYM2, jobs=7) == census3_sym2
    base = finite_census(5, 1, ADJOINT)
    assert finite_census(5, 1, ADJOINT, jobs=3) == base


def test_census_error_paths():
    with pytest.raises(EvenPrime):
        finite_census(2, 1, SYM2)
    with pytest.raises(BadPrime):
        finite_census(9, 1, SYM2)
    with pytest.raises(BudgetExceeded):
        finite_census(11, 1, SYM2)
    with pytest.raises(BudgetExceeded):
        finite_census(5, 2, SYM2, polys=[X5_MINUS_X])
    with pytest.raises(BudgetExceeded):
        finite_census(3, 3, SYM2)
    with pytest.raises(BudgetExceeded):
        finite_census(3, 2, SYM2)   # self-adjoint mode needs explicit polys


# ---------------------------------------------------------------------------
# dimension five

def test_census5_adjoint_accounting(census5dim_adj):
    r = census5dim_adj
    assert r.space_size == 3 ** 10
    assert sum(row.operator_count for row in r.rows) == 3 ** 10
    for row in r.rows:
        assert sum(row.orbit_sizes) == row.operator_count


def test_census5_adjoint_orbit_stabilizer(census5dim_adj):
    # the group itself is never enumerated: orbit closure under verified
    # generators times a directly measured stabilizer must hit the formula
    sep = [row for row in census5dim_adj.rows if row.separable]
    assert len(sep) == 4
    for row in sep:
        for s, st_ in zip(row.orbit_sizes, row.stabilizer_orders):
            assert s * st_ == so_order(2, 3) == 51840


def test_census5_adjoint_skew_row(census5dim_adj):
    row = census5dim_adj.row(charpoly_key(X5_SKEW, 3))  # x^5 + 2x mod 3
    assert row.separable
    assert row.orbit_sizes == (6480,)
    assert row.stabilizer_orders == (8,)


def test_census5_sym2_orbit_stabilizer():
    r = finite_census(3, 2, SYM2, polys=[X5_MINUS_X])
    row = r.rows[0]
    assert row.complete is False
    assert row.orbit_count is None
    assert row.operator_count is None
    assert row.orbit_sizes[0] * row.stabilizer_orders[0] == 51840


def test_census5_standard_rows():
    r = finite_census(3, 2, STANDARD)
    assert r.space_size == 243
    assert sum(row.operator_count for row in r.rows) == 243
    # direct scan oracle for the null count: 3^4 = 81 vectors pair to zero
    assert r.row(0).orbit_sizes == (1, 80)
    assert r.row(1).orbit_count == 1
    assert r.row(2).orbit_count == 1


def test_charpoly5_skew_matches_exact(census5dim_adj):
    import numpy as np
    from orbitforge.census import _skew5_from_digits, _charpoly5_skew
    digits = _digits_array(3 ** 10, 10, 3)[17::5003]
    T = _skew5_from_digits(digits, 3)
    e4, e2 = _charpoly5_skew(T, 3)
    for i in range(len(T)):
        assert _charpoly5_exact(T[i], 3) == (0, int(e4[i]), 0, int(e2[i]), 0, 1)


# ---------------------------------------------------------------------------
# local orbit counts at good primes

def test_local_count_sym2_frozen():
    assert orbit_count_local(X3_MINUS_X, 5, SYM2) == 10   # split: m = 2
    assert orbit_count_local(X3_MINUS_X, 3, SYM2) == 10
    assert orbit_count_local(Poly([1, 1, 0, 1]), 5, SYM2) == 1   # inert: m = 0
    # root at 2 plus an irreducible quadratic mod 5: m = 1
    assert orbit_count_local(Poly([-1, -1, 0, 1]), 5, SYM2) == 3


def test_local_count_adjoint_frozen():
    assert orbit_count_local(X3_PLUS_X, 3, ADJOINT) == 1
    assert orbit_count_local(X3_PLUS_X, 5, ADJOINT) == 1   # x^2+1 splits mod 5
    assert orbit_count_local(X3_PLUS_2X, 3, ADJOINT) == 1
    # both x^2+1 and x^2+2 stay irreducible mod 7: m = 2
    assert orbit_count_local(X5_SKEW, 7, ADJOINT) == 2


def test_local_count_bad_primes():
    with pytest.raises(BadPrime):
        orbit_count_local(X3_MINUS_X, 2, SYM2)
    with pytest.raises(BadPrime):
        orbit_count_local(Poly([-1, -1, 0, 1]), 23, SYM2)  # 23 | disc
    with pytest.raises(BadPrime):
        orbit_count_local(X3_MINUS_X, 15, SYM2)


@settings(deadline=None, max_examples=40)
@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
       st.sampled_from([5, 7, 11, 13]))
def test_local_count_sym2_law(a, b, c, p):
    f = Poly([c, b, a, 1])
    from orbitforge.poly import is_separable, discriminant
    if not is_separable(f) or discriminant(f).numerator % p == 0:
        return
    k = count_factors_fp(f, p)
    expected = {1: 1, 2: 3, 3: 10}[k]
    assert orbit_count_local(f, p, SYM2) == expected


# ---------------------------------------------------------------------------
# real orbit counts

def test_real_count_sym2_frozen():
    total, fibers = orbit_count_real(X5_TOTREAL, SYM2)
    assert total == 10          # C(5, 2)
    assert fibers == {0: 1, 2: 10, 4: 5}
    assert sum(fibers.values()) == 2 ** 4
    total, fibers = orbit_count_real(X3_MINUS_X, SYM2)
    assert total == 3           # C(3, 1)
    assert fibers == {1: 3, 3: 1}
    assert sum(fibers.values()) == 2 ** 2


def test_real_count_adjoint_frozen():
    total, fibers = orbit_count_real(X5_SKEW, ADJOINT)
    assert total == 2           # C(2, 1): even part (y+1)(y+2)
    assert fibers == {0: 1, 1: 2, 2: 1}
    total, fibers = orbit_count_real(X3_PLUS_X, ADJOINT)
    assert total == 1
    assert fibers == {0: 1, 1: 1}


def test_real_count_precondition_failures():
    with pytest.raises(MaximalRankHypothesisFails):
        orbit_count_real(Poly([-2, 0, 0, 1]), SYM2)   # one real root only
    with pytest.raises(MaximalRankHypothesisFails):
        orbit_count_real(X3_MINUS_X, ADJOINT)   # even part root is positive
    with pytest.raises(MaximalRankHypothesisFails):
        orbit_count_real(Poly([0, -1, 0, 0, 0, 1]), ADJOINT)  # roots +-1


def test_real_count_fiber_sums():
    for f in (X3_MINUS_X, X5_TOTREAL):
        n = (f.degree - 1) // 2
        _, fibers = orbit_count_real(f, SYM2)
        assert sum(fibers.values()) == 2 ** (2 * n)
    for f in (X3_PLUS_X, X5_SKEW):
        n = (f.degree - 1) // 2
        _, fibers = orbit_count_real(f, ADJOINT)
        assert sum(fibers.values()) == 2 ** n
