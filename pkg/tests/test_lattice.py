import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rostcenter.lattice import (
    InfiniteQuotient,
    IntegerMatrix,
    RationalVector,
    SingularMatrix,
    inverse_rational,
    lattice_quotient,
    smith_normal_form,
    solve_rational,
    unimodular_inverse,
)

from oracles import check_snf, frac_det, minor_gcd_oracle, random_matrices


def test_snf_cartan_a2():
    s = smith_normal_form(IntegerMatrix.from_rows([[2, -1], [-1, 2]]))
    assert s.diag == (1, 3)
    assert s.invariant_factors == (3,)


def test_snf_zero_and_rectangular():
    s = smith_normal_form(IntegerMatrix.zeros(2, 3))
    assert s.diag == (0, 0)
    check_snf([[2, 4, 4], [-6, 6, 12], [10, -4, -16]])
    check_snf([[6, 4], [4, 6], [2, 2]])


def test_snf_known_invariants():
    s = smith_normal_form(IntegerMatrix.from_rows([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert s.diag == (2, 6, 12)


def test_snf_against_minor_gcd_oracle():
    # the acceptance suite runs the full 1000-matrix sweep
    for rows in random_matrices(250, seed=99):
        check_snf(rows)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-20, 20), min_size=c, max_size=c), min_size=r, max_size=r))))
def test_snf_property(rows):
    check_snf(rows)


def test_library_minors_gcd_matches_oracle():
    for rows in random_matrices(60, seed=7):
        m = IntegerMatrix.from_rows(rows, len(rows[0]))
        for k in range(1, min(m.rows, m.cols) + 1):
            assert m.minors_gcd(k) == minor_gcd_oracle(rows, k)


def test_solve_rational_is_exact():
    a2 = IntegerMatrix.from_rows([[2, -1], [-1, 2]])
    assert solve_rational(a2, [1, 0]) == (Fraction(2, 3), Fraction(1, 3))
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 6)
        rows = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        m = IntegerMatrix.from_rows(rows, n)
        rhs = [rng.randint(-9, 9) for _ in range(n)]
        if frac_det(rows) == 0:
            with pytest.raises(SingularMatrix):
                solve_rational(m, rhs)
            continue
        x = solve_rational(m, rhs)
        assert all(isinstance(c, Fraction) for c in x)
        assert tuple(m.apply(x)) == tuple(rhs)


def test_inverse_and_unimodular_inverse():
    m = IntegerMatrix.from_rows([[2, 1], [7, 4]])
    inv = unimodular_inverse(m)
    assert m @ inv == IntegerMatrix.identity(2)
    with pytest.raises(ValueError):
        unimodular_inverse(IntegerMatrix.from_rows([[2, 0], [0, 1]]))
    assert inverse_rational(IntegerMatrix.from_rows([[2]])) == [[Fraction(1, 2)]]


def test_rational_vector():
    v = RationalVector([Fraction(1, 2), 1, Fraction(2, 3)])
    assert v.denominator == 6
    assert not v.is_integral()
    assert (v * 6).as_ints() == (3, 6, 4)
    assert v + v - v == v
    assert -v == RationalVector([Fraction(-1, 2), -1, Fraction(-2, 3)])


def test_quotient_examples():
    assert lattice_quotient(IntegerMatrix.from_rows([[2, -1], [-1, 2]])).invariant_factors == (3,)
    d4 = [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]]
    q = lattice_quotient(IntegerMatrix.from_rows(d4))
    assert q.invariant_factors == (2, 2)
    assert q.order == 4 and q.exponent == 2
    assert str(q) == "Z/2 + Z/2"


def test_quotient_empty_and_degenerate():
    q = lattice_quotient(IntegerMatrix.zeros(0, 0))
    assert q.is_trivial and q.order == 1 and q.generators == ()
    with pytest.raises(InfiniteQuotient):
        lattice_quotient(IntegerMatrix.from_rows([[1, 2], [2, 4]]))
    with pytest.raises(ValueError):
        lattice_quotient(IntegerMatrix.zeros(2, 3))


def test_quotient_generators_have_exact_orders():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 5)
        rows = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(n)]
        if frac_det(rows) == 0:
            continue
        b = IntegerMatrix.from_rows(rows, n)
        q = lattice_quotient(b)
        assert q.order == abs(frac_det(rows))
        for d, g in zip(q.invariant_factors, q.generators):
            assert q.contains_in_sublattice(g * d)
            for e in range(1, d):
                if d % e == 0:
                    assert not q.contains_in_sublattice(g * e)


def test_integer_matrix_validation():
    with pytest.raises(ValueError):
        IntegerMatrix.from_rows([[1, 2], [3]])
    m = IntegerMatrix.from_rows([[1, 2], [3, 4]])
    assert m.T.tolist() == [[1, 3], [2, 4]]
    assert m.det() == -2
    assert m[1, 0] == 3


def test_invariant_factors_agree_with_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    for rows in random_matrices(200, seed=5):
        ours = smith_normal_form(IntegerMatrix.from_rows(rows, len(rows[0]))).diag
        theirs = sympy_snf(sympy.Matrix(rows), domain=sympy.ZZ)
        k = min(len(rows), len(rows[0]))
        assert ours == tuple(abs(int(theirs[i, i])) for i in range(k))
