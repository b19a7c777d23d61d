from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ihfan.exactalg import (Echelon, FieldMismatch, Poly, QuadElt, RationalFn, det, inverse,
                            identity, kernel, leading_pivots, matmul, parse_scalar, rank,
                            sign, solve, sparse, sqrt_of, to_float, to_str, transpose)

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
quads = st.builds(lambda a, b: QuadElt.make(a, b, 2), fracs, fracs)


def test_sqrt_squares_to_radicand():
    r = sqrt_of(2)
    assert r * r == 2
    assert to_str(r) == "sqrt2"


def test_scalar_strings():
    assert to_str(Fraction(-3, 2)) == "-3/2"
    x = QuadElt.make(Fraction(1, 2), Fraction(1, 3), 2)
    assert to_str(x) == "1/2+1/3*sqrt2"
    assert parse_scalar("1/2+1/3*sqrt2", 2) == x
    assert parse_scalar("-sqrt2", 2) == -sqrt_of(2)


def test_mixed_radicands_rejected():
    with pytest.raises(FieldMismatch):
        parse_scalar("1+sqrt3", 2)
    with pytest.raises(FieldMismatch):
        parse_scalar("sqrt2")
    with pytest.raises(FieldMismatch):
        sqrt_of(2) + sqrt_of(3)


def test_non_squarefree_rejected():
    with pytest.raises(ValueError):
        QuadElt.make(0, 1, 4)


@given(quads)
def test_quad_roundtrip(x):
    assert parse_scalar(to_str(x), 2) == x


@given(quads, quads, quads)
def test_quad_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    if x != 0:
        assert x * (1 / x) == 1


@given(quads)
def test_quad_sign_matches_float(x):
    f = to_float(x)
    if abs(f) > 1e-9:
        assert sign(x) == (1 if f > 0 else -1)
    if x == 0:
        assert sign(x) == 0


def test_sign_near_zero_is_exact():
    # 99/70 approximates sqrt2 from above by about 7e-5
    x = QuadElt.make(Fraction(99, 70), -1, 2)
    assert sign(x) == 1
    assert sign(QuadElt.make(Fraction(140, 99), -1, 2)) == -1


polys = st.dictionaries(st.tuples(st.integers(0, 2), st.integers(0, 2)),
                        st.integers(-5, 5), max_size=5).map(lambda t: Poly(2, t))


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - a).is_zero()


@given(polys, polys)
def test_exact_division(a, b):
    if b.is_zero():
        return
    assert (a * b).divmod_exact(b) == a


def test_poly_evaluate_and_diff():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    p = x * x * y + 3 * y
    assert p.evaluate([2, 5]) == 35
    assert p.diff(0) == 2 * x * y
    assert p.total_degree() == 3
    assert p.degree() == 6  # linear forms sit in degree 2


def test_rational_function_cancels():
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    r = RationalFn((x + y) * x, [x + y])
    assert r.is_poly()
    assert r.as_poly() == x


def test_rational_function_sum_of_simplex_fractions():
    # 1/(x(y-x)) + 1/(y(x-y)) = 1/(xy)
    x, y = Poly.var(2, 0), Poly.var(2, 1)
    s = RationalFn(Poly.const(2, 1), [x, y - x]) + RationalFn(Poly.const(2, 1), [y, x - y])
    assert s.num * Poly.const(2, 1) == s.num
    assert s == RationalFn(Poly.const(2, 1), [x, y])


small = st.integers(-4, 4)
square3 = st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3)


@given(square3, square3)
def test_det_multiplicative(a, b):
    a = [[Fraction(x) for x in r] for r in a]
    b = [[Fraction(x) for x in r] for r in b]
    assert det(matmul(a, b)) == det(a) * det(b)


@given(square3)
def test_inverse(a):
    a = [[Fraction(x) for x in r] for r in a]
    if det(a) == 0:
        return
    assert matmul(a, inverse(a)) == identity(3)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    rows = [sparse([Fraction(x) for x in r]) for r in rows]
    ker = kernel(rows, 4)
    assert rank(rows) + len(ker) == 4
    for v in ker:
        for r in rows:
            assert sum(r.get(j, 0) * v.get(j, 0) for j in range(4)) == 0


def test_solve_inconsistent():
    rows = [sparse([1, 1]), sparse([2, 2])]
    assert solve(rows, [1, 3], 2) is None
    assert solve(rows, [1, 2], 2) is not None


def test_echelon_coordinates():
    e = Echelon()
    e.insert(sparse([1, 1, 0]), tag={0: 1})
    e.insert(sparse([0, 1, 1]), tag={1: 1})
    assert e.in_span(sparse([1, 2, 1]))
    assert e.coordinates(sparse([1, 2, 1])) == {0: 1, 1: 1}
    assert not e.in_span(sparse([0, 0, 1]))


def test_leading_pivots_sqrt2():
    g = [[2, sqrt_of(2)], [sqrt_of(2), 2]]
    piv = leading_pivots(g)
    assert piv[0] == 2 and piv[1] == 1
    assert det(g) == 2


def test_transpose():
    assert transpose([[1, 2, 3]]) == [[1], [2], [3]]
