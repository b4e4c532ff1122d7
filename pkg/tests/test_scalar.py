from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stackypoly import poly
from stackypoly.scalar import QQ, FieldError, RealAlgebraicField, format_rational, parse_element

SQRT2 = RealAlgebraicField([-2, 0, 1], [1, Fraction(3, 2)])
CBRT2 = RealAlgebraicField([-2, 0, 0, 1], [1, 2])
NEG_SQRT3 = RealAlgebraicField([-3, 0, 1], [-2, -1])

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def elements(K):
    return st.lists(rationals, min_size=K.degree, max_size=K.degree).map(K)


any_field = st.sampled_from([SQRT2, CBRT2, NEG_SQRT3])


@st.composite
def triples(draw):
    K = draw(any_field)
    return tuple(draw(elements(K)) for _ in range(3))


def test_spec_arithmetic():
    r = SQRT2.gen
    assert r * r == SQRT2(2)
    assert (1 + r) * (r - 1) == SQRT2.one
    assert r.inverse().coeffs == (0, Fraction(1, 2))
    assert (1 / r) == r / 2


def test_spec_sign():
    r = SQRT2.gen
    assert SQRT2.zero.sign() == 0
    assert (r - Fraction(7, 5)).sign() == 1
    assert (r - Fraction(3, 2)).sign() == -1


def test_spec_approx():
    r = SQRT2.gen
    a = r.approx(Fraction(1, 100))
    assert Fraction(14042, 10000) < a < Fraction(14243, 10000)
    assert SQRT2(Fraction(3, 7)).approx(Fraction(1, 10**9)) == Fraction(3, 7)
    assert abs((1 + r).approx(Fraction(1, 10)) - Fraction(241421, 100000)) < Fraction(1, 10)


def test_symbolic_zero():
    r = CBRT2.gen
    assert (r**3 - 2).is_zero()
    assert (r * r * r).to_fraction() == 2
    assert ((r + 1) ** 3 - (r**3 + 3 * r**2 + 3 * r + 1)).sign() == 0


def test_negative_root_field():
    r = NEG_SQRT3.gen
    assert r.sign() == -1
    assert float(r) == pytest.approx(-(3**0.5))


def test_rationals():
    assert QQ.degree == 1 and QQ.is_rational
    x = QQ(Fraction(-3, 4))
    assert x.sign() == -1 and x.to_fraction() == Fraction(-3, 4)
    assert QQ == RealAlgebraicField([5, -1])
    assert hash(QQ(1)) == hash(Fraction(1))


@pytest.mark.parametrize(
    "poly_, interval",
    [
        ([-4, 0, 1], [1, 3]),  # reducible
        ([-2, 0, 1], [-2, 2]),  # two roots
        ([-2, 0, 1], [2, 3]),  # no root
        ([-2, 0, 1], None),
        ([-2, 0, 1], [2, 1]),
        ([1], None),
    ],
)
def test_field_rejects_bad_input(poly_, interval):
    with pytest.raises(FieldError):
        RealAlgebraicField(poly_, interval)


def test_mixing_fields_fails():
    with pytest.raises(ValueError):
        SQRT2.gen + CBRT2.gen


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        SQRT2.zero.inverse()


def test_text_forms():
    assert format_rational(Fraction(3)) == "3/1"
    assert parse_element(SQRT2, "[1/2, 0/1]") == SQRT2(Fraction(1, 2))
    with pytest.raises(ValueError):
        parse_element(SQRT2, "1/2")
    assert SQRT2([Fraction(1), Fraction(-2)]).to_text() == "[1/1, -2/1]"


@settings(max_examples=150, deadline=None)
@given(triples())
def test_field_axioms(abc):
    a, b, c = abc
    K = a.field
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == K.zero
    if not a.is_zero():
        assert a * a.inverse() == K.one


@settings(max_examples=150, deadline=None)
@given(any_field.flatmap(lambda K: st.tuples(elements(K), elements(K))), st.integers(1, 40))
def test_sign_consistent_with_approx(pair, k):
    a, b = pair
    e = Fraction(1, 2**k)
    if (a - b).sign() > 0:
        assert a.approx(e) > b.approx(e) - 2 * e
    assert abs(a.approx(e) - a.approx(Fraction(1, 2**60))) <= e + Fraction(1, 2**60)


@settings(max_examples=100, deadline=None)
@given(triples())
def test_order_is_total_and_transitive(abc):
    a, b, c = abc
    assert (a < b) + (a == b) + (b < a) == 1
    if a <= b and b <= c:
        assert a <= c
    assert (a < b) == ((b - a).sign() > 0)


@settings(max_examples=100, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=6), rationals, rationals)
def test_sturm_count_matches_sympy(coeffs, lo, hi):
    import sympy

    p = poly.normalize(coeffs)
    if poly.degree(p) < 1 or lo >= hi:
        return
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i for i, c in enumerate(p))
    roots = [r for r in sympy.Poly(expr, x).real_roots() if sympy.Rational(lo.numerator, lo.denominator) < r <= sympy.Rational(hi.numerator, hi.denominator)]
    assert poly.count_roots(p, lo, hi) == len(set(roots))
