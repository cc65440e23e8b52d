import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxgrow.polyarith import (
    ONE,
    IntPolynomial,
    NonIntegralSeriesError,
    NotDivisibleError,
    RationalFunction,
    bracket,
    bracket_product,
    exact_divide,
    format_poly,
    parse_poly,
    poly_gcd,
    rational_sum,
    reciprocal_substitution,
    taylor_coefficients,
)

P = IntPolynomial


def rf(num, den):
    return RationalFunction(P(num), P(den))


# --- IntPolynomial ------------------------------------------------------------------

def test_trailing_zeros_trimmed():
    assert P((1, 2, 0, 0)).coeffs == (1, 2)
    assert P((0, 0)).is_zero
    assert P(()).degree < 0


def test_degree_of_product_adds():
    a, b = P((1, -3, 2)), P((5, 0, 0, 7))
    assert (a * b).degree == a.degree + b.degree


def test_arithmetic():
    a, b = P((1, 1)), P((-1, 1))
    assert (a * b).coeffs == (-1, 0, 1)
    assert (a + b).coeffs == (0, 2)
    assert (a - b).coeffs == (2,)
    assert a(3) == 4


def test_content_and_primitive():
    p = P((-4, 6, 2))
    assert abs(p.content()) == 2
    assert p.primitive().coeffs in ((-2, 3, 1), (2, -3, -1))


def test_pseudo_divmod_identity():
    a, b = P((1, 2, 3, 4)), P((1, 2))
    q, r, s = a.pseudo_divmod(b)
    assert b * q + r == a.scale(b.leading ** s)
    assert r.degree < b.degree


def test_gcd():
    a = P((-1, 0, 1))  # (t-1)(t+1)
    b = P((1, -2, 1))  # (t-1)^2
    g = poly_gcd(a, b)
    assert g.degree == 1 and g(1) == 0


# --- bracket --------------------------------------------------------------------------

@pytest.mark.parametrize("n, coeffs", [(1, (1,)), (2, (1, 1)), (4, (1, 1, 1, 1))])
def test_bracket(n, coeffs):
    assert bracket(n).coeffs == coeffs


def test_bracket_zero_rejected():
    with pytest.raises(ValueError):
        bracket(0)


def test_bracket_product():
    assert bracket_product([2, 3]).coeffs == (1, 2, 2, 1)
    assert bracket_product([]) == ONE
    assert bracket_product([2, 6, 10])(1) == 120
    with pytest.raises(ValueError):
        bracket_product([2, 0])


@given(st.lists(st.integers(1, 8), max_size=5))
def test_bracket_product_at_one(ns):
    expected = 1
    for n in ns:
        expected *= n
    assert bracket_product(ns)(1) == expected


# --- rational functions -----------------------------------------------------------------

def test_canonical_form():
    r = rf((2, 2), (-4, 0, 4))  # 2(1+t) / 4(t^2-1) = 1/(2(t-1))
    assert r.den.leading > 0
    assert r == rf((1,), (-2, 2))


def test_zero_denominator_rejected():
    with pytest.raises(ZeroDivisionError):
        rf((1,), ())


def test_rational_sum_examples():
    assert rational_sum([(1, rf((1,), (1,))), (-1, rf((2,), (1, 1)))]) == rf((-1, 1), (1, 1))
    p_q = rf((3, 3), (6, 0, 6))
    assert rational_sum([(1, p_q)]) == p_q
    zero = rational_sum([(1, rf((1,), (-1, 1))), (-1, rf((1,), (-1, 1)))])
    assert zero.is_zero and zero.den == ONE


def test_reciprocal_substitution_examples():
    assert reciprocal_substitution(rf((-1, 1), (1, 1))) == rf((1, -1), (1, 1))
    assert reciprocal_substitution(rf((7,), (1,))) == rf((7,), (1,))
    with pytest.raises(ValueError):
        reciprocal_substitution(rf((), (1,)))


def test_taylor_examples():
    assert taylor_coefficients(rf((1, 1), (1, -1)), 4) == [1, 2, 2, 2]
    assert taylor_coefficients(RationalFunction(bracket_product([2, 3]), ONE), 4) == [1, 2, 2, 1]
    assert taylor_coefficients(rf((1,), (1,)), 3) == [1, 0, 0]


def test_taylor_errors():
    with pytest.raises(ZeroDivisionError):
        taylor_coefficients(rf((1,), (0, 1)), 3)
    with pytest.raises(NonIntegralSeriesError):
        taylor_coefficients(rf((1,), (2, 1)), 3)


def test_exact_divide():
    assert exact_divide(P((-1, 0, 1)), P((-1, 1))) == P((1, 1))
    p = P((3, 0, 2))
    assert exact_divide(p, ONE) == p
    with pytest.raises(NotDivisibleError) as info:
        exact_divide(P((1, 0, 1)), P((-1, 1)))
    assert info.value.remainder == P((2,))


# --- text syntax -------------------------------------------------------------------------

@pytest.mark.parametrize("text", ["5t^2+4t-1", "t^3-2", "-t", "7", "0", "t^10+t"])
def test_text_round_trip(text):
    assert format_poly(parse_poly(text)) == text


def test_parse_implicit_coefficients():
    assert parse_poly("t^2 - t + 1").coeffs == (1, -1, 1)
    with pytest.raises(ValueError):
        parse_poly("t^^2")


# --- properties ---------------------------------------------------------------------------

small_polys = st.lists(st.integers(-5, 5), min_size=1, max_size=7).map(lambda c: P(tuple(c)))
nonzero_polys = small_polys.filter(lambda p: not p.is_zero)
unit_const_polys = st.lists(st.integers(-5, 5), min_size=0, max_size=6).map(lambda c: P((1, *c)))


@given(small_polys, small_polys)
def test_taylor_of_product_is_convolution(a, b):
    n = 10
    conv = [0] * n
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            if i + j < n:
                conv[i + j] += x * y
    assert taylor_coefficients(RationalFunction(a * b, ONE), n) == conv


rational_functions = st.builds(RationalFunction, small_polys, nonzero_polys)


@settings(max_examples=60)
@given(rational_functions, rational_functions, rational_functions)
def test_rational_sum_associative_commutative(a, b, c):
    left = rational_sum([(1, rational_sum([(1, a), (1, b)])), (1, c)])
    right = rational_sum([(1, a), (1, rational_sum([(1, b), (1, c)]))])
    assert left == right
    assert rational_sum([(1, a), (-1, b)]) == rational_sum([(-1, b), (1, a)])


@given(rational_functions.filter(lambda r: not r.is_zero))
def test_reciprocal_substitution_involution(r):
    assert reciprocal_substitution(reciprocal_substitution(r)) == r


@given(unit_const_polys)
def test_taylor_inverse(p):
    # (1/p) * p == 1 as power series
    inv = taylor_coefficients(RationalFunction(ONE, p), 8)
    prod = taylor_coefficients(RationalFunction(P(tuple(inv)) * p, ONE), 8)
    assert prod == [1] + [0] * 7
