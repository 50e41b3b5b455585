import pytest
import sympy as sp
from hypothesis import given, strategies as st

from malcev_forge.poly import (
    DimensionError,
    Polynomial,
    build_f_c,
    compose,
    divmod_univariate,
    evaluate,
    format_polynomial,
    g_c,
    h_c,
    mono_divides,
    parse_polynomial,
    poly_arith,
    poly_pow,
    shift_substitute,
    univariate,
    verify_f_factorizations,
)

from oracles import f_c_sympy, sympy_to_terms


def X(i, n=3):
    return Polynomial.variable(n, i)


def polys(n=3, max_exp=3, max_terms=5):
    mono = st.tuples(*[st.integers(0, max_exp)] * n)
    return st.dictionaries(mono, st.integers(-20, 20), max_size=max_terms).map(lambda t: Polynomial(n, t))


# -- monomials ---------------------------------------------------------------

@pytest.mark.parametrize("d, m, expected", [
    ((1, 0), (1, 1), True),
    ((2, 0), (1, 1), False),
    ((0, 0), (3, 5), True),
    ((0, 0, 0), (0, 0, 0), True),
])
def test_mono_divides(d, m, expected):
    assert mono_divides(d, m) is expected


def test_mono_divides_dimension_mismatch():
    with pytest.raises(DimensionError):
        mono_divides((1, 0), (1, 0, 0))


# -- arithmetic ---------------------------------------------------------------

def test_arith_examples():
    x1, x2 = X(0, 2), X(1, 2)
    assert poly_arith(x1 - 1, x1 + 1, "mul") == x1**2 - 1
    p = 3 * x1 * x2 - 7
    assert poly_arith(p, -p, "add").terms == {}
    assert (x1 + x2) * (x1 + x2) == Polynomial(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
    with pytest.raises(ValueError):
        poly_arith(p, p, "div")


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        X(0, 2) + X(0, 3)
    with pytest.raises(DimensionError):
        poly_arith(X(0, 2), X(0, 3), "mul")


def test_canonical_form_drops_zeros():
    p = Polynomial(2, {(1, 0): 0, (0, 1): 2})
    assert p.terms == {(0, 1): 2}
    assert (p - p).is_zero()


def test_pow_examples():
    x1 = X(0, 1)
    assert poly_pow(x1 - 1, 0) == Polynomial.constant(1, 1)
    assert poly_pow(x1 - 1, 2) == x1**2 - 2 * x1 + 1
    base = (X(0) + 1) * (X(1) + 1) * (X(2) + 1) - 1
    assert poly_pow(base, 3).constant_term() == 0
    with pytest.raises(ValueError):
        poly_pow(x1, -1)


def test_pow_matches_sympy():
    xs = sp.symbols("x1:4")
    base = (X(0) + 1) * (X(1) + 1) * (X(2) + 1) - 1
    expected = sympy_to_terms(((xs[0] + 1) * (xs[1] + 1) * (xs[2] + 1) - 1) ** 3, xs)
    assert poly_pow(base, 3).terms == expected


@given(polys(), polys(), polys())
def test_ring_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert (p + q) + r == p + (q + r)
    assert p * (q + r) == p * q + p * r
    assert p * q == q * p
    assert p - p == Polynomial(3)


# -- shift -------------------------------------------------------------------

def test_shift_examples():
    c = 3
    x1, x2 = X(0, 2), X(1, 2)
    assert shift_substitute((x1 - 1) ** c) == x1**c
    assert shift_substitute((x1 - 1) * (x1 * x2 - 1) ** (c - 1)) == x1 * (x1 + x2 + x1 * x2) ** (c - 1)
    assert shift_substitute(Polynomial.constant(2, 5)) == Polynomial.constant(2, 5)


@given(polys(max_exp=2, max_terms=4), polys(max_exp=2, max_terms=4))
def test_shift_is_multiplicative(p, q):
    assert shift_substitute(p * q) == shift_substitute(p) * shift_substitute(q)
    assert shift_substitute(p + q) == shift_substitute(p) + shift_substitute(q)


@given(polys(max_exp=3, max_terms=4))
def test_shift_agrees_with_compose(p):
    images = [X(i) + 1 for i in range(3)]
    assert shift_substitute(p) == compose(p, images)


# -- f_c ---------------------------------------------------------------------

def test_f_c_small_cases():
    x = Polynomial.variable(2, 0)
    assert build_f_c(1) == x - 1
    assert str(build_f_c(2)) == "X^2*Y - X*Y - X + 1"
    with pytest.raises(ValueError):
        build_f_c(0)


@pytest.mark.parametrize("c", range(1, 7))
def test_f_c_matches_sympy(c):
    f, x, y = f_c_sympy(c)
    assert build_f_c(c).terms == sympy_to_terms(f, (x, y))


@pytest.mark.parametrize("c", range(1, 9))
def test_f_c_vanishes_at_x_equal_one(c):
    y = Polynomial.variable(1, 0)
    one = Polynomial.constant(1, 1)
    assert compose(build_f_c(c), [one, y]).is_zero()


@pytest.mark.parametrize("c", range(1, 9))
def test_factorizations_hold(c):
    rep = verify_f_factorizations(c)
    assert rep.identity_1 and rep.identity_1bis and rep.identity_2 and rep.quotients_agree
    assert rep.ok
    assert rep.h_at_1 == rep.g_at_1 * 2 ** (c - 1)


def test_factorization_values():
    assert verify_f_factorizations(2).g == Polynomial.constant(1, 1)
    rep3 = verify_f_factorizations(3)
    assert rep3.g == univariate([1, 1])
    assert rep3.g_at_1 == 2
    assert rep3.h_at_1 == 8
    # sympy: g_4 = (X+1)^2 (X^2+1), h_4(1) = 64
    assert g_c(4) == univariate([1, 1]) ** 2 * univariate([1, 0, 1])
    assert evaluate(h_c(4), [1]) == 64


@pytest.mark.parametrize("c", range(2, 7))
def test_g_and_h_against_sympy(c):
    f, x, y = f_c_sympy(c)
    g_ref = sp.cancel(f.subs(y, 1) / (x - 1) ** c)
    h_ref = sp.cancel(f.subs(y, x) / (x - 1) ** c)
    assert g_c(c).terms == sympy_to_terms(g_ref, (x,))
    assert h_c(c).terms == sympy_to_terms(h_ref, (x,))


def test_divmod_univariate():
    x = Polynomial.variable(1, 0)
    q, r = divmod_univariate(x**3 + 2 * x + 5, x - 1)
    assert q == x**2 + x + 3 and r == Polynomial.constant(1, 8)
    with pytest.raises(ValueError):
        divmod_univariate(x, 2 * x)


# -- text format ---------------------------------------------------------------

def test_format_examples():
    assert format_polynomial(Polynomial(2)) == "0"
    p = Polynomial(2, {(2, 1): 1, (1, 1): -1, (1, 0): -1, (0, 0): 1}, ("X1", "Y1"))
    assert str(p) == "X1^2*Y1 - X1*Y1 - X1 + 1"
    assert str(-3 * X(1)) == "-3*X2"


@given(polys())
def test_text_round_trip(p):
    assert parse_polynomial(str(p), p.names) == p


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_polynomial("X1 + + 2", ("X1",))
    with pytest.raises(ValueError):
        parse_polynomial("Z^2", ("X1",))


def test_module_doctest():
    import doctest

    import malcev_forge.poly as poly

    assert doctest.testmod(poly).failed == 0
