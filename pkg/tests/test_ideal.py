import itertools

import pytest
from hypothesis import given, strategies as st

from malcev_forge.ideal import (
    MonomialIdeal,
    QuotientNotFiniteError,
    build_ideal_c,
    check_b_subset_c,
    check_congruence,
    check_m_power_subset,
    check_shift_consistency,
    contains_monomial,
    ideal_a_generators,
    ideal_b_generators,
    monomials_of_degree,
    mul_mod,
    normal_form,
    pow_mod,
    shifted_power_base,
    standard_monomials,
)
from malcev_forge.poly import DimensionError, Polynomial, shift_substitute

from oracles import divisible_by_any, ideal_c_generators_bruteforce, standard_monomials_bruteforce


def test_build_examples():
    assert build_ideal_c(1, 3).generators == ((3,),)
    assert set(build_ideal_c(2, 3).generators) == {(3, 0), (2, 1), (1, 2), (0, 3)}
    gens = build_ideal_c(3, 3).generators
    assert len(gens) == 9 and (1, 1, 1) not in gens


def test_build_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_ideal_c(0, 3)
    with pytest.raises(ValueError):
        build_ideal_c(3, 0)
    with pytest.warns(UserWarning):
        build_ideal_c(3, 2)


def test_generators_are_minimal():
    ideal = MonomialIdeal(2, ((2, 0), (3, 0), (2, 1), (0, 4)))
    assert set(ideal.generators) == {(2, 0), (0, 4)}


def test_contains_examples():
    ideal = build_ideal_c(3, 3)
    assert contains_monomial(ideal, (2, 1, 0))
    assert not contains_monomial(ideal, (1, 1, 1))
    assert not contains_monomial(ideal, (0, 0, 0))
    with pytest.raises(DimensionError):
        contains_monomial(ideal, (1, 1))


@pytest.mark.parametrize("n, c", [(2, 3), (3, 3), (4, 3), (3, 4), (4, 4)])
def test_contains_agrees_with_bruteforce(n, c):
    ideal = build_ideal_c(n, c)
    gens = ideal_c_generators_bruteforce(n, c)
    for m in itertools.product(range(c + 2), repeat=n):
        assert contains_monomial(ideal, m) == divisible_by_any(m, gens)


def test_normal_form_examples():
    ideal = build_ideal_c(3, 3)
    p = Polynomial(3, {(3, 0, 0): 1, (1, 1, 1): 1})
    assert normal_form(ideal, p) == Polynomial(3, {(1, 1, 1): 1})
    q = Polynomial(3, {(1, 0, 0): 4, (0, 1, 1): -2})
    assert normal_form(ideal, q) == q
    power = shifted_power_base(3, 1) ** 3
    assert normal_form(ideal, power) == Polynomial(3, {(1, 1, 1): 6})


monomials3 = st.tuples(*[st.integers(0, 4)] * 3)


@given(st.dictionaries(monomials3, st.integers(-9, 9), max_size=12))
def test_normal_form_splits_terms(terms):
    ideal = build_ideal_c(3, 3)
    p = Polynomial(3, terms)
    nf = normal_form(ideal, p)
    assert not any(contains_monomial(ideal, m) for m in nf.terms)
    assert all(contains_monomial(ideal, m) for m in (p - nf).terms)


@given(st.dictionaries(monomials3, st.integers(-9, 9), max_size=6),
       st.dictionaries(monomials3, st.integers(-9, 9), max_size=6))
def test_mul_mod_matches_full_product(p, q):
    ideal = build_ideal_c(3, 3)
    p, q = Polynomial(3, p), Polynomial(3, q)
    assert mul_mod(ideal, p, q) == normal_form(ideal, p * q)


def test_standard_monomials_examples():
    assert standard_monomials(build_ideal_c(1, 3), 2) == [(0,), (1,), (2,)]
    s33 = standard_monomials(build_ideal_c(3, 3), 3)
    assert len(s33) == 11 and s33[-1] == (1, 1, 1)
    assert sum(1 for m in s33 if sum(m) < 3) == 10
    assert len(standard_monomials(build_ideal_c(4, 3), 4)) == 20


def test_standard_monomials_ordering():
    s = standard_monomials(build_ideal_c(3, 3), 3)
    assert s[0] == (0, 0, 0)
    assert s[1:4] == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    degrees = [sum(m) for m in s]
    assert degrees == sorted(degrees)


def test_standard_monomials_cap_too_small():
    with pytest.raises(QuotientNotFiniteError):
        standard_monomials(build_ideal_c(3, 3), 2)


@pytest.mark.parametrize("n, c", [(3, 3), (4, 3), (4, 4), (5, 3), (5, 4), (5, 5), (6, 3), (6, 4)])
def test_standard_monomials_against_bruteforce(n, c):
    assert set(standard_monomials(build_ideal_c(n, c), n)) == standard_monomials_bruteforce(n, c, n)


@pytest.mark.parametrize("n, c", [(n, c) for c in (3, 4) for n in range(c, 9)])
def test_standard_count_formula(n, c):
    non_squarefree = sum(
        1 for k in range(c) for m in monomials_of_degree(n, k) if m and max(m) >= 2
    )
    assert len(standard_monomials(build_ideal_c(n, c), n)) == 2**n + non_squarefree


@pytest.mark.parametrize("n, c", [(3, 3), (4, 3), (5, 3), (4, 4), (5, 5)])
def test_shift_maps_a_onto_b(n, c):
    assert check_shift_consistency(n, c)
    for (la, a), (lb, b) in zip(ideal_a_generators(n, c), ideal_b_generators(n, c)):
        assert la == lb and shift_substitute(a) == b


@pytest.mark.parametrize("n, c", [(3, 3), (4, 3), (5, 3), (4, 4), (5, 4), (5, 5)])
def test_b_subset_c(n, c):
    assert check_b_subset_c(n, c)


def test_b_subset_c_fails_for_c2():
    res = check_b_subset_c(3, 2)
    assert not res
    assert res.generator.startswith("mixed")
    assert res.survivor is not None and sum(res.survivor) == 2 and max(res.survivor) == 1


@pytest.mark.parametrize("n, c", [(3, 3), (4, 3), (4, 4), (5, 3), (5, 5)])
def test_m_power_subset(n, c):
    assert check_m_power_subset(n, c)


def test_m_power_subset_fails_when_n_below_c():
    res = check_m_power_subset(2, 4)
    assert not res and sum(res.survivor) == 3


@pytest.mark.parametrize("n, c, e, coeff", [(3, 3, 1, 6), (3, 3, 2, 48), (4, 3, 1, 24), (4, 4, 2, 384), (5, 3, 1, 120)])
def test_congruence(n, c, e, coeff):
    res = check_congruence(n, c, e)
    assert res.ok and res.top_not_in_ideal
    assert res.coefficient == coeff
    assert res.normal_form == Polynomial(n, {(1,) * n: coeff})


def test_truncated_power_matches_full_expansion():
    ideal = build_ideal_c(4, 3)
    base = shifted_power_base(4, 2)
    assert pow_mod(ideal, base, 4) == normal_form(ideal, base**4)


def test_ideal_text_round_trip():
    ideal = build_ideal_c(3, 3)
    text = ideal.to_text()
    assert text.splitlines()[0] == "X1^3"
    assert MonomialIdeal.from_text(text, 3) == ideal
