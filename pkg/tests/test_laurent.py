from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mixedhstar.laurent import (ONE, Q, T, U, V, W, ZERO, LaurentPoly, from_json, involute, parse,
                                profile, set_zero, substitute, to_json, to_string)

exps = st.integers(-6, 6)
terms = st.dictionaries(st.tuples(exps, exps, exps, exps), st.integers(-5, 5), max_size=6)
polys = terms.map(LaurentPoly)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys)
def test_text_round_trip(p):
    assert parse(to_string(p)) == p


@given(polys)
def test_json_round_trip(p):
    assert from_json(to_json(p)) == p


@given(polys, polys)
def test_involution_is_ring_map(a, b):
    assert involute(a * b) == involute(a) * involute(b)
    assert involute(involute(a)) == a


@given(polys)
def test_swap_substitution_twice_is_identity(p):
    s = substitute(p, {"u": V, "v": U})
    assert substitute(s, {"u": V, "v": U}) == p


def test_half_integer_powers():
    h = LaurentPoly.monomial(t=Fraction(1, 2))
    assert h * h == T
    assert Q * Q == T - 2 + T ** -1
    assert to_string(h) == "t^{1/2}"


def test_parse_forms():
    assert parse("1 + 11*t + 11*t^2 + t^3") == 1 + 11 * T + 11 * T ** 2 + T ** 3
    assert parse("u**2 * v") == U ** 2 * V
    assert parse("t^{-1}") == T ** -1
    assert parse("t^-1") == T ** -1
    assert parse("1 + -2*t") == 1 - 2 * T
    assert parse("0") == ZERO
    with pytest.raises(ValueError):
        parse("2*x")


def test_substitution_into_monomials():
    p = 1 + U * V
    assert substitute(p, {"u": U * W, "v": V * W}) == 1 + U * V * W ** 2
    assert p.subs(v=1) == 1 + U
    with pytest.raises(ValueError):
        substitute(p, {"u": U + V})


def test_set_zero_and_profile():
    p = 1 + 3 * U * V + U ** 2
    assert set_zero(p, "v") == 1 + U ** 2
    pr = profile(1 + 2 * T + T ** 2)
    assert pr.is_symmetric() and pr.is_unimodal() and pr.is_nonnegative()
    assert not profile(1 + T ** 2 + T ** 4, low=0, high=4).is_unimodal()


@settings(max_examples=50)
@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_from_coeffs_matches_coeff_list(c):
    p = LaurentPoly.from_coeffs(c)
    trimmed = list(c)
    while trimmed and trimmed[-1] == 0:
        trimmed.pop()
    assert p.coeff_list("t") == trimmed
    assert p.value_at_one() == sum(c)
