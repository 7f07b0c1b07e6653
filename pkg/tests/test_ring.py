from fractions import Fraction
import pytest
from hypothesis import given, settings, strategies as st
from threepoint_gauge.errors import ParseError
from threepoint_gauge.ring import (
    ONE, P, T, T_INV, U, Derivation, RElem, apply_D, bracket_der, d3_elements, mul, parse_relem, parse_scalar,
    phi_image, psi, render, tau2,
)

monomial_keys = st.tuples(st.integers(-4, 4), st.integers(0, 1))
relems = st.dictionaries(monomial_keys, st.integers(-5, 5), max_size=4).map(RElem)


def test_u_squared_is_p():
    assert mul(U, U) == P
    assert U ** 2 == P
    assert mul(T, T_INV) == ONE


def test_parse_and_render():
    a = parse_relem("3/2*t^-1*u - 2").unwrap()
    assert a.coefficient(-1, 1) == Fraction(3, 2)
    assert a.coefficient(0) == -2
    assert render(a) == "3/2*t^-1*u - 2"
    assert parse_relem("t^2 + 4*t").unwrap() == P
    assert parse_relem("u^2").unwrap() == P
    assert render(RElem()) == "0"


@pytest.mark.parametrize("text", ["t^x", "", "3/0*t", "t**2", "+"])
def test_parse_errors(text):
    res = parse_relem(text)
    assert res.is_err
    assert isinstance(res.unwrap_err(), ParseError)


def test_parse_scalar():
    assert parse_scalar("-3/4") == Fraction(-3, 4)
    assert parse_scalar("7") == 7
    with pytest.raises(ParseError):
        parse_scalar("1.5")


@settings(max_examples=60)
@given(relems)
def test_render_round_trip(a):
    assert parse_relem(render(a)).unwrap() == a


@settings(max_examples=60)
@given(relems, relems, relems)
def test_ring_axioms(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@settings(max_examples=60)
@given(relems, relems)
def test_d_is_a_derivation(f, g):
    assert apply_D(mul(f, g)) == mul(apply_D(f), g) + mul(f, apply_D(g))


def test_d_on_generators():
    # D(t) = u, D(u) = t + 2
    assert apply_D(T) == U
    assert apply_D(U) == RElem({(1, 0): 1, (0, 0): 2})


@settings(max_examples=40)
@given(relems, relems)
def test_derivation_bracket_antisymmetric(f, g):
    d1, d2 = Derivation(f), Derivation(g)
    assert bracket_der(d1, d2) == -bracket_der(d2, d1)


def test_d3_relations_on_monomials():
    g = d3_elements()
    for k in range(-4, 5):
        for w in (0, 1):
            f = RElem.monomial(k, w)
            assert psi()(psi()(f)) == f
            assert tau2()(tau2()(tau2()(f))) == f
            assert g["ψ"](g["τ₂"](g["ψ"](f))) == g["τ₂²"](f)


def test_automorphisms_are_multiplicative():
    for g in d3_elements().values():
        for k in range(-3, 4):
            f, h = RElem.monomial(k, 1), RElem.monomial(1 - k)
            assert g(mul(f, h)) == mul(g(f), g(h))


def test_psi_on_t_inverse():
    expected = RElem({(2, 0): 1, (1, 0): 3, (1, 1): -1, (0, 1): -1}) * Fraction(1, 2)
    assert psi()(T_INV) == expected
    assert tau2()(T_INV) == expected


def test_phi_images_are_consistent():
    s, s_inv = phi_image("s"), phi_image("s_inv")
    assert mul(s, s_inv) == ONE
    assert mul(s - ONE, phi_image("s_minus_1_inv")) == ONE
    with pytest.raises(KeyError):
        phi_image("q")
