from fractions import Fraction
import pytest
from hypothesis import given, settings, strategies as st
from threepoint_gauge.errors import StepBudgetExceeded
from threepoint_gauge.kahler import (
    OMEGA0, OMEGA1, OMEGA_ZERO, OmegaClass, automorphism_matrix, compare_der_action, d3_character, der_action,
    double_factorial, mu, mu_grid, parse_omega, reduce, reduce_oracle, render_omega,
)
from threepoint_gauge.ring import T, T_INV, Derivation, RElem, d3_elements, mul

monomial_keys = st.tuples(st.integers(-4, 4), st.integers(0, 1))
relems = st.dictionaries(monomial_keys, st.integers(-5, 5), max_size=3).map(RElem)


@pytest.mark.parametrize("k,l,expected", [
    (1, 0, Fraction(1)),
    (2, -1, Fraction(2)),
    (1, -2, Fraction(-1, 2)),
    (0, 3, Fraction(0)),
    (-3, 1, Fraction(0)),
])
def test_mu_values(k, l, expected):
    assert mu(k, l) == expected


def test_reduce_example():
    assert reduce(RElem.monomial(2), RElem.monomial(-1, 1)) == OmegaClass(0, 2)
    assert reduce(T_INV, T) == OMEGA0
    assert reduce(RElem.monomial(-1, 1), T) == OMEGA1


def test_exact_form_reduces_to_zero():
    # 1·d(t⁻¹u) is exact; t⁻¹du ≡ t⁻²u dt ≡ (1/2)ω₁
    t_inv_u = RElem.monomial(-1, 1)
    assert reduce_oracle(RElem.monomial(0), t_inv_u) == OMEGA_ZERO
    assert reduce(RElem.monomial(0), t_inv_u) == OMEGA_ZERO
    assert reduce_oracle(T_INV, RElem.monomial(0, 1)) == OmegaClass(0, Fraction(1, 2))


def test_double_factorial():
    assert double_factorial(5) == 15
    assert double_factorial(0) == 1
    assert double_factorial(-1) == 1
    assert double_factorial(-3) == -1
    for n in (-2, -4, -5):
        with pytest.raises(ValueError):
            double_factorial(n)


@pytest.mark.parametrize("w,v", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_closed_form_matches_oracle(w, v):
    for k in range(-5, 6):
        for l in range(-5, 6):
            f, g = RElem.monomial(k, w), RElem.monomial(l, v)
            assert reduce(f, g) == reduce_oracle(f, g), (k, w, l, v)


def test_mu_is_oracle_w1_coordinate():
    for k in range(-8, 9):
        for l in range(-8, 9):
            assert reduce_oracle(RElem.monomial(k), RElem.monomial(l, 1)) == OmegaClass(0, mu(k, l))


@settings(max_examples=60)
@given(relems, relems)
def test_cocycle_antisymmetric(f, g):
    # f dg + g df = d(fg) is exact
    assert reduce(f, g) + reduce(g, f) == OMEGA_ZERO


@settings(max_examples=40)
@given(relems, relems, relems)
def test_cocycle_condition(f, g, h):
    assert reduce(mul(f, g), h) + reduce(mul(g, h), f) + reduce(mul(h, f), g) == OMEGA_ZERO


def test_oracle_budget():
    with pytest.raises(StepBudgetExceeded):
        reduce_oracle(T_INV, T, budget=0)


def test_der_action_well_defined():
    for k in range(-3, 4):
        for w in (0, 1):
            d = Derivation.basis(k, w)
            for a in range(-2, 3):
                f, g = RElem.monomial(a, 1), RElem.monomial(1 - a)
                omega = reduce(f, g)
                lhs = der_action(d, omega)
                rhs = reduce(d(f), g) + reduce(f, d(g))
                assert lhs == rhs


def test_compare_der_action_outcomes():
    for k in range(-4, 5):
        for w in (0, 1):
            for basis in (0, 1):
                assert compare_der_action(k, w, basis) in ("both", "statement", "proof", "neither")


def test_d3_character():
    assert d3_character() == (2, 0, -1)
    m = automorphism_matrix(d3_elements()["id"])
    assert m == ((1, 0), (0, 1))


def test_mu_grid():
    grid = mu_grid(3)
    assert len(grid) == 49
    assert {"k": 1, "l": 0, "num": 1, "den": 1} in grid


@pytest.mark.parametrize("omega", [OMEGA_ZERO, OMEGA0, OmegaClass(Fraction(-1, 2), 3), OmegaClass(0, -1)])
def test_omega_text_round_trip(omega):
    assert parse_omega(render_omega(omega)).unwrap() == omega


def test_render_omega():
    assert render_omega(OmegaClass(0, 2)) == "2*w1"
    assert render_omega(OmegaClass(1, Fraction(-1, 2))) == "w0 - 1/2*w1"
    assert parse_omega("w2").is_err
