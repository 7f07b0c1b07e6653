from fractions import Fraction
import pytest
import sympy
from threepoint_gauge.errors import UnknownFieldError
from threepoint_gauge.formal import (
    DEFAULT_REGISTRY, LaurentPoly, P_POLY, falling, mode_bracket, relation_library, relation_to_json,
    sqrt_one_plus_four_over_w, sqrt_series,
)


def test_falling():
    assert falling(5, 2) == 20
    assert falling(3, 0) == 1
    assert falling(2, 3) == 0
    assert falling(-2, 2) == 6


def test_laurent_arithmetic():
    assert P_POLY.derivative() == LaurentPoly({1: 2, 0: 4})
    w_inv = LaurentPoly.monomial(-1)
    assert P_POLY * w_inv == LaurentPoly({1: 1, 0: 4})
    assert (P_POLY - P_POLY) == LaurentPoly()
    assert P_POLY.truncate_below(2) == LaurentPoly.monomial(2)
    assert P_POLY.render("w") == "w^2 + 4*w"


def test_sqrt_series_against_sympy():
    z = sympy.symbols("z")
    N = 12
    expansion = sympy.series(sympy.sqrt(1 + z), z, 0, N + 1).removeO()
    for n, c in enumerate(sqrt_series(N)):
        ref = sympy.Rational(expansion.coeff(z, n))
        assert c == Fraction(int(ref.p), int(ref.q)), n


def test_sqrt_stream():
    stream = sqrt_one_plus_four_over_w(3)
    assert stream == LaurentPoly({0: 1, -1: 2, -2: -2, -3: 4})
    with pytest.raises(ValueError):
        sqrt_series(-1)


def test_heisenberg_relation_modes():
    rel = relation_library()["bosonrelations"]
    assert mode_bracket(rel, 2, -2) == [(("1_0", None), Fraction(-4))]
    assert mode_bracket(rel, 2, -1) == []


def test_heisenberg_relation_primed_modes():
    rel = relation_library()["bosonrelations1"]
    for m in range(-4, 5):
        for n in range(-4, 5):
            expected = 2 * ((n + 1) * (m + n == -2) + (4 * n + 2) * (m + n == -1))
            got = dict(mode_bracket(rel, m, n)).get(("1_0", None), Fraction(0))
            assert got == expected, (m, n)


def test_current_relation_modes():
    # [d̄¹_m, x_n] = −n x'_{m+n}
    rel = relation_library()["currentalgebra2"]
    for m in range(-3, 4):
        for n in range(-3, 4):
            expected = [(("x'", m + n), Fraction(-n))] if n else []
            assert mode_bracket(rel, m, n) == expected


def test_relation_library_contents():
    lib = relation_library()
    assert {"eezw", "ddzw", "dezw", "currentalgebra1", "currentalgebra4", "bosonrelations01"} <= set(lib)
    assert all(t.truncated for t in lib["dezw"].central_terms)
    payload = relation_to_json(lib["eezw"])
    assert payload["name"] == "eezw"
    assert payload["lhs"] == ["dbar1", "dbar1"]
    assert len(payload["terms"]) == 4


def test_unknown_weight():
    with pytest.raises(UnknownFieldError):
        DEFAULT_REGISTRY.weight("gamma")
