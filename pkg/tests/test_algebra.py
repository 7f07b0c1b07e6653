from fractions import Fraction
import itertools
import pytest
from hypothesis import given, settings, strategies as st
from threepoint_gauge.algebra import (
    SL2, CurrentElem, FormConfig, GaugeElem, VirasoroElem, bracket_current, bracket_gauge, bracket_witt, current,
    dbar, dbar1, jacobi_defect, closed_witt_on_current, parse_label, render, to_json, witt, witt_on_current,
    witt_to_bar,
)
from threepoint_gauge.errors import ParseError
from threepoint_gauge.kahler import OMEGA0, OmegaClass

FORM = FormConfig()

labels = st.one_of(
    st.builds(lambda x, k, w: current(x, k, w), st.sampled_from(SL2), st.integers(-3, 3), st.integers(0, 1)),
    st.builds(witt, st.integers(-3, 3), st.integers(0, 1)),
).map(GaugeElem.of)


def test_parse_labels():
    assert parse_label("e@t^2").unwrap() == GaugeElem.of(current("e", 2))
    assert parse_label("f'@t^-1").unwrap() == GaugeElem.of(current("f", -1, 1))
    assert parse_label("h@t").unwrap() == GaugeElem.of(current("h", 1))
    assert parse_label("d@3").unwrap() == GaugeElem.of(witt(3, 1))
    assert parse_label("d1@0").unwrap() == GaugeElem.of(witt(0, 0))
    assert parse_label("dbar@-1").unwrap() == GaugeElem.of(dbar(-1))
    assert parse_label("w0").unwrap() == GaugeElem.of(OMEGA0)
    assert parse_label("c1").unwrap() == GaugeElem.of(VirasoroElem(c1=1))


@pytest.mark.parametrize("text", ["g@t^2", "e@x", "d@", "w2"])
def test_parse_label_errors(text):
    res = parse_label(text)
    assert res.is_err
    assert isinstance(res.unwrap_err(), ParseError)


def test_current_bracket_with_cocycle():
    out = bracket_current(current("e", 2), current("f", -2), FORM)
    assert out == CurrentElem({("h", 0, 0): 1}, OmegaClass(-2, 0))
    assert render(out) == "h@t^0 - 2*w0"
    doubled = bracket_current(current("e", 2), current("f", -2), FormConfig(scale=4))
    assert doubled.center == OmegaClass(-8, 0)


def test_current_bracket_reduces_u_squared():
    # [h⊗u, e⊗u] = 2e⊗(t^2 + 4t)
    out = bracket_current(current("h", 0, 1), current("e", 0, 1), FORM)
    assert out == CurrentElem({("e", 2, 0): 2, ("e", 1, 0): 8})


def test_form_scale_must_be_nonzero():
    with pytest.raises(ValueError):
        FormConfig(scale=0)


def test_bar_basis():
    assert dbar(2) == witt(3, 1, -1)
    assert dbar1(-1) == witt(0, 0, -1)
    assert witt_to_bar(dbar(2) + dbar1(0) * 3) == {("dbar", 2): 1, ("dbar1", 0): 3}


def test_witt_bracket():
    # [d¹_m, d¹_n] = (n − m) d_{m+n−1}
    for m, n in itertools.product(range(-3, 4), repeat=2):
        assert bracket_witt(witt(m, 0), witt(n, 0)) == witt(m + n - 1, 1, n - m)


@pytest.mark.parametrize("wd,wx", [(0, 0), (0, 1), (1, 0), (1, 1)])
def test_witt_action_closed_formulas(wd, wx):
    for m, n in itertools.product(range(-3, 4), repeat=2):
        for x in SL2:
            assert witt_on_current(witt(m, wd), current(x, n, wx)) == closed_witt_on_current(m, wd, x, n, wx)


@settings(max_examples=80)
@given(labels, labels)
def test_gauge_bracket_antisymmetric(a, b):
    assert bracket_gauge(a, b, FORM) == -bracket_gauge(b, a, FORM)


@settings(max_examples=60)
@given(labels, labels, labels)
def test_jacobi(a, b, c):
    assert not jacobi_defect(a, b, c, FORM)
    assert not jacobi_defect(a, b, c, FORM, center_action=True)


def test_to_json():
    payload = to_json(bracket_current(current("e", 2), current("f", -2), FORM))
    assert payload["text"] == "h@t^0 - 2*w0"
    assert payload["current"] == [{"x": "h", "k": 0, "u": 0, "num": 1, "den": 1}]
    assert payload["center"]["w0"] == {"num": -2, "den": 1}
    assert payload["witt"] == []


def test_render_witt():
    assert render(witt(3, 1) + witt(-1, 0, Fraction(-1, 2))) == "-1/2*d1@-1 + d@3"
