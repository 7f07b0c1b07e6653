from fractions import Fraction
import pytest
from threepoint_gauge.fock import (
    FockVector, HeisenbergParams, OscillatorMode, ZERO_VECTOR, all_monomials, apply_heisenberg, apply_oscillator,
    random_vectors, render_vector, sample_vectors,
)


def commutator(A, B, r, v):
    return apply_oscillator(A, r, apply_oscillator(B, r, v)) - apply_oscillator(B, r, apply_oscillator(A, r, v))


def heis_commutator(A, B, p, v):
    return apply_heisenberg(A, p, apply_heisenberg(B, p, v)) - apply_heisenberg(B, p, apply_heisenberg(A, p, v))


def test_vector_arithmetic():
    x = FockVector.monomial({("x", -1): 2}, vcomp=1, c=Fraction(3, 2))
    assert x.coefficient(((("x", -1), 2),), 1) == Fraction(3, 2)
    assert (x - x) == ZERO_VECTOR
    assert not ZERO_VECTOR
    assert render_vector(x) == "3/2·x_{-1}^2 ⊗ v1"
    assert render_vector(FockVector.vacuum()) == "|0⟩ ⊗ v0"


def test_partial_and_times():
    v = FockVector.monomial({("x", 2): 3})
    assert v.partial(("x", 2)) == FockVector.monomial({("x", 2): 2}, c=3)
    assert v.partial(("x", 1)) == ZERO_VECTOR
    assert FockVector.vacuum().times(("y", -1)) == FockVector.monomial({("y", -1): 1})


@pytest.mark.parametrize("r", [0, 1])
def test_oscillator_relations(r):
    vectors = all_monomials(2, 2)
    for m in range(-2, 3):
        for n in range(-2, 3):
            for v in vectors:
                got = commutator(OscillatorMode("a", m), OscillatorMode("a*", n), r, v)
                assert got == v * (1 if m + n == 0 else 0)
                got = commutator(OscillatorMode("a1", m), OscillatorMode("a1*", n), r, v)
                assert got == v * (1 if m + n == 0 else 0)
                assert commutator(OscillatorMode("a", m), OscillatorMode("a1*", n), r, v) == ZERO_VECTOR
                assert commutator(OscillatorMode("a", m), OscillatorMode("a", n), r, v) == ZERO_VECTOR


def test_creation_classification():
    assert not OscillatorMode("a", 0).is_creation(0)
    assert OscillatorMode("a", 0).is_creation(1)
    assert OscillatorMode("a*", 0).is_creation(0)
    assert not OscillatorMode("a*", -1).is_creation(1)
    assert OscillatorMode("b", -1).is_creation(1)
    assert not OscillatorMode("b1", 0).is_creation(0)


def test_heisenberg_relations():
    p = HeisenbergParams(kappa0=Fraction(3, 2), B0=5, B1_00=1, B1_01=2, B1_10=-1)
    k0 = p.kappa0
    vectors = all_monomials(2, 3, ("y", "y1")) + [FockVector.vacuum(1)]
    for m in range(-3, 4):
        for n in range(-3, 4):
            for v in vectors:
                bb = heis_commutator(OscillatorMode("b", m), OscillatorMode("b", n), p, v)
                assert bb == v * (-2 * m * k0 if m + n == 0 else 0)
                b1b1 = heis_commutator(OscillatorMode("b1", m), OscillatorMode("b1", n), p, v)
                expected = 2 * ((n + 1) * (m + n == -2) + (4 * n + 2) * (m + n == -1)) * k0
                assert b1b1 == v * expected
                assert heis_commutator(OscillatorMode("b1", m), OscillatorMode("b", n), p, v) == ZERO_VECTOR


def test_heisenberg_zero_modes():
    p = HeisenbergParams(B0=5, B1_00=1, B1_01=2, B1_10=-1)
    vac0 = FockVector.vacuum(0)
    assert apply_heisenberg(OscillatorMode("b", 0), p, vac0) == vac0 * 5
    assert apply_heisenberg(OscillatorMode("b1", 0), p, vac0) == vac0 + FockVector.vacuum(1) * 2
    assert apply_heisenberg(OscillatorMode("one0"), p, vac0) == vac0
    assert apply_heisenberg(OscillatorMode("one1"), p, vac0) == ZERO_VECTOR


def test_heisenberg_params_validation():
    with pytest.raises(ValueError):
        HeisenbergParams(kappa0=0)
    assert HeisenbergParams(kappa0="2/3").kappa0 == Fraction(2, 3)


def test_sample_vectors_are_seeded():
    a = sample_vectors(5, 7)
    b = sample_vectors(5, 7)
    assert a == b
    assert [vid for vid, _ in a[:3]] == ["vac0", "vac1", "rand0"]
    assert len(a) == 7
    assert all(v for _, v in a)
    assert random_vectors(3, 1) != random_vectors(3, 2)


def test_wrong_family():
    with pytest.raises(ValueError):
        apply_oscillator(OscillatorMode("b", 1), 0, FockVector.vacuum())
    with pytest.raises(ValueError):
        apply_heisenberg(OscillatorMode("a", 1), HeisenbergParams(), FockVector.vacuum())
