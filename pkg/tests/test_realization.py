from fractions import Fraction
import pytest
from threepoint_gauge.errors import StepBudgetExceeded, UnboundedModeSum, UnknownFieldError
from threepoint_gauge.fock import FockVector, HeisenbergParams, ZERO_VECTOR, sample_vectors
from threepoint_gauge.formal import P_POLY, LaurentPoly
from threepoint_gauge.realization import (
    FieldExpr, RealizationParams, Term, apply_mode, apply_terms, commutator_mode, pi_c1, pi_vir, pi_witt,
    render_field, tau,
)

VECTORS = sample_vectors(4, 42)


def test_defaults_are_the_gauge_constraint_set():
    p = RealizationParams()
    assert p.constraint_violations() == []
    assert p == RealizationParams.gauge_defaults(1)
    assert p.chi0 == 1
    assert RealizationParams(r=0).chi0 == 5


def test_gauge_defaults_scale_with_kappa0():
    p = RealizationParams.gauge_defaults(2)
    assert p.heis.kappa0 == 2
    assert p.nu == Fraction(-1, 4)
    assert p.gamma1 == Fraction(-1, 8)
    assert p.gamma == P_POLY * Fraction(-1, 8)
    assert p.constraint_violations() == []
    with pytest.raises(ValueError):
        RealizationParams.gauge_defaults(0)


def test_constraint_violations_listed():
    p = RealizationParams(r=0, zeta=1, heis=HeisenbergParams(chi1=1))
    violations = p.constraint_violations()
    assert any(v.startswith("r must be 1") for v in violations)
    assert any(v.startswith("chi1") for v in violations)
    assert any(v.startswith("zeta") for v in violations)


def test_virasoro_constraints_leave_r_and_chi1_free():
    p = RealizationParams(r=0, heis=HeisenbergParams(chi1=1))
    assert p.virasoro_violations() == []
    assert len(p.constraint_violations()) == 2
    # ν² fixes ν only up to sign
    flipped = RealizationParams(nu=Fraction(1, 2))
    assert flipped.virasoro_violations() == []
    assert flipped.constraint_violations() == ["nu*kappa0 must be -1/2, got 1/2"]
    assert any(v.startswith("gamma1") for v in RealizationParams(gamma1=Fraction(1, 4)).virasoro_violations())


def test_gamma_from_mapping():
    p = RealizationParams(gamma={"2": "-1/4", "1": -1})
    assert p.gamma == LaurentPoly({2: Fraction(-1, 4), 1: -1})
    assert p.model_dump(mode="json")["gamma"] == {"1": "-1", "2": "-1/4"}


def test_pi_c1():
    assert pi_c1(RealizationParams()) == Fraction(-1, 6)
    # −(1/3)(δ_{r,0} + 1/2) on the constraint set
    assert pi_c1(RealizationParams(r=0)) == Fraction(-1, 2)
    assert pi_vir("c1", RealizationParams()) == Fraction(-1, 6)
    assert pi_vir("c2", RealizationParams()) == 0


def test_unknown_fields():
    p = RealizationParams()
    with pytest.raises(UnknownFieldError):
        tau("g", p)
    with pytest.raises(UnknownFieldError):
        pi_witt("dbar")
    with pytest.raises(UnknownFieldError):
        Term(Fraction(1), (("gamma", 0),))


def test_tau_centrals():
    p = RealizationParams()
    assert tau("omega0", p) == 1
    assert tau("omega1", p) == 0


def test_render_field():
    assert render_field(tau("f", RealizationParams())) == "-α(z)"
    assert "(z^2 + 4*z):α(z)∂α*(z):" in render_field(pi_witt("d"))


def test_single_mode_on_vacuum():
    p = RealizationParams()
    vac = FockVector.vacuum()
    # τ(f) = −α and α_m = x_m for r = 1
    assert apply_mode(tau("f", p), 2, vac, p) == FockVector.monomial({("x", 2): 1}, c=-1)
    # r = 0: α_m annihilates for m ≥ 0
    p0 = RealizationParams(r=0)
    assert apply_mode(tau("f", p0), 2, vac, p0) == ZERO_VECTOR
    assert apply_mode(tau("f", p0), -1, vac, p0) == FockVector.monomial({("x", -1): 1}, c=-1)


def test_h_zero_mode_reads_b0():
    p = RealizationParams(heis=HeisenbergParams(B0=3))
    vac = FockVector.vacuum()
    assert apply_mode(tau("h", p), 0, vac, p) == vac * 3


@pytest.mark.parametrize("m,n", [(0, 0), (1, -2), (-1, 1), (2, 0)])
def test_h_f_commutator(m, n):
    # [h, f] = −2f and τ(f) = −α
    p = RealizationParams()
    alpha = FieldExpr.generator("alpha")
    for _, v in VECTORS:
        got = commutator_mode(tau("h", p), tau("f", p), m, n, v, p)
        assert got == apply_mode(alpha, m + n, v, p) * 2


@pytest.mark.parametrize("r", [0, 1])
def test_f_fields_commute(r):
    p = RealizationParams(r=r)
    for _, v in VECTORS:
        for m in (-1, 0, 1):
            assert commutator_mode(tau("f", p), tau("f1", p), m, -m, v, p) == ZERO_VECTOR


def test_apply_terms_scalar_entries():
    p = RealizationParams()
    v = FockVector.vacuum(1)
    terms = [(tau("f", p), 0, Fraction(2)), (Fraction(3), None, Fraction(1, 3))]
    expected = FockVector.monomial({("x", 0): 1}, vcomp=1, c=-2) + v
    assert apply_terms(terms, v, p) == expected


def test_step_budget():
    p = RealizationParams()
    v = FockVector.monomial({("x", -1): 1, ("x1", 2): 1})
    with pytest.raises(StepBudgetExceeded):
        apply_mode(pi_witt("d"), 0, v, p, budget=0)


def test_two_unbounded_factors_are_rejected():
    p = RealizationParams()
    both = FieldExpr((Term(Fraction(1), (("alpha", 0), ("alpha1", 0))),), 2, "αα¹")
    with pytest.raises(UnboundedModeSum):
        apply_mode(both, 0, FockVector.vacuum(), p)
