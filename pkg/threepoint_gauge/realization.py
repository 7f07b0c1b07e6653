from __future__ import annotations
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field, field_serializer, field_validator
from threepoint_gauge import config
from threepoint_gauge.algebra import FormConfig
from threepoint_gauge.errors import StepBudgetExceeded, UnboundedModeSum, UnknownFieldError
from threepoint_gauge.fock import FockVector, HeisenbergParams, OscillatorMode, ZERO_VECTOR, apply_mode_operator
from threepoint_gauge.formal import DEFAULT_REGISTRY, LaurentPoly, ONE_POLY, P_POLY, WeightRegistry, falling
from threepoint_gauge.log.logger_config import get_logger
from threepoint_gauge.ring import Rational, to_scalar

"""Free-field realizations τ (current algebra) and π (Witt / Virasoro) and the
exact action of their modes on Fock vectors.

A field expression is Σ coef·prefactor(z)·:∂^{d₁}F₁(z)⋯∂^{d_k}F_k(z):, with
normal ordering relative to the ordering r of the run (annihilation parts to
the right).
"""

L = get_logger("threepoint.realization")

GENERATORS = ("alpha", "alpha*", "alpha1", "alpha1*", "beta", "beta1")

_MODE_FAMILY = {
    "alpha": "a", "alpha*": "a*", "alpha1": "a1", "alpha1*": "a1*",
    "beta": "b", "beta1": "b1",
}

_SYMBOL = {
    "alpha": "α", "alpha*": "α*", "alpha1": "α¹", "alpha1*": "α¹*",
    "beta": "β", "beta1": "β¹",
}

Factor = Tuple[str, int]
Z_PLUS_2 = LaurentPoly({1: 1, 0: 2})


@dataclass(frozen=True)
class Term:
    coef: Fraction
    factors: Tuple[Factor, ...]
    prefactor: LaurentPoly = ONE_POLY

    def __post_init__(self):
        object.__setattr__(self, "coef", to_scalar(self.coef))
        if len(self.factors) > 3:
            raise ValueError("at most three factors per normal-ordered product")
        for gen, order in self.factors:
            if gen not in _MODE_FAMILY:
                raise UnknownFieldError(f"unknown generator {gen!r}")
            if order < 0:
                raise ValueError("derivative order must be non-negative")


@dataclass(frozen=True)
class FieldExpr:
    terms: Tuple[Term, ...]
    weight: int
    name: str = ""

    def __add__(self, other: "FieldExpr") -> "FieldExpr":
        if self.weight != other.weight:
            raise ValueError(f"cannot add fields of weight {self.weight} and {other.weight}")
        return FieldExpr(self.terms + other.terms, self.weight, self.name or other.name)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return render_field(self)

    @classmethod
    def generator(cls, gen: str, order: int = 0, reg: WeightRegistry = DEFAULT_REGISTRY) -> "FieldExpr":
        """The bare field ∂^order G(z), weight Δ_G + order."""
        return cls((Term(Fraction(1), ((gen, order),)),), reg.weight(gen) + order, _SYMBOL.get(gen, gen))


def _expr(name: str, weight: int, raw: Iterable[Tuple[object, Tuple[Factor, ...], LaurentPoly]]) -> FieldExpr:
    terms = tuple(Term(to_scalar(c), factors, pre) for c, factors, pre in raw
                  if to_scalar(c) != 0 and pre)
    return FieldExpr(terms, weight, name)


# ========================
# Parámetros
# ========================
class RealizationParams(BaseModel):
    """Parameters of τ and π; the defaults are the gauge constraint set at κ₀ = 1."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    r: Literal[0, 1] = 1
    heis: HeisenbergParams = Field(default_factory=HeisenbergParams)
    nu: Rational = Fraction(-1, 2)
    zeta: Rational = Fraction(0)
    mu_v: Rational = Fraction(0)
    gamma1: Rational = Fraction(-1, 4)
    gamma2: Rational = Fraction(0)
    gamma: LaurentPoly = Field(default_factory=lambda: P_POLY * Fraction(-1, 4))
    form: FormConfig = Field(default_factory=FormConfig)

    @field_validator("gamma", mode="before")
    @classmethod
    def _gamma(cls, value):
        if isinstance(value, Mapping):
            return LaurentPoly({int(p): to_scalar(c) for p, c in value.items()})
        return value

    @field_serializer("gamma")
    def _dump_gamma(self, value: LaurentPoly) -> Dict[str, str]:
        return {str(p): str(c) for p, c in value.items()}

    @property
    def chi0(self) -> Fraction:
        """τ(ω₀) = κ₀ + 4δ_{r,0}."""
        return self.heis.kappa0 + (4 if self.r == 0 else 0)

    @classmethod
    def gauge_defaults(cls, kappa0=1, **overrides) -> "RealizationParams":
        """The gauge constraint set for a given κ₀ (ν = −1/(2κ₀), r = 1)."""
        k0 = to_scalar(kappa0)
        if k0 == 0:
            raise ValueError("kappa0 must be non-zero")
        base = dict(
            r=1,
            heis=HeisenbergParams(kappa0=k0),
            nu=Fraction(-1) / (2 * k0),
            zeta=0,
            mu_v=0,
            gamma1=Fraction(-1) / (4 * k0),
            gamma2=0,
            gamma=P_POLY * (Fraction(-1) / (4 * k0)),
        )
        base.update(overrides)
        return cls(**base)

    def constraint_violations(self) -> List[str]:
        """Every violated condition of the gauge constraint set, as text.

        The Virasoro conditions plus r = 1, χ₁ = 0 and the sign νκ₀ = −1/2.
        """
        out = []
        if self.r != 1:
            out.append(f"r must be 1, got {self.r}")
        if self.heis.chi1 != 0:
            out.append(f"chi1 must be 0, got {self.heis.chi1}")
        out += self.virasoro_violations()
        if not out and self.nu * self.heis.kappa0 != Fraction(-1, 2):
            out.append(f"nu*kappa0 must be -1/2, got {self.nu * self.heis.kappa0}")
        return out

    def virasoro_violations(self) -> List[str]:
        """Violated conditions of the Virasoro realization: any r, any χ₁, either sign of ν."""
        k0 = self.heis.kappa0
        out = []
        if self.nu * self.nu != 1 / (4 * k0 * k0):
            out.append(f"nu^2 must be 1/(4 kappa0^2), got nu={self.nu}")
        for name in ("zeta", "mu_v", "gamma2"):
            if getattr(self, name) != 0:
                out.append(f"{name} must be 0, got {getattr(self, name)}")
        if self.gamma1 != -1 / (4 * k0):
            out.append(f"gamma1 must be {-1 / (4 * k0)}, got {self.gamma1}")
        expected = P_POLY * (-1 / (4 * k0))
        if self.gamma != expected:
            out.append(f"gamma must be {expected.render()}, got {self.gamma.render()}")
        return out


# ========================
# Realizaciones
# ========================
def tau(gen: str, p: RealizationParams) -> Union[FieldExpr, Fraction]:
    """τ of a current-algebra generator; the centrals return scalars."""
    chi0, P = p.chi0, P_POLY
    one = ONE_POLY
    a, a_, a1, a1_ = ("alpha", 0), ("alpha*", 0), ("alpha1", 0), ("alpha1*", 0)
    b, b1 = ("beta", 0), ("beta1", 0)
    table = {
        "f": lambda: [(-1, (a,), one)],
        "f1": lambda: [(-1, (a1,), one)],
        "h": lambda: [(2, (a, a_), one), (2, (a1, a1_), one), (1, (b,), one)],
        "h1": lambda: [(2, (a1, a_), one), (2, (a, a1_), P), (1, (b1,), one)],
        "e": lambda: [
            (1, (a, a_, a_), one),
            (1, (a, a1_, a1_), P),
            (2, (a1, a_, a1_), one),
            (1, (b, a_), one),
            (1, (b1, a1_), one),
            (chi0, (("alpha*", 1),), one),
        ],
        "e1": lambda: [
            (1, (a1, a_, a_), one),
            (1, (a1, a1_, a1_), P),
            (2, (a, a_, a1_), P),
            (1, (b1, a_), one),
            (1, (b, a1_), P),
            (chi0, (("alpha1*", 1),), P),
            (chi0, (a1_,), Z_PLUS_2),
        ],
    }
    if gen == "omega0":
        return chi0
    if gen == "omega1":
        return Fraction(0)
    if gen not in table:
        raise UnknownFieldError(f"tau is not defined on {gen!r}")
    return _expr(f"τ({gen})", 1, table[gen]())


def pi_witt(gen: str) -> FieldExpr:
    """π(d)(z) and π(d¹)(z)."""
    P, one = P_POLY, ONE_POLY
    if gen == "d":
        raw = [
            (1, (("alpha", 0), ("alpha*", 1)), P),
            (1, (("alpha1", 0), ("alpha1*", 1)), P),
            (1, (("alpha1", 0), ("alpha1*", 0)), Z_PLUS_2),
        ]
    elif gen == "d1":
        raw = [
            (1, (("alpha1", 0), ("alpha*", 1)), one),
            (1, (("alpha", 0), ("alpha1*", 1)), P),
            (1, (("alpha", 0), ("alpha1*", 0)), Z_PLUS_2),
        ]
    else:
        raise UnknownFieldError(f"pi_witt is not defined on {gen!r}")
    return _expr(f"π({gen})", 2, raw)


def pi_c1(p: RealizationParams) -> Fraction:
    """π(c₁) = −(δ_{r,0}/3 + (2/3)ν²κ₀² − 2ζ²κ₀)."""
    k0 = p.heis.kappa0
    delta = 1 if p.r == 0 else 0
    return -(Fraction(delta, 3) + Fraction(2, 3) * p.nu ** 2 * k0 ** 2 - 2 * p.zeta ** 2 * k0)


def pi_vir(gen: str, p: RealizationParams) -> Union[FieldExpr, Fraction]:
    """π on the Virasoro generators d̄, d̄¹, c₁, c₂."""
    one = ONE_POLY
    if gen == "c1":
        return pi_c1(p)
    if gen == "c2":
        return Fraction(0)
    if gen == "dbar":
        extra = _expr("", 2, [
            (1, (("beta", 0), ("beta", 0)), p.gamma),
            (p.mu_v, (("beta", 1),), one),
            (p.gamma1, (("beta1", 0), ("beta1", 0)), one),
            (p.gamma2, (("beta", 0),), one),
        ])
        base = pi_witt("d")
    elif gen == "dbar1":
        extra = _expr("", 2, [
            (p.nu, (("beta", 0), ("beta1", 0)), one),
            (p.zeta, (("beta1", 1),), one),
        ])
        base = pi_witt("d1")
    else:
        raise UnknownFieldError(f"pi_vir is not defined on {gen!r}")
    return FieldExpr(base.terms + extra.terms, 2, f"π({gen})")


# ========================
# Modos de productos normales
# ========================
@dataclass(frozen=True)
class _Support:
    """Mode indices at which one factor can act nonzero on the vector at hand.

    Candidates are the creation interval (−∞, creation] (when set) together
    with the finite annihilation set; `unbounded` means every integer.
    """
    creation: Optional[int]
    finite: frozenset
    unbounded: bool = False

    @property
    def upper(self) -> Optional[int]:
        tops = list(self.finite) + ([self.creation] if self.creation is not None else [])
        return max(tops) if tops else None

    def candidates(self, low: int, high: int) -> List[int]:
        out = {s for s in self.finite if low <= s <= high}
        if self.creation is not None:
            out.update(range(low, min(high, self.creation) + 1))
        return sorted(out)

    def contains(self, s: int) -> bool:
        if self.unbounded:
            return True
        return s in self.finite or (self.creation is not None and s <= self.creation)


def _support(gen: str, r: int, variables: set) -> _Support:
    if gen in ("alpha", "alpha1"):
        fam = "x" if gen == "alpha" else "x1"
        if r == 1:
            return _Support(None, frozenset(), unbounded=True)
        return _Support(-1, frozenset(j for f, j in variables if f == fam and j >= 0))
    if gen in ("alpha*", "alpha1*"):
        fam = "x" if gen == "alpha*" else "x1"
        if r == 1:
            return _Support(None, frozenset(-j for f, j in variables if f == fam))
        return _Support(0, frozenset(-j for f, j in variables if f == fam and j < 0))
    if gen == "beta":
        return _Support(-1, frozenset({0} | {-j for f, j in variables if f == "y"}))
    # beta1: b¹_n, n ≥ 0, differentiates y¹_{−2−n} and y¹_{−1−n}
    ann = {0}
    for f, j in variables:
        if f == "y1":
            ann.update(n for n in (-2 - j, -1 - j) if n >= 0)
    return _Support(-1, frozenset(ann))


def _splittings(supports: List[_Support], total: int) -> Iterable[Tuple[int, ...]]:
    """Every (s₁,…,s_k) with Σ s_i = total and each s_i a candidate."""
    k = len(supports)
    if k == 0:
        if total == 0:
            yield ()
        return
    pivots = [i for i, s in enumerate(supports) if s.unbounded]
    if len(pivots) > 1:
        raise UnboundedModeSum("two factors with unbounded creation parts")
    if pivots:
        j = pivots[0]
        others = [s for i, s in enumerate(supports) if i != j]
        if any(s.creation is not None for s in others):
            raise UnboundedModeSum("unbounded factor paired with a creation interval")
        lists = [sorted(s.finite) for s in others]
        for combo in itertools.product(*lists):
            rest = list(combo)
            rest.insert(j, total - sum(combo))
            yield tuple(rest)
        return
    uppers = [s.upper for s in supports]
    if any(u is None for u in uppers):
        return
    top = sum(uppers)
    lists = []
    for s, u in zip(supports, uppers):
        low = total - (top - u)
        if low > u:
            return
        lists.append(s.candidates(low, u))
    last = set(lists[-1])
    for combo in itertools.product(*lists[:-1]):
        s_last = total - sum(combo)
        if s_last in last:
            yield combo + (s_last,)


def apply_mode(expr: FieldExpr, m: int, v: FockVector, p: RealizationParams,
               reg: WeightRegistry = DEFAULT_REGISTRY, budget: Optional[int] = None) -> FockVector:
    """The m-th mode of a field expression applied to v.

    For a term z^q·:∂^{d₁}F₁⋯∂^{d_k}F_k:, the mode is the sum over splittings
    s₁+⋯+s_k = m + W + q − Σ(Δ_i + d_i) of Π falling(−s_i−Δ_i, d_i) times the
    product of F_{s_i}, annihilation operators acting first. Only the finitely
    many splittings allowed by v's variables are visited.

    Args:
        expr: Field expression of weight W.
        m: Mode index.
        v: Fock vector.
        p: Realization parameters (ordering r and Heisenberg data).
        reg: Weight registry.
        budget: Maximum number of splittings; defaults to THREEPOINT_STEP_BUDGET.

    Returns:
        The resulting FockVector.

    Raises:
        UnboundedModeSum: If the support analysis finds infinitely many splittings.
        StepBudgetExceeded: If more splittings than the budget are visited.
        UnknownFieldError: If a factor has no registered weight.
    """
    budget = config.THREEPOINT_STEP_BUDGET if budget is None else budget
    if not v:
        return ZERO_VECTOR
    r = p.r
    variables = v.variables()
    steps = 0
    out = ZERO_VECTOR
    annihilated: Dict[Tuple[Tuple[str, int], ...], FockVector] = {}
    for term in expr.terms:
        gens = [gen for gen, _ in term.factors]
        weights = [reg.weight(gen) for gen in gens]
        shift = sum(w + d for w, (_g, d) in zip(weights, term.factors))
        supports = [_support(gen, r, variables) for gen in gens]
        for q, pc in term.prefactor.items():
            total = m + expr.weight + q - shift
            try:
                for split in _splittings(supports, total):
                    steps += 1
                    if steps > budget:
                        raise StepBudgetExceeded(f"mode {m} of {expr.name or 'field'} exceeded {budget} splittings")
                    c = term.coef * pc
                    for s, w, (_g, d) in zip(split, weights, term.factors):
                        c *= falling(-s - w, d)
                    if c == 0:
                        continue
                    modes = [OscillatorMode(_MODE_FAMILY[gen], s) for gen, s in zip(gens, split)]
                    ann = tuple(sorted((mo.family, mo.index) for mo in modes if not mo.is_creation(r)))
                    if ann not in annihilated:
                        w_vec = v
                        for family, index in ann:
                            w_vec = apply_mode_operator(OscillatorMode(family, index), r, p.heis, w_vec)
                            if not w_vec:
                                break
                        annihilated[ann] = w_vec
                    w_vec = annihilated[ann]
                    if not w_vec:
                        continue
                    for mo in modes:
                        if mo.is_creation(r):
                            w_vec = apply_mode_operator(mo, r, p.heis, w_vec)
                    out = out + w_vec * c
            except StepBudgetExceeded as e:
                L.error({"event": "REALIZATION.APPLY_MODE.BUDGET", "field": expr.name, "m": m, "error": str(e)})
                raise
    return out


def apply_terms(terms: Iterable[Tuple[Union[FieldExpr, Fraction], Optional[int], Fraction]],
                v: FockVector, p: RealizationParams) -> FockVector:
    """Σ c·X_k v over (X, k, c); a scalar X (central value) acts as X·c·v."""
    out = ZERO_VECTOR
    for expr, k, c in terms:
        if isinstance(expr, FieldExpr):
            out = out + apply_mode(expr, k, v, p) * c
        else:
            out = out + v * (to_scalar(expr) * c)
    return out


def commutator_mode(eA: FieldExpr, eB: FieldExpr, m: int, n: int, v: FockVector,
                    p: RealizationParams) -> FockVector:
    """A_m(B_n v) − B_n(A_m v)."""
    return apply_mode(eA, m, apply_mode(eB, n, v, p), p) - apply_mode(eB, n, apply_mode(eA, m, v, p), p)


# ========================
# Texto
# ========================
def _render_factor(gen: str, order: int) -> str:
    base = f"{_SYMBOL[gen]}(z)"
    if order == 0:
        return base
    return f"∂{base}" if order == 1 else f"∂^{order}{base}"


def render_field(expr: FieldExpr) -> str:
    """Text form in the usual notation, e.g. "(z^2 + 4*z):α(z)∂α*(z):"."""
    out = []
    for term in expr.terms:
        body = "".join(_render_factor(g, d) for g, d in term.factors)
        if len(term.factors) > 1:
            body = f":{body}:"
        if term.prefactor != ONE_POLY:
            body = f"({term.prefactor.render('z')}){body}"
        mag = abs(term.coef)
        if mag != 1:
            body = f"{mag}{body}"
        if not out:
            out.append(f"-{body}" if term.coef < 0 else body)
        else:
            out.append(f" - {body}" if term.coef < 0 else f" + {body}")
    return "".join(out) or "0"
