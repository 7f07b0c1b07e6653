from __future__ import annotations
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union
from pydantic import BaseModel, ConfigDict, Field
from threepoint_gauge.errors import UnknownFieldError
from threepoint_gauge.kahler import double_factorial
from threepoint_gauge.ring import to_scalar

"""Formal delta calculus.

Local relations [A(z), B(w)] = Σ c(z, w)·(∂^o X)(w)·∂_w^j δ(z/w) are turned into
mode brackets [A_m, B_n] by residue extraction, with

    δ(z/w) = Σ_k z^{-k-1} w^k,   X(z) = Σ_m X_m z^{-m-Δ_X}.

The relation library holds the Virasoro, gauge and Heisenberg relations exactly
as they are printed, central terms included.
"""


def falling(x: int, j: int) -> int:
    """x(x−1)⋯(x−j+1); 1 when j = 0."""
    out = 1
    for i in range(j):
        out *= x - i
    return out


class LaurentPoly:
    """Immutable sparse Laurent polynomial in one variable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, object], Iterable[Tuple[int, object]]] = ()):
        acc: Dict[int, Fraction] = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for p, c in items:
            acc[int(p)] += to_scalar(c)
        self._terms = {p: c for p, c in acc.items() if c}

    @classmethod
    def monomial(cls, p: int, c=1) -> "LaurentPoly":
        return cls({p: c})

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        return cls({0: c})

    def items(self) -> List[Tuple[int, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, p: int) -> Fraction:
        return self._terms.get(p, Fraction(0))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({p: -c for p, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            acc: Dict[int, Fraction] = defaultdict(Fraction)
            for p, a in self._terms.items():
                for q, b in other._terms.items():
                    acc[p + q] += a * b
            return LaurentPoly(acc)
        c = to_scalar(other)
        return LaurentPoly({p: c * v for p, v in self._terms.items()})

    __rmul__ = __mul__

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly({p - 1: p * c for p, c in self._terms.items()})

    def truncate_below(self, lowest: int) -> "LaurentPoly":
        """Drop every exponent < `lowest`."""
        return LaurentPoly({p: c for p, c in self._terms.items() if p >= lowest})

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def render(self, var: str = "z") -> str:
        if not self._terms:
            return "0"
        out = []
        for p, c in sorted(self._terms.items(), reverse=True):
            mono = "" if p == 0 else (var if p == 1 else f"{var}^{p}")
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            if not out:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.render()!r})"


ONE_POLY = LaurentPoly.constant(1)
P_POLY = LaurentPoly({2: 1, 1: 4})


def sqrt_series(N: int) -> List[Fraction]:
    """Coefficients of (1+z)^{1/2} through z^N."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    out = [Fraction(1), Fraction(1, 2)]
    for n in range(2, N + 1):
        sign = -1 if (n - 1) % 2 else 1
        out.append(Fraction(sign * double_factorial(2 * n - 3), 2 ** n * math.factorial(n)))
    return out[: N + 1]


def sqrt_one_plus_four_over_w(N: int) -> LaurentPoly:
    """(1 + 4/w)^{1/2} truncated after w^{-N}."""
    return LaurentPoly({-n: c * 4 ** n for n, c in enumerate(sqrt_series(N))})


# ========================
# Relaciones locales
# ========================
@dataclass(frozen=True)
class FieldTarget:
    name: str
    order: int = 0

    def __post_init__(self):
        if not 0 <= self.order <= 3:
            raise ValueError(f"derivative order {self.order} outside 0..3")


@dataclass(frozen=True)
class CentralTarget:
    name: str
    coef: Fraction = Fraction(1)


TargetRef = Union[FieldTarget, CentralTarget]


@dataclass(frozen=True)
class RelationTerm:
    """coef(w)·z_coef(z)·(∂^o target)(w)·∂_w^j δ(z/w).

    `truncated` marks coefficients that are finite cuts of an infinite series.
    """
    coef: LaurentPoly
    target: TargetRef
    j: int = 0
    z_coef: LaurentPoly = ONE_POLY
    truncated: bool = False

    @property
    def is_central(self) -> bool:
        return isinstance(self.target, CentralTarget)


@dataclass(frozen=True)
class LocalRelation:
    name: str
    lhs: Tuple[str, str]
    terms: Tuple[RelationTerm, ...] = field(default_factory=tuple)

    @property
    def field_terms(self) -> Tuple[RelationTerm, ...]:
        return tuple(t for t in self.terms if not t.is_central)

    @property
    def central_terms(self) -> Tuple[RelationTerm, ...]:
        return tuple(t for t in self.terms if t.is_central)


class WeightRegistry(BaseModel):
    """Conformal weights Δ with X(z) = Σ X_m z^{-m-Δ}."""
    model_config = ConfigDict(frozen=True)

    weights: Dict[str, int] = Field(default_factory=lambda: {
        "alpha": 1, "alpha*": 0, "alpha1": 1, "alpha1*": 0,
        "beta": 1, "beta1": 1,
        "x": 1, "x'": 1,
        "dbar": 2, "dbar1": 2,
    })

    def weight(self, name: str) -> int:
        try:
            return self.weights[name]
        except KeyError:
            raise UnknownFieldError(f"field {name!r} has no registered weight") from None


DEFAULT_REGISTRY = WeightRegistry()

ModeTarget = Tuple[str, Optional[int]]


def mode_bracket(rel: LocalRelation, m: int, n: int,
                 reg: WeightRegistry = DEFAULT_REGISTRY) -> List[Tuple[ModeTarget, Fraction]]:
    """[A_m, B_n] as Res_z Res_w z^{m+Δ_A−1} w^{n+Δ_B−1} [A(z), B(w)].

    Args:
        rel: Local relation.
        m: Mode of A.
        n: Mode of B.
        reg: Weight registry.

    Returns:
        Sorted ((name, mode), coefficient) pairs; mode is None for central targets.

    Raises:
        UnknownFieldError: If a field of the relation has no weight.
    """
    d_a = reg.weight(rel.lhs[0])
    d_b = reg.weight(rel.lhs[1])
    acc: Dict[ModeTarget, Fraction] = defaultdict(Fraction)
    for term in rel.terms:
        target = term.target
        d_x = None if term.is_central else reg.weight(target.name)
        for p, cz in term.z_coef.items():
            # z-residue fixes the delta summation index
            k = m + d_a - 1 + p
            ffk = falling(k, term.j)
            if ffk == 0:
                continue
            for q, cw in term.coef.items():
                c = cz * cw * ffk
                if term.is_central:
                    if n + d_b - 1 + q + k - term.j == -1:
                        acc[(target.name, None)] += c * target.coef
                    continue
                s = n + d_b + q + k - term.j - d_x - target.order
                acc[(target.name, s)] += c * falling(-s - d_x, target.order)
    return sorted(((key, c) for key, c in acc.items() if c),
                  key=lambda kv: (kv[0][0], kv[0][1] if kv[0][1] is not None else 0))


def relation_library(series_order: int = 8) -> Dict[str, LocalRelation]:
    """Every transcribed generating-function relation, keyed by name.

    Args:
        series_order: Truncation of the √(1+4/w) streams.
    """
    return dict(_library(series_order))


@lru_cache(maxsize=None)
def _library(series_order: int) -> Dict[str, LocalRelation]:
    w = LaurentPoly.monomial(1)
    P, dP = P_POLY, P_POLY.derivative()
    sqrt_stream = sqrt_one_plus_four_over_w(series_order)
    one_plus = ONE_POLY + LaurentPoly.monomial(-1, 4)

    def f(name: str, coef: LaurentPoly, j: int, order: int = 0) -> RelationTerm:
        return RelationTerm(coef, FieldTarget(name, order), j)

    def c(name: str, coef: LaurentPoly, j: int, z_coef: LaurentPoly = ONE_POLY,
          truncated: bool = False) -> RelationTerm:
        return RelationTerm(coef, CentralTarget(name), j, z_coef, truncated)

    rels = [
        LocalRelation("eezw", ("dbar1", "dbar1"), (
            f("dbar", ONE_POLY, 0, order=1),
            f("dbar", 2 * ONE_POLY, 1),
            c("c1", -P, 3),
            c("c1", dP * Fraction(-3, 2), 2),
        )),
        LocalRelation("ddzw", ("dbar", "dbar"), (
            f("dbar", P, 0, order=1),
            f("dbar", dP, 0),
            f("dbar", 2 * P, 1),
            c("c1", -(P * P), 3),
            # printed with z-dependent factors
            c("c1", -3 * ONE_POLY, 2, z_coef=dP * P),
            c("c1", -6 * ONE_POLY, 1, z_coef=P),
            c("c1", -12 * ONE_POLY, 1),
        )),
        LocalRelation("dezw", ("dbar", "dbar1"), (
            f("dbar1", P, 0, order=1),
            f("dbar1", 2 * P, 1),
            f("dbar1", dP * Fraction(3, 2), 0),
            c("c2", 3 * w * (2 * ONE_POLY + w) * sqrt_stream, 2, truncated=True),
            c("c2", w * w * w * one_plus * sqrt_stream, 3, truncated=True),
        )),
        LocalRelation("currentalgebra1", ("dbar1", "x'"), (
            f("x", P, 0, order=1),
            f("x", P, 1),
            f("x", w + 2 * ONE_POLY, 0),
        )),
        LocalRelation("currentalgebra2", ("dbar1", "x"), (
            f("x'", ONE_POLY, 0, order=1),
            f("x'", ONE_POLY, 1),
        )),
        LocalRelation("currentalgebra3", ("dbar", "x'"), (
            f("x'", P, 0, order=1),
            f("x'", P, 1),
            f("x'", w + 2 * ONE_POLY, 0),
        )),
        LocalRelation("currentalgebra4", ("dbar", "x"), (
            f("x", P, 0, order=1),
            f("x", P, 1),
            f("x", 2 * (w + 2 * ONE_POLY), 0),
        )),
        LocalRelation("bosonrelations", ("beta", "beta"), (
            c("1_0", -2 * ONE_POLY, 1),
        )),
        LocalRelation("bosonrelations1", ("beta1", "beta1"), (
            c("1_0", -2 * P, 1),
            c("1_0", -2 * (2 * ONE_POLY + w), 0),
        )),
        LocalRelation("bosonrelations01", ("beta", "beta1"), (
            c("1_1", -(w * sqrt_stream), 1, truncated=True),
        )),
    ]
    return {rel.name: rel for rel in rels}


def relation_to_json(rel: LocalRelation) -> Dict[str, object]:
    def poly(lp: LaurentPoly) -> List[Dict[str, int]]:
        return [{"power": p, "num": c.numerator, "den": c.denominator} for p, c in lp.items()]

    terms = []
    for term in rel.terms:
        entry: Dict[str, object] = {"coef_w": poly(term.coef), "coef_z": poly(term.z_coef),
                                    "delta_order": term.j, "truncated": term.truncated}
        if term.is_central:
            entry["central"] = term.target.name
        else:
            entry["field"] = term.target.name
            entry["derivative"] = term.target.order
        terms.append(entry)
    return {"name": rel.name, "lhs": list(rel.lhs), "terms": terms}
