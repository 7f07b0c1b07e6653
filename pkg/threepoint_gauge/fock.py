from __future__ import annotations
import itertools
import random
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Literal, Mapping, Tuple, Union
from pydantic import BaseModel, ConfigDict, model_validator
from threepoint_gauge.ring import Rational, to_scalar

"""Fock space F = Q[x]⊗Q[y]⊗V and the elementary mode operators on it.

Variables are (family, index) with family in {x, x1, y, y1}; y and y1 only
carry negative indices. V has basis v0, v1.

Oscillators a, a*, a1, a1* act through ρ_r (two orderings r = 0, 1); the
Heisenberg modes b, b1 act through the Borel-induced representation ρ.
"""

Var = Tuple[str, int]
Monomial = Tuple[Tuple[Var, int], ...]
FockKey = Tuple[Monomial, int]

FAMILIES = ("x", "x1", "y", "y1")
_DISPLAY = {"x": "x", "x1": "x¹", "y": "y", "y1": "y¹"}


def _mono_mul(mono: Monomial, var: Var) -> Monomial:
    d = dict(mono)
    d[var] = d.get(var, 0) + 1
    return tuple(sorted(d.items()))


def _mono_diff(mono: Monomial, var: Var) -> Tuple[int, Monomial]:
    d = dict(mono)
    e = d.get(var, 0)
    if e == 0:
        return 0, mono
    if e == 1:
        del d[var]
    else:
        d[var] = e - 1
    return e, tuple(sorted(d.items()))


class FockVector:
    """Immutable sparse vector keyed by (monomial, vcomp)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[FockKey, object], Iterable[Tuple[FockKey, object]]] = ()):
        acc: Dict[FockKey, Fraction] = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (mono, vcomp), c in items:
            mono = tuple(sorted((tuple(var), int(e)) for var, e in mono if e))
            for (family, index), e in mono:
                if family not in FAMILIES:
                    raise ValueError(f"unknown variable family {family!r}")
                if family in ("y", "y1") and index >= 0:
                    raise ValueError(f"{family} variables only carry negative indices, got {index}")
                if e < 0:
                    raise ValueError("negative exponent")
            if vcomp not in (0, 1):
                raise ValueError("vcomp must be 0 or 1")
            acc[(mono, vcomp)] += to_scalar(c)
        self._terms = {key: c for key, c in acc.items() if c}

    @classmethod
    def _from_clean(cls, terms: Mapping[FockKey, Fraction]) -> "FockVector":
        obj = cls.__new__(cls)
        obj._terms = {key: c for key, c in terms.items() if c}
        return obj

    @classmethod
    def vacuum(cls, vcomp: int = 0) -> "FockVector":
        return cls({((), vcomp): 1})

    @classmethod
    def monomial(cls, variables: Mapping[Var, int], vcomp: int = 0, c=1) -> "FockVector":
        return cls({(tuple(variables.items()), vcomp): c})

    def items(self) -> List[Tuple[FockKey, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, mono: Monomial, vcomp: int = 0) -> Fraction:
        return self._terms.get((mono, vcomp), Fraction(0))

    def variables(self) -> set:
        """Every variable occurring in the support."""
        return {var for (mono, _), _c in self._terms.items() for var, _e in mono}

    def __add__(self, other: "FockVector") -> "FockVector":
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, Fraction(0)) + c
        return FockVector._from_clean(acc)

    def __neg__(self) -> "FockVector":
        return FockVector._from_clean({key: -c for key, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __mul__(self, c) -> "FockVector":
        c = to_scalar(c)
        if c == 0:
            return ZERO_VECTOR
        return FockVector._from_clean({key: c * v for key, v in self._terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, FockVector) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return render_vector(self)

    def __repr__(self) -> str:
        return f"FockVector({render_vector(self)!r})"

    # -------- operadores elementales --------
    def times(self, var: Var) -> "FockVector":
        return FockVector._from_clean({(_mono_mul(mono, var), vc): c for (mono, vc), c in self._terms.items()})

    def partial(self, var: Var) -> "FockVector":
        acc: Dict[FockKey, Fraction] = defaultdict(Fraction)
        for (mono, vc), c in self._terms.items():
            e, rest = _mono_diff(mono, var)
            if e:
                acc[(rest, vc)] += e * c
        return FockVector._from_clean(acc)

    def on_v(self, matrix: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]) -> "FockVector":
        """Act on the V factor: v_i ↦ Σ_j matrix[i][j]·v_j."""
        acc: Dict[FockKey, Fraction] = defaultdict(Fraction)
        for (mono, vc), c in self._terms.items():
            for j in (0, 1):
                if matrix[vc][j]:
                    acc[(mono, j)] += c * matrix[vc][j]
        return FockVector._from_clean(acc)


ZERO_VECTOR = FockVector()


@dataclass(frozen=True)
class OscillatorMode:
    family: Literal["a", "a*", "a1", "a1*", "b", "b1", "one0", "one1"]
    index: int = 0

    def is_creation(self, r: int) -> bool:
        """True when the mode acts by multiplication (creation part)."""
        m = self.index
        if self.family in ("a", "a1"):
            return not (r == 0 and m >= 0)
        if self.family in ("a*", "a1*"):
            return r == 0 and m <= 0
        if self.family in ("b", "b1"):
            return m < 0
        return False


class HeisenbergParams(BaseModel):
    """Parameters of the Heisenberg representation; B1_11 is tied to B1_00."""
    model_config = ConfigDict(frozen=True)

    B0: Rational = Fraction(0)
    B1_00: Rational = Fraction(0)
    B1_01: Rational = Fraction(0)
    B1_10: Rational = Fraction(0)
    kappa0: Rational = Fraction(1)
    chi1: Rational = Fraction(0)

    @model_validator(mode="after")
    def _check(self):
        if self.kappa0 == 0:
            raise ValueError("kappa0 must be non-zero")
        return self

    @property
    def B1_11(self) -> Fraction:
        return self.B1_00

    @property
    def B1(self) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
        return ((self.B1_00, self.B1_01), (self.B1_10, self.B1_11))


def apply_oscillator(mode: OscillatorMode, r: int, v: FockVector) -> FockVector:
    """ρ_r of a β-γ mode.

    a_m = ∂/∂x_m if m ≥ 0 and r = 0, else x_m;
    a*_m = x_{-m} if m ≤ 0 and r = 0, else −∂/∂x_{-m};
    the a1 family is the same on the x1 variables.
    """
    family, m = mode.family, mode.index
    if family == "one0":
        return v
    if family in ("a", "a1"):
        var = ("x" if family == "a" else "x1", m)
        return v.times(var) if mode.is_creation(r) else v.partial(var)
    if family in ("a*", "a1*"):
        var = ("x" if family == "a*" else "x1", -m)
        return v.times(var) if mode.is_creation(r) else -v.partial(var)
    raise ValueError(f"{family} is not an oscillator mode; use apply_heisenberg")


def apply_heisenberg(mode: OscillatorMode, p: HeisenbergParams, v: FockVector) -> FockVector:
    """ρ of a Heisenberg mode."""
    family, n = mode.family, mode.index
    k0 = p.kappa0
    if family == "one0":
        return v * k0
    if family == "one1":
        return v * p.chi1
    if family == "b":
        if n < 0:
            return v.times(("y", n))
        if n > 0:
            return v.partial(("y", -n)) * (-2 * n * k0)
        return v * p.B0
    if family == "b1":
        if n < 0:
            return v.times(("y1", n))
        out = v.partial(("y1", -2 - n)) * (-(2 + 2 * n) * k0) + v.partial(("y1", -1 - n)) * (-4 * (1 + 2 * n) * k0)
        if n == 0:
            out = out + v.on_v(p.B1)
        return out
    raise ValueError(f"{family} is not a Heisenberg mode; use apply_oscillator")


def apply_mode_operator(mode: OscillatorMode, r: int, p: HeisenbergParams, v: FockVector) -> FockVector:
    if mode.family in ("b", "b1", "one1"):
        return apply_heisenberg(mode, p, v)
    return apply_oscillator(mode, r, v)


# ========================
# Vectores de prueba
# ========================
def _random_monomial(rng: random.Random, degree: int, index_range: int) -> Dict[Var, int]:
    out: Dict[Var, int] = defaultdict(int)
    for _ in range(rng.randint(0, degree)):
        family = rng.choice(FAMILIES)
        if family in ("y", "y1"):
            index = rng.randint(-index_range, -1)
        else:
            index = rng.randint(-index_range, index_range)
        out[(family, index)] += 1
    return out


def random_vectors(count: int, seed: int, degree: int = 2, index_range: int = 4,
                   max_terms: int = 3) -> List[FockVector]:
    """Seeded sparse vectors: ≤ max_terms monomials of degree ≤ degree."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        terms = []
        for _ in range(rng.randint(1, max_terms)):
            num = rng.choice([-3, -2, -1, 1, 2, 3])
            coef = Fraction(num, rng.randint(1, 3))
            terms.append(((tuple(_random_monomial(rng, degree, index_range).items()), rng.randint(0, 1)), coef))
        v = FockVector(terms)
        if v:
            out.append(v)
    return out


def sample_vectors(count: int, seed: int, degree: int = 2, index_range: int = 4) -> List[Tuple[str, FockVector]]:
    """The two vacua followed by `count` seeded random vectors, with ids."""
    fixed = [("vac0", FockVector.vacuum(0)), ("vac1", FockVector.vacuum(1))]
    rand = [(f"rand{i}", v) for i, v in enumerate(random_vectors(count, seed, degree, index_range))]
    return fixed + rand


def all_monomials(degree: int, index_range: int, families: Iterable[str] = ("x", "x1")) -> List[FockVector]:
    """Every monomial ⊗ v0 of total degree ≤ degree in the given families."""
    variables: List[Var] = []
    for family in families:
        if family in ("y", "y1"):
            variables += [(family, i) for i in range(-index_range, 0)]
        else:
            variables += [(family, i) for i in range(-index_range, index_range + 1)]
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(variables, d):
            mono: Dict[Var, int] = defaultdict(int)
            for var in combo:
                mono[var] += 1
            out.append(FockVector.monomial(mono))
    return out


# ========================
# Texto
# ========================
def _render_monomial(mono: Monomial) -> str:
    if not mono:
        return "|0⟩"
    parts = []
    for (family, index), e in mono:
        base = f"{_DISPLAY[family]}_{{{index}}}"
        parts.append(base if e == 1 else f"{base}^{e}")
    return " ".join(parts)


def render_vector(v: FockVector) -> str:
    """e.g. "3/2·x_{-1}^2 y¹_{-2} ⊗ v0"; "0" for the zero vector."""
    out = []
    for (mono, vc), c in v.items():
        body = f"{_render_monomial(mono)} ⊗ v{vc}"
        mag = abs(c)
        if mag != 1:
            body = f"{mag}·{body}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out) or "0"
