from __future__ import annotations
import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union
from option import Result, Ok, Err
from pydantic import BaseModel, ConfigDict, model_validator
from threepoint_gauge.errors import ParseError
from threepoint_gauge.kahler import OMEGA0, OMEGA1, OMEGA_ZERO, OmegaClass, der_action, reduce
from threepoint_gauge.ring import (
    Derivation, RElem, Rational, apply_derivation, bracket_der, mul, to_scalar,
)

"""Three-point current, Witt, Virasoro and gauge algebras with exact structure constants.

Current algebra: (sl₂ ⊗ R) ⊕ Ω_R/dR with [x⊗f, y⊗g] = [x,y]⊗fg + (x,y)·class(f dg).
Witt algebra: Der(R), basis d_n = t^n u D (u-flag 1) and d¹_n = t^n D (u-flag 0).
Gauge algebra: Virasoro ⋉ current, Witt acting on the ring factor.
"""

SL2 = ("e", "f", "h")

_SL2_BRACKET: Dict[Tuple[str, str], Dict[str, int]] = {
    ("h", "e"): {"e": 2},
    ("h", "f"): {"f": -2},
    ("e", "f"): {"h": 1},
}
for (_x, _y), _v in list(_SL2_BRACKET.items()):
    _SL2_BRACKET[(_y, _x)] = {z: -c for z, c in _v.items()}


def sl2_bracket(x: str, y: str) -> Dict[str, int]:
    return _SL2_BRACKET.get((x, y), {})


class FormConfig(BaseModel):
    """Invariant form scale·(trace form): (e,f) = (f,e) = scale, (h,h) = 2·scale."""
    model_config = ConfigDict(frozen=True)

    scale: Rational = Fraction(1)

    @model_validator(mode="after")
    def _check_scale(self):
        if self.scale == 0:
            raise ValueError("form scale must be non-zero")
        return self

    def pairing(self, x: str, y: str) -> Fraction:
        if {x, y} == {"e", "f"}:
            return self.scale
        if x == y == "h":
            return 2 * self.scale
        return Fraction(0)


class _Sparse:
    """Immutable sparse coordinates keyed by hashable basis labels."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping, Iterable] = ()):
        acc = defaultdict(Fraction)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, c in items:
            acc[key] += to_scalar(c)
        self._terms = {key: c for key, c in acc.items() if c}

    def _same(self, terms: Mapping) -> "_Sparse":
        obj = self.__class__.__new__(self.__class__)
        obj._terms = {key: c for key, c in terms.items() if c}
        return obj

    def items(self) -> List[Tuple[tuple, Fraction]]:
        return sorted(self._terms.items())

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def _add_terms(self, other: "_Sparse", sign: int = 1) -> Dict:
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, Fraction(0)) + sign * c
        return acc

    def __add__(self, other):
        return self._same(self._add_terms(other))

    def __sub__(self, other):
        return self._same(self._add_terms(other, -1))

    def __neg__(self):
        return self._same({key: -c for key, c in self._terms.items()})

    def __mul__(self, c):
        c = to_scalar(c)
        return self._same({key: c * v for key, v in self._terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({render(self)!r})"

    def __str__(self) -> str:
        return render(self)


class WittElem(_Sparse):
    """Σ c_{n,w} t^n u^w D keyed by (n, w)."""

    @classmethod
    def basis(cls, n: int, w: int, c=1) -> "WittElem":
        return cls({(n, w): c})

    def to_derivation(self) -> Derivation:
        return Derivation(RElem(self._terms))

    @classmethod
    def from_derivation(cls, d: Derivation) -> "WittElem":
        return cls(d.coef.terms)


class CurrentElem(_Sparse):
    """Σ c·x⊗t^k u^w keyed by (x, k, w), plus a central OmegaClass."""

    __slots__ = ("center",)

    def __init__(self, terms: Union[Mapping, Iterable] = (), center: OmegaClass = OMEGA_ZERO):
        super().__init__(terms)
        for key in self._terms:
            if key[0] not in SL2:
                raise ValueError(f"unknown sl2 label {key[0]!r}")
        self.center = center

    def _same(self, terms: Mapping, center: Optional[OmegaClass] = None) -> "CurrentElem":
        obj = CurrentElem.__new__(CurrentElem)
        obj._terms = {key: c for key, c in terms.items() if c}
        obj.center = self.center if center is None else center
        return obj

    @classmethod
    def basis(cls, x: str, k: int, w: int = 0, c=1) -> "CurrentElem":
        return cls({(x, k, w): c})

    @classmethod
    def central(cls, omega: OmegaClass) -> "CurrentElem":
        return cls((), omega)

    @classmethod
    def from_ring(cls, x: str, f: RElem) -> "CurrentElem":
        return cls({(x, k, w): c for (k, w), c in f.items()})

    def ring_part(self, x: str) -> RElem:
        return RElem({(k, w): c for (y, k, w), c in self._terms.items() if y == x})

    def __add__(self, other):
        return self._same(self._add_terms(other), self.center + other.center)

    def __sub__(self, other):
        return self._same(self._add_terms(other, -1), self.center - other.center)

    def __neg__(self):
        return self._same({key: -c for key, c in self._terms.items()}, -self.center)

    def __mul__(self, c):
        c = to_scalar(c)
        return self._same({key: c * v for key, v in self._terms.items()}, self.center * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self._terms) or bool(self.center)

    def __eq__(self, other) -> bool:
        return isinstance(other, CurrentElem) and self._terms == other._terms and self.center == other.center

    def __hash__(self) -> int:
        return hash((frozenset(self._terms.items()), self.center))


@dataclass(frozen=True)
class VirasoroElem:
    witt: WittElem = field(default_factory=WittElem)
    c1: Fraction = Fraction(0)
    c2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c1", to_scalar(self.c1))
        object.__setattr__(self, "c2", to_scalar(self.c2))

    def __add__(self, other: "VirasoroElem") -> "VirasoroElem":
        return VirasoroElem(self.witt + other.witt, self.c1 + other.c1, self.c2 + other.c2)

    def __neg__(self) -> "VirasoroElem":
        return VirasoroElem(-self.witt, -self.c1, -self.c2)

    def __sub__(self, other: "VirasoroElem") -> "VirasoroElem":
        return self + (-other)

    def __mul__(self, c) -> "VirasoroElem":
        return VirasoroElem(self.witt * c, self.c1 * to_scalar(c), self.c2 * to_scalar(c))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.witt) or bool(self.c1) or bool(self.c2)


@dataclass(frozen=True)
class GaugeElem:
    """Element of the semidirect sum (Virasoro ⊕ current ⊕ center)."""
    vir: VirasoroElem = field(default_factory=VirasoroElem)
    cur: CurrentElem = field(default_factory=CurrentElem)

    @classmethod
    def of(cls, obj) -> "GaugeElem":
        """Embed a Witt, Virasoro, current or central element."""
        if isinstance(obj, GaugeElem):
            return obj
        if isinstance(obj, WittElem):
            return cls(VirasoroElem(obj), CurrentElem())
        if isinstance(obj, VirasoroElem):
            return cls(obj, CurrentElem())
        if isinstance(obj, CurrentElem):
            return cls(VirasoroElem(), obj)
        if isinstance(obj, OmegaClass):
            return cls(VirasoroElem(), CurrentElem.central(obj))
        raise TypeError(f"cannot embed {type(obj).__name__} in the gauge algebra")

    def __add__(self, other: "GaugeElem") -> "GaugeElem":
        return GaugeElem(self.vir + other.vir, self.cur + other.cur)

    def __neg__(self) -> "GaugeElem":
        return GaugeElem(-self.vir, -self.cur)

    def __sub__(self, other: "GaugeElem") -> "GaugeElem":
        return self + (-other)

    def __mul__(self, c) -> "GaugeElem":
        return GaugeElem(self.vir * c, self.cur * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.vir) or bool(self.cur)

    def is_zero(self) -> bool:
        return not self

    def __str__(self) -> str:
        return render(self)


# -------- bases --------
def current(x: str, k: int, w: int = 0, c=1) -> CurrentElem:
    return CurrentElem.basis(x, k, w, c)


def witt(n: int, w: int, c=1) -> WittElem:
    return WittElem.basis(n, w, c)


def dbar(m: int) -> WittElem:
    """d̄_m = −d_{m+1}."""
    return WittElem.basis(m + 1, 1, -1)


def dbar1(m: int) -> WittElem:
    """d̄¹_m = −d¹_{m+1}."""
    return WittElem.basis(m + 1, 0, -1)


def witt_to_bar(a: WittElem) -> Dict[Tuple[str, int], Fraction]:
    """Coordinates of a Witt element on the d̄/d̄¹ basis."""
    out: Dict[Tuple[str, int], Fraction] = {}
    for (n, w), c in a.items():
        out[("dbar" if w else "dbar1", n - 1)] = -c
    return out


# -------- corchetes --------
def bracket_current(a: CurrentElem, b: CurrentElem, form: FormConfig) -> CurrentElem:
    """[x⊗f, y⊗g] = [x,y]⊗fg + (x,y)·class(f dg); centers are central."""
    terms: Dict[Tuple[str, int, int], Fraction] = defaultdict(Fraction)
    center = OMEGA_ZERO
    for (x, k, w), c in a.items():
        fa = RElem.monomial(k, w)
        for (y, l, v), d in b.items():
            fb = RElem.monomial(l, v)
            cd = c * d
            br = sl2_bracket(x, y)
            if br:
                prod = mul(fa, fb)
                for z, s in br.items():
                    for (m, u), e in prod.items():
                        terms[(z, m, u)] += cd * s * e
            pair = form.pairing(x, y)
            if pair:
                center = center + reduce(fa, fb) * (cd * pair)
    return CurrentElem(terms, center)


def bracket_witt(a: WittElem, b: WittElem) -> WittElem:
    return WittElem.from_derivation(bracket_der(a.to_derivation(), b.to_derivation()))


def witt_on_current(d: WittElem, a: CurrentElem, center_action: bool = False) -> CurrentElem:
    """x⊗f ↦ x⊗d(f).

    The center is left alone unless `center_action` asks for the Der(R) action
    on Ω_R/dR.
    """
    der = d.to_derivation()
    terms: Dict[Tuple[str, int, int], Fraction] = defaultdict(Fraction)
    for (x, k, w), c in a.items():
        for (m, u), e in apply_derivation(der, RElem.monomial(k, w)).items():
            terms[(x, m, u)] += c * e
    center = der_action(der, a.center) if center_action else OMEGA_ZERO
    return CurrentElem(terms, center)


def closed_witt_on_current(m: int, wd: int, x: str, n: int, wx: int) -> CurrentElem:
    """Closed formulas for [d_m or d¹_m, x_n or x'_n]."""
    if wd == 1 and wx == 0:
        terms = {(x, m + n + 1, 0): n, (x, m + n, 0): 4 * n}
    elif wd == 1:
        terms = {(x, m + n + 1, 1): n + 1, (x, m + n, 1): 2 * (2 * n + 1)}
    elif wx == 0:
        terms = {(x, m + n - 1, 1): n}
    else:
        terms = {(x, m + n + 1, 0): n + 1, (x, m + n, 0): 2 * (2 * n + 1)}
    return CurrentElem(terms)


def bracket_gauge(a: GaugeElem, b: GaugeElem, form: FormConfig, center_action: bool = False) -> GaugeElem:
    """Bracket of the semidirect sum.

    Virasoro central coordinates of the result stay 0; that cocycle is only
    known through the generating-function relations in `formal`.
    """
    wa, wb = a.vir.witt, b.vir.witt
    cur = bracket_current(a.cur, b.cur, form)
    if wa:
        cur = cur + witt_on_current(wa, b.cur, center_action)
    if wb:
        cur = cur - witt_on_current(wb, a.cur, center_action)
    return GaugeElem(VirasoroElem(bracket_witt(wa, wb)), cur)


def jacobi_defect(a: GaugeElem, b: GaugeElem, c: GaugeElem, form: FormConfig,
                  center_action: bool = False) -> GaugeElem:
    """[[a,b],c] + [[b,c],a] + [[c,a],b]."""
    def br(x, y):
        return bracket_gauge(x, y, form, center_action)
    return br(br(a, b), c) + br(br(b, c), a) + br(br(c, a), b)


# ========================
# Etiquetas de base
# ========================
_CURRENT_LABEL = re.compile(r"^([efh])('?)@t(?:\^([+-]?\d+))?$")
_WITT_LABEL = re.compile(r"^(dbar1|dbar|d1|d)@([+-]?\d+)$")


def parse_label(text: str) -> Result[GaugeElem, Exception]:
    """Parse a basis label: "e@t^2", "f'@t^-1", "d@3", "d1@0", "dbar@k", "dbar1@k", "w0", "w1", "c1", "c2"."""
    try:
        s = str(text).strip()
        if s in ("w0", "w1"):
            return Ok(GaugeElem.of(OMEGA0 if s == "w0" else OMEGA1))
        if s in ("c1", "c2"):
            return Ok(GaugeElem.of(VirasoroElem(c1=int(s == "c1"), c2=int(s == "c2"))))
        m = _CURRENT_LABEL.match(s)
        if m:
            k = int(m.group(3)) if m.group(3) is not None else 1
            return Ok(GaugeElem.of(current(m.group(1), k, 1 if m.group(2) else 0)))
        m = _WITT_LABEL.match(s)
        if m:
            name, n = m.group(1), int(m.group(2))
            elem = {
                "d": lambda: witt(n, 1),
                "d1": lambda: witt(n, 0),
                "dbar": lambda: dbar(n),
                "dbar1": lambda: dbar1(n),
            }[name]()
            return Ok(GaugeElem.of(elem))
        raise ParseError(f"unknown basis label {text!r}")
    except Exception as e:
        return Err(e)


def current_label(x: str, k: int, w: int) -> str:
    prime = "'" if w else ""
    return f"{x}{prime}@t^{k}"


def _signed_join(parts: List[Tuple[Fraction, str]]) -> str:
    out = []
    for c, label in parts:
        mag = abs(c)
        body = label if mag == 1 else f"{mag}*{label}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def _labels(obj) -> List[Tuple[Fraction, str]]:
    parts: List[Tuple[Fraction, str]] = []
    if isinstance(obj, GaugeElem):
        return _labels(obj.vir) + _labels(obj.cur)
    if isinstance(obj, VirasoroElem):
        parts = _labels(obj.witt)
        parts += [(c, name) for c, name in ((obj.c1, "c1"), (obj.c2, "c2")) if c]
        return parts
    if isinstance(obj, WittElem):
        return [(c, f"{'d' if w else 'd1'}@{n}") for (n, w), c in obj.items()]
    if isinstance(obj, CurrentElem):
        parts = [(c, current_label(x, k, w)) for (x, k, w), c in obj.items()]
        parts += [(c, name) for c, name in ((obj.center.c0, "w0"), (obj.center.c1, "w1")) if c]
        return parts
    raise TypeError(f"cannot render {type(obj).__name__}")


def render(obj) -> str:
    """Stable text form in basis-label grammar, "0" when empty."""
    return _signed_join(_labels(obj)) or "0"


def to_json(obj) -> Dict[str, object]:
    """JSON coordinates of a gauge-algebra element."""
    g = GaugeElem.of(obj)

    def q(c: Fraction) -> Dict[str, int]:
        return {"num": c.numerator, "den": c.denominator}

    return {
        "witt": [{"n": n, "u": w, **q(c)} for (n, w), c in g.vir.witt.items()],
        "current": [{"x": x, "k": k, "u": w, **q(c)} for (x, k, w), c in g.cur.items()],
        "center": {"w0": q(g.cur.center.c0), "w1": q(g.cur.center.c1)},
        "c1": q(g.vir.c1),
        "c2": q(g.vir.c2),
        "text": render(g),
    }
