from __future__ import annotations
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Annotated, Dict, Iterable, Iterator, List, Mapping, Tuple, Union
from option import Result, Ok, Err
from pydantic import BeforeValidator, PlainSerializer
from threepoint_gauge.errors import ParseError

"""Exact arithmetic in the three-point ring R = Q[t, t^-1, u] / (u^2 - t^2 - 4t).

Elements are sparse maps over the basis {t^k, t^k u}. Every u^2 produced by a
product is rewritten to t^2 + 4t on the spot, so the u-flag never exceeds 1.

Also hosts the derivations f·D with D = (t+2)∂_u + u∂_t and the automorphism
group of R, a dihedral group of order 6 generated by `psi()` and `tau2()`.
"""

Scalar = Fraction
Key = Tuple[int, int]
Number = Union[int, Fraction]

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")
_T_POWER = re.compile(r"^t\^([+-]?\d+)$")
_U_POWER = re.compile(r"^u\^(\d+)$")
# split before a sign that is not an exponent sign
_TERM_SPLIT = re.compile(r"(?<!\^)(?=[+-])")


def parse_scalar(text: str) -> Fraction:
    """Parse a rational written as "p/q" or as an integer.

    Raises:
        ParseError: On anything else, including a zero denominator.
    """
    s = str(text).strip()
    if not _RATIONAL.match(s):
        raise ParseError(f"not a rational number: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}") from None


def to_scalar(value) -> Fraction:
    """Coerce ints, Fractions and rational strings to `Fraction`."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact scalar")


def _rational_field(value) -> Fraction:
    try:
        return to_scalar(value)
    except TypeError as e:
        raise ValueError(str(e)) from None


# pydantic field type: accepts "p/q" strings and ints, dumps as "p/q"
Rational = Annotated[Fraction, BeforeValidator(_rational_field), PlainSerializer(str, return_type=str)]


class RElem:
    """Immutable sparse element Σ c_{k,w} t^k u^w of R.

    Attributes:
        terms: Read-only view of the non-zero coefficients keyed by (k, w).
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Key, Number], Iterable[Tuple[Key, Number]]] = ()):
        """Build an element from (k, w) → coefficient pairs.

        Args:
            terms: Mapping or iterable of ((k, w), coefficient); repeated keys add up.

        Raises:
            ValueError: If a u-flag is not 0 or 1.
        """
        acc: Dict[Key, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for (k, w), c in items:
            if w not in (0, 1):
                raise ValueError(f"u-flag must be 0 or 1, got {w}")
            key = (int(k), int(w))
            acc[key] = acc.get(key, Fraction(0)) + to_scalar(c)
        self._terms = {key: c for key, c in acc.items() if c != 0}

    @classmethod
    def _from_clean(cls, terms: Mapping[Key, Fraction]) -> "RElem":
        obj = cls.__new__(cls)
        obj._terms = {key: c for key, c in terms.items() if c != 0}
        return obj

    # -------- constructores --------
    @classmethod
    def monomial(cls, k: int, w: int = 0, c: Number = 1) -> "RElem":
        return cls({(k, w): c})

    @classmethod
    def scalar(cls, c: Number) -> "RElem":
        return cls({(0, 0): c})

    # -------- acceso --------
    @property
    def terms(self) -> Dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> List[Tuple[Key, Fraction]]:
        """Terms sorted by key, for deterministic iteration."""
        return sorted(self._terms.items())

    def coefficient(self, k: int, w: int = 0) -> Fraction:
        return self._terms.get((k, w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __iter__(self) -> Iterator[Tuple[Key, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    # -------- aritmética --------
    def _coerce(self, other) -> "RElem":
        if isinstance(other, RElem):
            return other
        return RElem.scalar(to_scalar(other))

    def __add__(self, other) -> "RElem":
        other = self._coerce(other)
        acc = dict(self._terms)
        for key, c in other._terms.items():
            acc[key] = acc.get(key, Fraction(0)) + c
        return RElem._from_clean(acc)

    __radd__ = __add__

    def __neg__(self) -> "RElem":
        return RElem._from_clean({key: -c for key, c in self._terms.items()})

    def __sub__(self, other) -> "RElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RElem":
        if isinstance(other, RElem):
            return mul(self, other)
        c = to_scalar(other)
        return RElem._from_clean({key: c * v for key, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RElem":
        return self * (1 / to_scalar(other))

    def __pow__(self, n: int) -> "RElem":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers; general unit inversion is not supported")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = RElem.scalar(other)
        if not isinstance(other, RElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"RElem({render(self)!r})"


ZERO = RElem()
ONE = RElem.monomial(0)
T = RElem.monomial(1)
T_INV = RElem.monomial(-1)
U = RElem.monomial(0, 1)
P = RElem({(2, 0): 1, (1, 0): 4})  # t^2 + 4t = u^2


def mul(a: RElem, b: RElem) -> RElem:
    """Product in R with every u^2 replaced by t^2 + 4t.

    Args:
        a: Left factor.
        b: Right factor.

    Returns:
        The canonical product.
    """
    acc: Dict[Key, Fraction] = defaultdict(Fraction)
    for (k1, w1), c1 in a._terms.items():
        for (k2, w2), c2 in b._terms.items():
            c = c1 * c2
            k = k1 + k2
            if w1 and w2:
                acc[(k + 2, 0)] += c
                acc[(k + 1, 0)] += 4 * c
            else:
                acc[(k, w1 + w2)] += c
    return RElem._from_clean(acc)


# ========================
# Derivaciones
# ========================
def _d_monomial(k: int, w: int) -> Dict[Key, Fraction]:
    # D(t^k) = k t^{k-1} u ; D(t^k u) = (k+1) t^{k+1} + (4k+2) t^k
    if w == 0:
        return {(k - 1, 1): Fraction(k)} if k else {}
    return {(k + 1, 0): Fraction(k + 1), (k, 0): Fraction(4 * k + 2)}


def apply_D(f: RElem) -> RElem:
    """The fixed derivation D = (t+2)∂_u + u∂_t applied to `f`."""
    acc: Dict[Key, Fraction] = defaultdict(Fraction)
    for (k, w), c in f._terms.items():
        for key, v in _d_monomial(k, w).items():
            acc[key] += c * v
    return RElem._from_clean(acc)


@dataclass(frozen=True)
class Derivation:
    """The derivation coef·D of R.

    The basis derivations are d_n = t^n u D and d¹_n = t^n D.
    """
    coef: RElem

    @classmethod
    def basis(cls, n: int, w: int) -> "Derivation":
        return cls(RElem.monomial(n, w))

    def __call__(self, f: RElem) -> RElem:
        return apply_derivation(self, f)

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.coef + other.coef)

    def __neg__(self) -> "Derivation":
        return Derivation(-self.coef)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.coef - other.coef)

    def scale(self, c: Number) -> "Derivation":
        return Derivation(self.coef * c)


def apply_derivation(d: Derivation, f: RElem) -> RElem:
    """Apply coef·D to `f` through the Leibniz rule on the basis."""
    return mul(d.coef, apply_D(f))


def bracket_der(d1: Derivation, d2: Derivation) -> Derivation:
    """[fD, gD] = (f·D(g) − g·D(f))·D."""
    return Derivation(mul(d1.coef, apply_D(d2.coef)) - mul(d2.coef, apply_D(d1.coef)))


# ========================
# Automorfismos
# ========================
@dataclass(frozen=True)
class Automorphism:
    """Ring automorphism fixed by the images of t, t^-1 and u.

    The image of t^-1 is stored because R has no general unit inversion here.

    Attributes:
        img_t: Image of t.
        img_t_inv: Image of t^-1; must multiply with `img_t` to 1.
        img_u: Image of u; must satisfy img_u^2 = img_t^2 + 4·img_t.
        label: Group word, e.g. "ψτ₂".

    Raises:
        ValueError: From the constructor when an invariant fails.
    """
    img_t: RElem
    img_t_inv: RElem
    img_u: RElem
    label: str = "id"

    def __post_init__(self):
        if mul(self.img_t, self.img_t_inv) != ONE:
            raise ValueError(f"{self.label}: image of t times image of t^-1 is not 1")
        lhs = mul(self.img_u, self.img_u)
        rhs = mul(self.img_t, self.img_t) + 4 * self.img_t
        if lhs != rhs:
            raise ValueError(f"{self.label}: image of u breaks u^2 = t^2 + 4t")

    def __call__(self, f: RElem) -> RElem:
        return apply_automorphism(self, f)

    def compose(self, other: "Automorphism", label: str = "") -> "Automorphism":
        """Return self∘other, i.e. f ↦ self(other(f))."""
        if self.label == "id":
            word = other.label
        elif other.label == "id":
            word = self.label
        else:
            word = self.label + other.label
        return Automorphism(self(other.img_t), self(other.img_t_inv), self(other.img_u), label or word)


def apply_automorphism(g: Automorphism, f: RElem) -> RElem:
    """Extend g multiplicatively: t^k u^w ↦ g(t)^k g(u)^w (g(t^-1)^{-k} for k < 0)."""
    cache: Dict[int, RElem] = {0: ONE}

    def t_power(k: int) -> RElem:
        if k not in cache:
            step = g.img_t if k > 0 else g.img_t_inv
            prev = k - 1 if k > 0 else k + 1
            cache[k] = mul(t_power(prev), step)
        return cache[k]

    out = ZERO
    # visit exponents outward from 0 so the power cache fills incrementally
    for (k, w), c in sorted(f._terms.items(), key=lambda kv: abs(kv[0][0])):
        image = t_power(k)
        if w:
            image = mul(image, g.img_u)
        out = out + image * c
    return out


def identity() -> Automorphism:
    return Automorphism(T, T_INV, U, "id")


def psi() -> Automorphism:
    """The involution ψ."""
    half = Fraction(1, 2)
    img_t = RElem({(-1, 1): -1, (0, 0): -3, (1, 0): -1, (0, 1): -1}) * half
    img_u = RElem({(-1, 1): 1, (0, 0): -1, (1, 0): -1, (0, 1): -1}) * half
    img_t_inv = RElem({(2, 0): 1, (1, 0): 3, (1, 1): -1, (0, 1): -1}) * half
    return Automorphism(img_t, img_t_inv, img_u, "ψ")


def tau2() -> Automorphism:
    """The order-three automorphism τ₂.

    It agrees with ψ on t (hence on t^-1) and differs on u.
    """
    base = psi()
    img_u = RElem({(-1, 1): -1, (1, 0): 1, (0, 0): 1, (0, 1): 1}) * Fraction(1, 2)
    return Automorphism(base.img_t, base.img_t_inv, img_u, "τ₂")


def d3_elements() -> Dict[str, Automorphism]:
    """The six group elements keyed by word."""
    e, s, r = identity(), psi(), tau2()
    r2 = r.compose(r, "τ₂²")
    return {
        "id": e,
        "ψ": s,
        "τ₂": r,
        "τ₂²": r2,
        "ψτ₂": s.compose(r, "ψτ₂"),
        "ψτ₂²": s.compose(r2, "ψτ₂²"),
    }


_PHI = {
    "s": RElem({(1, 0): 1, (0, 0): 2, (0, 1): 1}) * Fraction(1, 2),
    "s_inv": RElem({(1, 0): 1, (0, 0): 2, (0, 1): -1}) * Fraction(1, 2),
    "s_minus_1_inv": RElem({(-1, 1): 1, (0, 0): -1}) * Fraction(1, 2),
}


def phi_image(gen: str) -> RElem:
    """Image of a generator of S = Q[s, s^-1, (s-1)^-1] under the isomorphism φ: S → R.

    Raises:
        KeyError: For an unknown generator name.
    """
    try:
        return _PHI[gen]
    except KeyError:
        raise KeyError(f"unknown generator of S: {gen!r}; expected one of {sorted(_PHI)}") from None


# ========================
# Texto
# ========================
def render(a: RElem) -> str:
    """Text form such as "3/2*t^-1*u - 2"; u-terms first, then by descending exponent."""
    if not a._terms:
        return "0"
    out = []
    for (k, w), c in sorted(a._terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0])):
        factors = []
        if k == 1:
            factors.append("t")
        elif k != 0:
            factors.append(f"t^{k}")
        if w:
            factors.append("u")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(mag)] + factors)
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


def _parse_term(chunk: str) -> RElem:
    sign = -1 if chunk[0] == "-" else 1
    body = chunk[1:] if chunk[0] in "+-" else chunk
    if not body:
        raise ParseError("dangling sign")
    term = ONE * sign
    for factor in body.split("*"):
        if factor == "t":
            term = mul(term, T)
        elif factor == "u":
            term = mul(term, U)
        elif (m := _T_POWER.match(factor)) is not None:
            term = mul(term, RElem.monomial(int(m.group(1))))
        elif (m := _U_POWER.match(factor)) is not None:
            term = mul(term, U ** int(m.group(1)))
        elif _RATIONAL.match(factor):
            term = term * parse_scalar(factor)
        else:
            raise ParseError(f"unexpected factor {factor!r}")
    return term


def parse_relem_strict(text: str) -> RElem:
    """Parse the `render` grammar; raises `ParseError`."""
    s = re.sub(r"\s+", "", str(text))
    if not s:
        raise ParseError("empty ring element")
    out = ZERO
    for chunk in _TERM_SPLIT.split(s):
        if chunk:
            out = out + _parse_term(chunk)
    return out


def parse_relem(text: str) -> Result[RElem, Exception]:
    """Parse a ring element for CLI input.

    Args:
        text: e.g. "3/2*t^-1*u - 2" or "t^2 + 4*t".

    Returns:
        Result with the element, or `ParseError` on malformed input.
    """
    try:
        return Ok(parse_relem_strict(text))
    except Exception as e:
        return Err(e)
