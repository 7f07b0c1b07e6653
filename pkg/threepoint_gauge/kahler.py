from __future__ import annotations
import math
import re
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple
from option import Result, Ok, Err
from threepoint_gauge import config
from threepoint_gauge.errors import ParseError, StepBudgetExceeded
from threepoint_gauge.ring import (
    Automorphism, Derivation, RElem, T, T_INV, apply_derivation, d3_elements, parse_scalar, to_scalar,
)

"""Kähler differentials of R modulo exact forms.

Ω_R/dR is two dimensional with basis ω₀ = t^-1 dt and ω₁ = t^-1 u dt. `reduce` uses
closed formulas on basis pairs; `reduce_oracle` gets the same classes by rewriting,
and the two are compared by the `mu` suite.
"""


@dataclass(frozen=True)
class OmegaClass:
    """c0·ω₀ + c1·ω₁."""
    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c0", to_scalar(self.c0))
        object.__setattr__(self, "c1", to_scalar(self.c1))

    def __add__(self, other: "OmegaClass") -> "OmegaClass":
        return OmegaClass(self.c0 + other.c0, self.c1 + other.c1)

    def __neg__(self) -> "OmegaClass":
        return OmegaClass(-self.c0, -self.c1)

    def __sub__(self, other: "OmegaClass") -> "OmegaClass":
        return OmegaClass(self.c0 - other.c0, self.c1 - other.c1)

    def __mul__(self, c) -> "OmegaClass":
        c = to_scalar(c)
        return OmegaClass(self.c0 * c, self.c1 * c)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def is_zero(self) -> bool:
        return not self

    def __str__(self) -> str:
        return render_omega(self)


OMEGA_ZERO = OmegaClass()
OMEGA0 = OmegaClass(1, 0)
OMEGA1 = OmegaClass(0, 1)


@dataclass(frozen=True)
class MuConvention:
    """Extension of n!! and 1/n! to the negative arguments reached by `mu`."""
    minus_one: int = 1
    minus_three: int = -1
    # 1/(negative integer)! is taken as 0
    reciprocal_negative_factorial: int = 0


MU_CONVENTION = MuConvention()


def double_factorial(n: int) -> int:
    """n!! for n ≥ 0 plus the two negative values in `MU_CONVENTION`.

    Raises:
        ValueError: For any other negative n.
    """
    if n == -1:
        return MU_CONVENTION.minus_one
    if n == -3:
        return MU_CONVENTION.minus_three
    if n < 0:
        raise ValueError(f"double factorial undefined for {n}")
    out = 1
    while n >= 2:
        out *= n
        n -= 2
    return out


@lru_cache(maxsize=None)
def mu(k: int, l: int) -> Fraction:
    """ω₁-coordinate of t^k d(t^l u).

    μ_{k,l} = k (−1)^{n+1} 2^n (2n−1)!! / (n+1)! with n = k + l.
    """
    n = k + l
    if k == 0 or n + 1 < 0:
        return Fraction(MU_CONVENTION.reciprocal_negative_factorial)
    sign = -1 if (n + 1) % 2 else 1
    return Fraction(k * sign * double_factorial(2 * n - 1)) * Fraction(2) ** n / math.factorial(n + 1)


@lru_cache(maxsize=None)
def _reduce_basis(k: int, w: int, l: int, v: int) -> Tuple[Fraction, Fraction]:
    # class of t^k u^w d(t^l u^v)
    if w == 0 and v == 0:
        return (Fraction(-k) if l == -k else Fraction(0), Fraction(0))
    if w == 1 and v == 1:
        c = (l + 1 if k + l == -2 else 0) + (4 * l + 2 if k + l == -1 else 0)
        return (Fraction(c), Fraction(0))
    if w == 0:
        return (Fraction(0), mu(k, l))
    # d(t^l · t^k u) is exact, so t^k u d(t^l) ≡ −t^l d(t^k u)
    return (Fraction(0), -mu(l, k))


def reduce(f: RElem, g: RElem) -> OmegaClass:
    """Class of f·dg in Ω_R/dR, bilinear over basis pairs.

    Args:
        f: Coefficient.
        g: Differentiated element.

    Returns:
        OmegaClass coordinates on (ω₀, ω₁).
    """
    c0 = Fraction(0)
    c1 = Fraction(0)
    for (k, w), a in f.items():
        for (l, v), b in g.items():
            x0, x1 = _reduce_basis(k, w, l, v)
            c0 += a * b * x0
            c1 += a * b * x1
    return OmegaClass(c0, c1)


def reduce_oracle(f: RElem, g: RElem, budget: Optional[int] = None) -> OmegaClass:
    """Class of f·dg by rewriting, independent of the closed formulas.

    f·dg is expanded into terms c·t^a u^w dt and c·t^a u^w du, then:

    - t^a u du = t^a (t+2) dt
    - t^a du ≡ −a t^{a−1} u dt          (d(t^a u) is exact)
    - t^a dt ≡ 0 unless a = −1
    - t^a u dt ≡ −(a+3)/(4a+6) t^{a+1} u dt   for a ≤ −2
    - t^a u dt ≡ −(4a+2)/(a+2) t^{a−1} u dt   for a ≥ 0

    Both last rules move the exponent toward −1; at a = −3 the factor is 0.

    Raises:
        StepBudgetExceeded: If rewriting does not finish within `budget` steps.
    """
    budget = config.THREEPOINT_REWRITE_BUDGET if budget is None else budget
    pending: Dict[Tuple[int, int, str], Fraction] = defaultdict(Fraction)

    for (k1, w1), c1 in f.items():
        for (k2, w2), c2 in g.items():
            if w2 == 0:
                dg = [(k2 - 1, 0, "dt", k2)]
            else:
                dg = [(k2, 0, "du", 1), (k2 - 1, 1, "dt", k2)]
            for a, w, kind, coef in dg:
                if coef == 0:
                    continue
                c = c1 * c2 * coef
                a += k1
                if w + w1 == 2:
                    pending[(a + 2, 0, kind)] += c
                    pending[(a + 1, 0, kind)] += 4 * c
                else:
                    pending[(a, w + w1, kind)] += c

    c0 = Fraction(0)
    c1 = Fraction(0)
    steps = 0
    while pending:
        steps += 1
        if steps > budget:
            raise StepBudgetExceeded(f"reduce_oracle exceeded {budget} rewrite steps")
        (a, w, kind), c = pending.popitem()
        if c == 0:
            continue
        if kind == "du":
            if w == 1:
                pending[(a + 1, 0, "dt")] += c
                pending[(a, 0, "dt")] += 2 * c
            elif a != 0:
                pending[(a - 1, 1, "dt")] += -a * c
        elif w == 0:
            if a == -1:
                c0 += c
        elif a == -1:
            c1 += c
        elif a < -1:
            factor = Fraction(-(a + 3), 4 * a + 6)
            if factor:
                pending[(a + 1, 1, "dt")] += c * factor
        else:
            pending[(a - 1, 1, "dt")] += c * Fraction(-(4 * a + 2), a + 2)
    return OmegaClass(c0, c1)


# ========================
# Acción de Der(R)
# ========================
_REPRESENTATIVES = {
    0: (T_INV, T),
    1: (RElem.monomial(-1, 1), T),
}


def lie_derivative(d: Derivation, f: RElem, g: RElem) -> OmegaClass:
    """Class of D(f⊗g) = D(f)⊗g + f⊗D(g)."""
    return reduce(apply_derivation(d, f), g) + reduce(f, apply_derivation(d, g))


def der_action(d: Derivation, omega: OmegaClass) -> OmegaClass:
    """Action of a derivation on Ω_R/dR through the fixed representatives of ω₀, ω₁."""
    out = OMEGA_ZERO
    if omega.c0:
        out = out + omega.c0 * lie_derivative(d, *_REPRESENTATIVES[0])
    if omega.c1:
        out = out + omega.c1 * lie_derivative(d, *_REPRESENTATIVES[1])
    return out


def _delta(a: int, b: int) -> int:
    return 1 if a == b else 0


def tabulated_der_action(k: int, w: int, basis: int, variant: str = "statement") -> OmegaClass:
    """Printed closed-form table for t^k u^w D acting on ω_basis.

    `variant` only matters for t^k D(ω₁), whose ω₀ sign differs between the
    printed statement ("statement") and its derivation ("proof").
    """
    if variant not in ("statement", "proof"):
        raise ValueError(f"unknown variant {variant!r}")
    if basis == 0:
        if w == 1:
            return OMEGA_ZERO
        return OmegaClass(0, mu(1, k - 2) + mu(-1, k))
    if w == 0:
        sign = 1 if variant == "statement" else -1
        return OmegaClass(
            sign * (_delta(k, -1) + 4 * _delta(k, -2)),
            -(mu(k + 2, 1) + 2 * mu(k + 1, 1)),
        )
    return OmegaClass(
        _delta(k, -5) + 6 * _delta(k, -4) + 8 * _delta(k, -3),
        2 * (mu(k, 1) + 4 * mu(k + 1, 1)),
    )


def compare_der_action(k: int, w: int, basis: int) -> str:
    """Which printed variant matches the first-principles action.

    Returns:
        "both", "statement", "proof" or "neither".
    """
    truth = der_action(Derivation.basis(k, w), OMEGA0 if basis == 0 else OMEGA1)
    hits = [v for v in ("statement", "proof") if tabulated_der_action(k, w, basis, v) == truth]
    if len(hits) == 2:
        return "both"
    return hits[0] if hits else "neither"


# ========================
# Acción de D₃
# ========================
def automorphism_matrix(g: Automorphism) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """Matrix of g on (ω₀, ω₁); column j holds the coordinates of g(ω_j)."""
    g_t = g.img_t
    img0 = reduce(g.img_t_inv, g_t)
    img1 = reduce(g(RElem.monomial(-1, 1)), g_t)
    return ((img0.c0, img1.c0), (img0.c1, img1.c1))


def d3_character() -> Tuple[Fraction, Fraction, Fraction]:
    """Traces of id, ψ and τ₂ on Ω_R/dR."""
    group = d3_elements()
    traces = []
    for word in ("id", "ψ", "τ₂"):
        m = automorphism_matrix(group[word])
        traces.append(m[0][0] + m[1][1])
    return tuple(traces)


def mu_grid(K: int) -> List[Dict[str, int]]:
    """μ_{k,l} for k, l in [−K, K] as {k, l, num, den} records, row-major in k."""
    grid = []
    for k in range(-K, K + 1):
        for l in range(-K, K + 1):
            value = mu(k, l)
            grid.append({"k": k, "l": l, "num": value.numerator, "den": value.denominator})
    return grid


# ========================
# Texto
# ========================
def render_omega(omega: OmegaClass) -> str:
    """e.g. "w0 - 1/2*w1"; "0" for the zero class."""
    out = []
    for c, name in ((omega.c0, "w0"), (omega.c1, "w1")):
        if c == 0:
            continue
        mag = abs(c)
        body = name if mag == 1 else f"{mag}*{name}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out) or "0"


_OMEGA_TERM = re.compile(r"^(?:(\d+(?:/\d+)?)\*)?(w0|w1)$")


def parse_omega(text: str) -> Result[OmegaClass, Exception]:
    """Inverse of `render_omega`."""
    try:
        s = re.sub(r"\s+", "", str(text))
        if s == "0":
            return Ok(OMEGA_ZERO)
        if not s:
            raise ParseError("empty class")
        out = OMEGA_ZERO
        for chunk in re.split(r"(?=[+-])", s):
            if not chunk:
                continue
            sign = -1 if chunk[0] == "-" else 1
            body = chunk[1:] if chunk[0] in "+-" else chunk
            m = _OMEGA_TERM.match(body)
            if m is None:
                raise ParseError(f"unexpected term {chunk!r} in {text!r}")
            coef = parse_scalar(m.group(1)) if m.group(1) else Fraction(1)
            out = out + (OMEGA0 if m.group(2) == "w0" else OMEGA1) * (sign * coef)
        return Ok(out)
    except Exception as e:
        return Err(e)
