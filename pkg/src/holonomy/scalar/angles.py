"""Exact and numeric angle inputs and the order of a rotation by a given angle.

Three kinds of angle are understood:

* ``rational_pi``  -- theta = (a/b) pi, exact;
* ``algebraic_cos`` -- theta = acos(expr) for a nested-radical expr, optionally
  carrying a rational polynomial that vanishes at exp(i theta);
* ``float``        -- radians only; nothing exact can be concluded from it.

Text grammar (CLI and config files)::

    pi*<a>/<b>          rational multiple of pi ("pi", "pi*a", "pi/b" also accepted)
    acos(<expr>)        expr over integers, + - * / and sqrt(...)
    rad:<decimal>       plain radians
    ... zeta_poly=[c0,c1,...]   optional suffix, rational coefficients lowest degree first
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath
import sympy as sp
from mpmath import mp, mpc, mpf

from .._precision import tol
from ..errors import DomainError, InconsistentInput, UnsupportedExpression
from .expr import exact_simplify, parse_expr, to_mpf
from .poly import PolyQ
from .unity import double_angle_poly, double_angle_reduce, is_root_of_unity

RATIONAL_PI = "rational_pi"
ALGEBRAIC_COS = "algebraic_cos"
FLOAT = "float"

INFINITE = math.inf


@dataclass(frozen=True)
class AngleSpec:
    kind: str
    ratio: Fraction | None = None
    cos_text: str | None = None
    zeta_poly: PolyQ | None = None
    irrational_flag: bool | None = None
    radians_text: str | None = None
    asserted: bool = False
    recognized: bool = False
    source: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind == RATIONAL_PI:
            if self.ratio is None:
                raise ValueError("rational_pi angle needs a ratio")
            object.__setattr__(self, "ratio", Fraction(self.ratio))
        elif self.kind == ALGEBRAIC_COS:
            if self.cos_text is None:
                raise ValueError("algebraic_cos angle needs a cosine expression")
            c = _cos_value(self.cos_text, mp.prec)
            if not -1 - tol(30) <= c <= 1 + tol(30):
                raise DomainError(f"acos argument {self.cos_text} outside [-1, 1]")
            if self.zeta_poly is not None:
                zeta = mpc(c, mpmath.sqrt(max(1 - c * c, mpf(0))))
                if abs(self.zeta_poly(zeta)) > tol(30) * self.zeta_poly.coeff_norm():
                    raise InconsistentInput(
                        f"zeta_poly {self.zeta_poly} does not vanish at exp(i acos({self.cos_text}))"
                    )
        elif self.kind == FLOAT:
            if self.radians_text is None:
                raise ValueError("float angle needs radians")
        else:
            raise ValueError(f"unknown angle kind {self.kind!r}")

    # -- constructors ---------------------------------------------------

    @classmethod
    def pi(cls, ratio) -> "AngleSpec":
        return cls(RATIONAL_PI, ratio=Fraction(ratio))

    @classmethod
    def acos(cls, cos_text: str, zeta_poly: PolyQ | None = None, derive: bool = True) -> "AngleSpec":
        if zeta_poly is None and derive:
            try:
                zeta_poly = double_angle_reduce(cos_text)
            except UnsupportedExpression:
                zeta_poly = None
        return cls(ALGEBRAIC_COS, cos_text=cos_text, zeta_poly=zeta_poly)

    @classmethod
    def radians(cls, value) -> "AngleSpec":
        return cls(FLOAT, radians_text=str(value))

    # -- numeric values at the working precision --------------------------

    def value(self) -> mpf:
        return _angle_value(self, mp.prec)

    def cos(self) -> mpf:
        return _cos_sin(self, mp.prec)[0]

    def sin(self) -> mpf:
        return _cos_sin(self, mp.prec)[1]

    # -- exact values ---------------------------------------------------

    def exact_cos(self) -> sp.Expr | None:
        if self.kind == RATIONAL_PI:
            return sp.cos(sp.pi * sp.Rational(self.ratio.numerator, self.ratio.denominator))
        if self.kind == ALGEBRAIC_COS:
            return parse_expr(self.cos_text)
        return None

    def exact_sin(self) -> sp.Expr | None:
        if self.kind == RATIONAL_PI:
            return sp.sin(sp.pi * sp.Rational(self.ratio.numerator, self.ratio.denominator))
        if self.kind == ALGEBRAIC_COS:
            c = parse_expr(self.cos_text)
            return sp.sqrt(exact_simplify(1 - c**2))
        return None

    # -- decisions ------------------------------------------------------

    def pi_ratio(self) -> Fraction | None:
        """theta/pi when it is certified rational, else None."""
        return _pi_ratio(self, mp.prec)

    def pi_rational(self) -> bool | None:
        """True / False when theta/pi is certified rational / irrational, None if unknown."""
        if self.pi_ratio() is not None:
            return True
        if self.irrational_flag:
            return False
        if self.kind == ALGEBRAIC_COS and self.zeta_poly is not None:
            return False  # pi_ratio already ran the cyclotomic test
        return None

    def with_assertion(self) -> "AngleSpec":
        """Mark theta/pi irrational on the caller's word."""
        if self.pi_ratio() is not None:
            raise InconsistentInput(f"{self.text()} is a rational multiple of pi")
        return replace(self, irrational_flag=True, asserted=True)

    def text(self) -> str:
        if self.kind == RATIONAL_PI:
            r = self.ratio
            return f"pi*{r.numerator}" if r.denominator == 1 else f"pi*{r.numerator}/{r.denominator}"
        if self.kind == ALGEBRAIC_COS:
            out = f"acos({self.cos_text})"
        else:
            out = f"rad:{self.radians_text}"
        if self.zeta_poly is not None:
            out += " zeta_poly=[" + ",".join(str(c) for c in self.zeta_poly.coeffs) + "]"
        return out

    def __str__(self):
        return self.text()


@functools.lru_cache(maxsize=4096)
def _cos_value(cos_text: str, prec: int) -> mpf:
    with mp.workprec(prec):
        return to_mpf(parse_expr(cos_text))


@functools.lru_cache(maxsize=4096)
def _angle_value(spec: AngleSpec, prec: int) -> mpf:
    with mp.workprec(prec):
        if spec.kind == RATIONAL_PI:
            return mp.pi * mpf(spec.ratio.numerator) / spec.ratio.denominator
        if spec.kind == ALGEBRAIC_COS:
            return mpmath.acos(max(min(_cos_value(spec.cos_text, prec), mpf(1)), mpf(-1)))
        return mpf(spec.radians_text)


@functools.lru_cache(maxsize=4096)
def _cos_sin(spec: AngleSpec, prec: int) -> tuple[mpf, mpf]:
    with mp.workprec(prec):
        if spec.kind == RATIONAL_PI:
            x = mpf(spec.ratio.numerator) / spec.ratio.denominator
            return mpmath.cospi(x), mpmath.sinpi(x)
        if spec.kind == ALGEBRAIC_COS:
            c = max(min(_cos_value(spec.cos_text, prec), mpf(1)), mpf(-1))
            return c, mpmath.sqrt(1 - c * c)
        t = mpf(spec.radians_text)
        return mpmath.cos(t), mpmath.sin(t)


@functools.lru_cache(maxsize=4096)
def _pi_ratio(spec: AngleSpec, prec: int) -> Fraction | None:
    if spec.kind == RATIONAL_PI:
        return spec.ratio
    if spec.kind == ALGEBRAIC_COS and spec.zeta_poly is not None:
        with mp.workprec(prec):
            c, s = _cos_sin(spec, prec)
            res = is_root_of_unity(spec.zeta_poly, mpc(c, s))
            if res.is_root:
                theta = _angle_value(spec, prec)
                j = int(mpmath.nint(theta * res.order / (2 * mp.pi)))
                return Fraction(2 * j, res.order)
    return None


# -- order of a rotation ------------------------------------------------------


def rotation_order_from_angle(theta: AngleSpec):
    """Order of the rotation by ``theta``: a positive int, ``INFINITE`` or None (undecidable)."""
    _check_generator_range(theta)
    ratio = theta.pi_ratio()
    if ratio is not None:
        a, b = ratio.numerator, ratio.denominator
        return 2 * b // math.gcd(a, 2 * b)
    if theta.pi_rational() is False:
        return INFINITE
    return None


def _check_generator_range(theta: AngleSpec) -> None:
    if theta.kind == RATIONAL_PI:
        if not 0 < theta.ratio < 2:
            raise DomainError(f"rotation angle {theta.text()} outside (0, 2pi)")
        return
    v = theta.value()
    if not 0 < v < 2 * mp.pi:
        raise DomainError(f"rotation angle {theta.text()} outside (0, 2pi)")


# -- parsing ------------------------------------------------------------------

_PI_RE = re.compile(r"^pi(?:\s*\*\s*(-?\d+))?(?:\s*/\s*(\d+))?$")
_ZETA_RE = re.compile(r"[\s,;]*zeta_poly\s*=\s*(\[[^\]]*\])\s*$")


def parse_angle(text: str) -> AngleSpec:
    raw = text.strip()
    zeta_poly = None
    m = _ZETA_RE.search(raw)
    if m:
        zeta_poly = PolyQ.from_string_list(m.group(1))
        raw = raw[: m.start()].strip()
    if raw.startswith("rad:"):
        value = raw[4:].strip()
        try:
            mpf(value)
            float(value)
        except (ValueError, TypeError):
            raise UnsupportedExpression(f"bad radian value {value!r}") from None
        if zeta_poly is not None:
            raise UnsupportedExpression("zeta_poly only applies to acos(...) angles")
        return AngleSpec(FLOAT, radians_text=value, source=text)
    if raw.startswith("acos(") and raw.endswith(")"):
        inner = raw[5:-1]
        parse_expr(inner)
        spec = AngleSpec.acos(inner, zeta_poly=zeta_poly)
        return replace(spec, source=text)
    if raw == "0":
        return AngleSpec(RATIONAL_PI, ratio=Fraction(0), source=text)
    m = _PI_RE.match(raw.replace(" ", ""))
    if m:
        if zeta_poly is not None:
            raise UnsupportedExpression("zeta_poly only applies to acos(...) angles")
        num = int(m.group(1)) if m.group(1) else 1
        den = int(m.group(2)) if m.group(2) else 1
        if den == 0:
            raise UnsupportedExpression("zero denominator")
        return AngleSpec(RATIONAL_PI, ratio=Fraction(num, den), source=text)
    raise UnsupportedExpression(f"cannot parse angle {text!r}")


# -- recognising angles read off numeric matrices ----------------------------


def _rational_near(x: mpf, max_den: int, digits: float) -> Fraction | None:
    guess = Fraction(mpmath.nstr(x, int(mp.prec * 0.30103) + 5, min_fixed=-mp.inf, max_fixed=mp.inf))
    cand = guess.limit_denominator(max_den)
    if abs(x - mpf(cand.numerator) / cand.denominator) < tol(digits):
        return cand
    return None


def _sqrt_text(inner: str) -> str:
    return f"sqrt({inner})"


def recognize_angle(theta: mpf, max_den: int = 720, max_doublings: int = 3, digits: float = 25) -> AngleSpec:
    """Turn a numeric angle into the most exact AngleSpec it matches.

    Tries theta = (a/b) pi with b <= ``max_den``, then a rational value of
    cos(2^k theta) for k <= ``max_doublings`` (rebuilding cos theta as a
    nested radical), and falls back to a float angle.  Matches are to
    ``digits`` decimal places at 128 bits.
    """
    theta = mpf(theta)
    ratio = _rational_near(theta / mp.pi, max_den, digits)
    if ratio is not None and ratio > 0:
        return AngleSpec(RATIONAL_PI, ratio=ratio, recognized=True)
    cosines = [mpmath.cos(theta)]
    for _ in range(max_doublings):
        cosines.append(2 * cosines[-1] ** 2 - 1)
    for k, c in enumerate(cosines):
        a = _rational_near(c, 10**4, digits)
        if a is None:
            continue
        text = str(a) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        for j in range(k - 1, -1, -1):
            text = _sqrt_text(f"(1+({text}))/2")
            if cosines[j] < 0:
                text = f"-{text}"
        if theta > mp.pi:
            # acos only reaches [0, pi]; leave reflex angles numeric
            break
        spec = AngleSpec(ALGEBRAIC_COS, cos_text=text, zeta_poly=double_angle_poly(a, k), recognized=True)
        return spec
    return AngleSpec(FLOAT, radians_text=mpmath.nstr(theta, int(mp.prec * 0.30103) + 3), recognized=True)
