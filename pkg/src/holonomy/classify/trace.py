"""The trace of C1 C2 as a quadratic in cos(phi), its range, and its inversion.

With c = cos(phi), ci = cos(theta_i), si = sin(theta_i)::

    tr(C1 C2) = (1 - c1)(1 - c2) c^2 - 2 s1 s2 c + (c1 c2 + c1 + c2)

Exact (sympy) coefficients are carried whenever both rotation angles are
exact, so interval endpoints and solutions can be reported as rationals or
radicals rather than decimals.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy as sp
from mpmath import mp, mpf

from .._precision import fmt_decimal, tol
from ..errors import DegenerateCase, DomainError
from ..scalar.angles import AngleSpec
from ..scalar.expr import as_fraction, exact_simplify, minimal_polynomial, to_mpf
from ..scalar.poly import PolyQ
from ..scalar.unity import AlgebraicReal

_TIE_DIGITS = 25


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True)
class ExactReal:
    """A real number with its numeric value and, when known, an exact sympy form."""

    value: mpf
    expr: sp.Expr | None = None

    @classmethod
    def of(cls, expr: sp.Expr | None, numeric=None) -> "ExactReal":
        if expr is None:
            return cls(mpf(numeric))
        expr = exact_simplify(expr)
        return cls(to_mpf(expr), expr)

    @property
    def is_exact(self) -> bool:
        return self.expr is not None

    @functools.cached_property
    def rational(self) -> Fraction | None:
        return None if self.expr is None else as_fraction(self.expr)

    def algebraic(self) -> AlgebraicReal | None:
        """The value pinned by its minimal polynomial over Q (exact inputs only)."""
        if self.expr is None:
            return None
        m = minimal_polynomial(self.expr)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(m.all_coeffs())]
        return AlgebraicReal(self.value, PolyQ(coeffs))

    def text(self) -> str:
        if self.rational is not None:
            return _frac_text(self.rational)
        return fmt_decimal(self.value)

    def __float__(self):
        return float(self.value)


def _cmp(a: ExactReal, b) -> int:
    """Sign of a - b; exact when both are exact and numerically indistinguishable."""
    b = b if isinstance(b, ExactReal) else ExactReal.of(sp.Rational(b) if isinstance(b, (int, Fraction)) else None, b)
    d = a.value - b.value
    if abs(d) > tol(_TIE_DIGITS):
        return 1 if d > 0 else -1
    if a.is_exact and b.is_exact:
        r = as_fraction(a.expr - b.expr)
        if r is not None:
            return (r > 0) - (r < 0)
    return 0


@dataclass(frozen=True)
class TraceValue:
    """tr(C1 C2) with its exactness metadata."""

    value: mpf
    exact: ExactReal | None

    @property
    def rational(self) -> Fraction | None:
        return None if self.exact is None else self.exact.rational

    @property
    def is_exact_rational(self) -> bool:
        return self.rational is not None

    def text(self) -> str:
        return fmt_decimal(self.value)


@dataclass(frozen=True)
class TraceQuadratic:
    """f(c) = alpha c^2 + beta c + gamma with c = cos(phi)."""

    alpha: ExactReal
    beta: ExactReal
    gamma: ExactReal

    @property
    def exact(self) -> bool:
        return self.alpha.is_exact and self.beta.is_exact and self.gamma.is_exact

    def __call__(self, c) -> mpf:
        c = mpf(c)
        return (self.alpha.value * c + self.beta.value) * c + self.gamma.value

    def exact_at(self, c_expr: sp.Expr) -> sp.Expr | None:
        if not self.exact or c_expr is None:
            return None
        return self.alpha.expr * c_expr**2 + self.beta.expr * c_expr + self.gamma.expr

    def describe(self) -> str:
        return f"({self.alpha.text()}) c^2 + ({self.beta.text()}) c + ({self.gamma.text()})"


def _exact_cs(theta: AngleSpec):
    c, s = theta.exact_cos(), theta.exact_sin()
    return c, s


@functools.lru_cache(maxsize=1024)
def _quadratic(theta1: AngleSpec, theta2: AngleSpec, prec: int) -> TraceQuadratic:
    with mp.workprec(prec):
        e1, e2 = _exact_cs(theta1), _exact_cs(theta2)
        if None not in e1 and None not in e2:
            (c1, s1), (c2, s2) = e1, e2
            return TraceQuadratic(
                ExactReal.of((1 - c1) * (1 - c2)),
                ExactReal.of(-2 * s1 * s2),
                ExactReal.of(c1 * c2 + c1 + c2),
            )
        c1, s1, c2, s2 = theta1.cos(), theta1.sin(), theta2.cos(), theta2.sin()
        return TraceQuadratic(
            ExactReal(mpf((1 - c1) * (1 - c2))),
            ExactReal(-2 * s1 * s2),
            ExactReal(c1 * c2 + c1 + c2),
        )


def trace_quadratic(theta1: AngleSpec, theta2: AngleSpec) -> TraceQuadratic:
    return _quadratic(theta1, theta2, mp.prec)


@functools.lru_cache(maxsize=1024)
def _trace(theta1: AngleSpec, theta2: AngleSpec, phi: AngleSpec, prec: int) -> TraceValue:
    with mp.workprec(prec):
        q = _quadratic(theta1, theta2, prec)
        cphi = phi.exact_cos()
        expr = q.exact_at(cphi)
        if expr is not None:
            ex = ExactReal.of(expr)
            return TraceValue(ex.value, ex)
        return TraceValue(q(phi.cos()), None)


def trace_formula(theta1: AngleSpec, theta2: AngleSpec, phi: AngleSpec) -> TraceValue:
    """tr(C1 C2) from the closed form; exact whenever all three angles are."""
    return _trace(theta1, theta2, phi, mp.prec)


# -- characteristic polynomial ----------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    trace: mpf
    quadratic: tuple  # coefficients (1, 1 - tr, 1), lowest degree first
    exact: PolyQ | None

    def roots(self):
        """The eigenvalue pair of the quadratic factor."""
        b = self.quadratic[1]
        disc = b * b - 4
        r = mpmath.sqrt(mpmath.mpc(disc))
        return (-b + r) / 2, (-b - r) / 2

    def text(self) -> str:
        q = self.exact if self.exact is not None else None
        mid = str(q) if q is not None else f"x^2 + ({mpmath.nstr(self.quadratic[1], 20)})*x + 1"
        return f"(x - 1)*({mid})"


def char_poly(trace) -> CharPoly:
    """(x - 1)(x^2 + (1 - tr) x + 1), the characteristic polynomial of a rotation."""
    exact = None
    if isinstance(trace, (int, Fraction)):
        t = Fraction(trace)
        if not -1 <= t <= 3:
            raise DomainError(f"trace {t} outside [-1, 3]")
        exact = PolyQ([1, 1 - t, 1])
        tv = mpf(t.numerator) / t.denominator
    else:
        tv = mpf(trace.value if isinstance(trace, (TraceValue, ExactReal)) else trace)
        if not -1 - tol(20) <= tv <= 3 + tol(20):
            raise DomainError(f"trace {mpmath.nstr(tv, 10)} outside [-1, 3]")
        r = trace.rational if isinstance(trace, (TraceValue, ExactReal)) else None
        if r is not None:
            exact = PolyQ([1, 1 - r, 1])
    return CharPoly(tv, (mpf(1), 1 - tv, mpf(1)), exact)


# -- range over phi in (0, pi/2] ----------------------------------------------


@dataclass(frozen=True)
class TraceInterval:
    lo: mpf
    hi: mpf
    lo_closed: bool
    hi_closed: bool
    lo_exact: ExactReal | None = None
    hi_exact: ExactReal | None = None

    def contains(self, r, slack=None) -> bool:
        slack = tol(20) if slack is None else slack
        r = mpf(r)
        lo_ok = r >= self.lo - slack if self.lo_closed else r > self.lo - slack
        hi_ok = r <= self.hi + slack if self.hi_closed else r < self.hi + slack
        return lo_ok and hi_ok

    def text(self) -> str:
        lo = self.lo_exact.text() if self.lo_exact else fmt_decimal(self.lo)
        hi = self.hi_exact.text() if self.hi_exact else fmt_decimal(self.hi)
        return f"{'[' if self.lo_closed else '('}{lo}, {hi}{']' if self.hi_closed else ')'}"

    def to_json(self) -> dict:
        return {
            "lo": fmt_decimal(self.lo),
            "hi": fmt_decimal(self.hi),
            "lo_closed": self.lo_closed,
            "hi_closed": self.hi_closed,
        }


def _eval(q: TraceQuadratic, c) -> ExactReal:
    """f at the rational/exact point c."""
    if q.exact:
        return ExactReal.of(q.exact_at(sp.sympify(c)))
    return ExactReal(q(c))


def trace_interval(theta1: AngleSpec, theta2: AngleSpec) -> TraceInterval:
    """Image of c -> f(c) over c in [0, 1): closed at c = 0, open at c = 1."""
    q = trace_quadratic(theta1, theta2)
    at0 = _eval(q, 0)
    at1 = _eval(q, 1)
    # alpha > 0 on the open range of theta, so f is a convex parabola
    if q.exact:
        vertex = ExactReal.of(-q.beta.expr / (2 * q.alpha.expr))
    else:
        vertex = ExactReal(-q.beta.value / (2 * q.alpha.value))
    if _cmp(vertex, 0) <= 0:
        return TraceInterval(at0.value, at1.value, True, False, at0, at1)
    if _cmp(vertex, 1) >= 0:
        return TraceInterval(at1.value, at0.value, False, True, at1, at0)
    vmin = _eval(q, vertex.expr) if q.exact else ExactReal(q(vertex.value))
    side = _cmp(at0, at1)
    if side >= 0:
        return TraceInterval(vmin.value, at0.value, True, True, vmin, at0)
    return TraceInterval(vmin.value, at1.value, True, False, vmin, at1)


# -- inverting the trace ------------------------------------------------------


@dataclass(frozen=True)
class PhiSolution:
    cos_phi: ExactReal
    delta: int = 1

    @property
    def phi(self) -> mpf:
        return mpmath.acos(self.cos_phi.value)

    def angle_spec(self) -> AngleSpec:
        """An acos(...) spec when the cosine is an exact radical, else a float spec."""
        ex = self.cos_phi.expr
        if ex is not None:
            text = sp.sstr(ex).replace("**", "^")
            if "^" not in text and "I" not in text and all(ch in "0123456789+-*/()sqrt " for ch in text):
                return AngleSpec.acos(text)
        return AngleSpec.radians(mpmath.nstr(self.phi, int(mp.prec * 0.30103)))


def _to_exact(r) -> ExactReal:
    if isinstance(r, ExactReal):
        return r
    if isinstance(r, TraceValue):
        return r.exact if r.exact is not None else ExactReal(r.value)
    if isinstance(r, (int, Fraction)):
        return ExactReal.of(sp.Rational(Fraction(r).numerator, Fraction(r).denominator))
    if isinstance(r, sp.Expr):
        return ExactReal.of(r)
    return ExactReal(mpf(r))


def _in_range(c: ExactReal) -> bool:
    return _cmp(c, 0) >= 0 and _cmp(c, 1) < 0


def solve_phi_for_trace(theta1: AngleSpec, theta2: AngleSpec, r) -> list[PhiSolution]:
    """All phi in (0, pi/2] with f(phi) = r, ordered by increasing cos(phi)."""
    q = trace_quadratic(theta1, theta2)
    r = _to_exact(r)
    exact = q.exact and r.is_exact
    if exact:
        a, b, c = q.alpha.expr, q.beta.expr, q.gamma.expr - r.expr
        disc = ExactReal.of(b * b - 4 * a * c)
    else:
        a, b, c = q.alpha.value, q.beta.value, q.gamma.value - r.value
        disc = ExactReal(b * b - 4 * a * c)
    sign = _cmp(disc, 0)
    if sign < 0:
        return []
    if exact:
        roots = [ExactReal.of(-b / (2 * a))] if sign == 0 else [
            ExactReal.of((-b - sp.sqrt(disc.expr)) / (2 * a)),
            ExactReal.of((-b + sp.sqrt(disc.expr)) / (2 * a)),
        ]
    else:
        d = mpmath.sqrt(max(disc.value, mpf(0)))
        roots = [ExactReal(-b / (2 * a))] if sign == 0 else [
            ExactReal((-b - d) / (2 * a)),
            ExactReal((-b + d) / (2 * a)),
        ]
    out = [PhiSolution(x) for x in roots if _in_range(x)]
    return sorted(out, key=lambda s: s.cos_phi.value)


def _cot_half(theta: AngleSpec) -> sp.Expr | None:
    c, s = theta.exact_cos(), theta.exact_sin()
    if c is None:
        return None
    return (1 + c) / s  # cot(x/2) = (1 + cos x) / sin x


def phi_for_trace_target(theta1: AngleSpec, theta2: AngleSpec, q) -> list[PhiSolution]:
    """Solutions phi of tr(C1 C2) = 1 + 2 cos(q pi), q rational in [0, 1].

    For q = 1 the closed form cos(phi) = delta cot(theta1/2) cot(theta2/2) is
    used; both delta = +1 and delta = -1 are returned when they land in
    [0, 1).  The delta = -1 branch solves the problem for the pair with the
    second generator inverted.
    """
    q = Fraction(q)
    if not 0 <= q <= 1:
        raise DomainError("q must lie in [0, 1]")
    if q == 1:
        for t in (theta1, theta2):
            if t.pi_ratio() == 1:
                raise DegenerateCase("theta = pi forces phi = pi/2 when tr(C1 C2) = -1")
        k1, k2 = _cot_half(theta1), _cot_half(theta2)
        out = []
        for delta in (1, -1):
            if k1 is not None and k2 is not None:
                c = ExactReal.of(delta * k1 * k2)
            else:
                t1, t2 = theta1.value(), theta2.value()
                c = ExactReal(delta * mpmath.cot(t1 / 2) * mpmath.cot(t2 / 2))
            if _in_range(c):
                out.append(PhiSolution(c, delta))
        return out
    r = 1 + 2 * sp.cos(sp.pi * sp.Rational(q.numerator, q.denominator))
    return solve_phi_for_trace(theta1, theta2, r)
