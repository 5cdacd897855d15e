"""Root-of-unity decisions for eigenvalues of rotations.

Every rotation angle theta gives the eigenvalue zeta = exp(i theta); theta/pi
is rational exactly when zeta is a root of unity.  Given any rational
polynomial vanishing at zeta we decide this by matching zeta against the
cyclotomic factors of that polynomial (exact gcd over Q) and localising
zeta numerically on the common factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy as sp
from mpmath import mpc, mpf

from .._precision import tol
from ..errors import DomainError, InconsistentInput, PrecisionError, Undecidable, UnsupportedExpression
from .expr import as_fraction, exact_simplify, parse_expr
from .poly import PolyQ, cyclotomic, euler_phi, gcd

MAX_DOUBLINGS = 4
# a common cyclotomic factor whose residue at zeta lands between these is ambiguous
_MATCH_DIGITS = 20
_SEPARATION = mpf("1e-5")


def minpoly_from_cos(a) -> PolyQ:
    """x^2 - 2a x + 1, vanishing at exp(i theta) when cos theta = a."""
    a = Fraction(a)
    if abs(a) > 1:
        raise DomainError(f"|cos| must be at most 1, got {a}")
    return PolyQ([1, -2 * a, 1])


def double_angle_poly(a: Fraction, k: int) -> PolyQ:
    """x^(2^(k+1)) - 2a x^(2^k) + 1, vanishing at exp(i theta) when cos(2^k theta) = a."""
    m = 2**k
    coeffs = [Fraction(0)] * (2 * m + 1)
    coeffs[0] = Fraction(1)
    coeffs[m] = -2 * Fraction(a)
    coeffs[2 * m] = Fraction(1)
    return PolyQ(coeffs)


def double_angle_reduce(cos_expr, max_doublings: int = MAX_DOUBLINGS) -> PolyQ:
    """Polynomial with root exp(i theta) for a nested-radical cos theta.

    Applies cos 2x = 2cos^2 x - 1 until the value becomes rational.
    """
    expr = parse_expr(cos_expr) if isinstance(cos_expr, str) else sp.sympify(cos_expr)
    value = exact_simplify(expr)
    for k in range(max_doublings + 1):
        a = as_fraction(value)
        if a is not None:
            if abs(a) > 1:
                raise DomainError(f"cosine value {a} outside [-1, 1]")
            return double_angle_poly(a, k)
        value = exact_simplify(2 * value**2 - 1)
    raise UnsupportedExpression(
        f"cos = {expr} does not become rational within {max_doublings} doublings"
    )


@dataclass(frozen=True)
class RootOfUnityResult:
    is_root: bool
    order: int | None
    bound: int

    def __bool__(self):
        return self.is_root


def search_bound(degree: int) -> int:
    return max(30, 3 * degree * degree)


def is_root_of_unity(poly: PolyQ, zeta) -> RootOfUnityResult:
    """Decide whether the root ``zeta`` of ``poly`` is a root of unity.

    ``order`` is the least n with zeta**n == 1.  Only n with
    euler_phi(n) <= deg(poly) can occur; all of them up to
    ``search_bound(deg)`` are tried, which is exhaustive.
    """
    zeta = mpc(zeta)
    if poly.degree < 1:
        raise InconsistentInput("constant polynomial has no roots")
    if abs(abs(zeta) - 1) > tol(20):
        raise InconsistentInput(f"|zeta| = {mpmath.nstr(abs(zeta), 10)} is not 1")
    scale = poly.coeff_norm()
    if abs(poly(zeta)) > tol(20) * scale:
        raise InconsistentInput("zeta is not a root of the supplied polynomial")

    bound = search_bound(poly.degree)
    for n in range(1, bound + 1):
        if euler_phi(n) > poly.degree:
            continue
        common = gcd(poly, cyclotomic(n))
        if common.degree < 1:
            continue
        residue = abs(common(zeta)) / common.coeff_norm()
        if residue < tol(_MATCH_DIGITS):
            return RootOfUnityResult(True, n, bound)
        if residue < _SEPARATION:
            raise PrecisionError(
                f"zeta sits {mpmath.nstr(residue, 5)} from the roots of Phi_{n}; raise precision"
            )
    return RootOfUnityResult(False, None, bound)


def rational_trace_infinite_order(t) -> bool:
    """True when every SO(3) element with rational trace ``t`` has infinite order."""
    t = Fraction(t)
    if not -1 <= t <= 3:
        raise DomainError(f"{t} is not the trace of a rotation")
    return t not in {-1, 0, 1, 2, 3}


@dataclass(frozen=True)
class AlgebraicReal:
    """A real algebraic number: a numeric value pinned down by a rational polynomial."""

    value: mpf
    poly: PolyQ

    def __post_init__(self):
        if abs(self.poly(mpf(self.value))) > tol(18) * self.poly.coeff_norm():
            raise InconsistentInput("value is not a root of its polynomial")


def zeta_poly_from_trace_poly(trace_poly: PolyQ) -> PolyQ:
    """Polynomial in zeta vanishing at the eigenvalues exp(+-i theta) of a rotation
    whose trace t = 1 + zeta + 1/zeta is a root of ``trace_poly``."""
    d = trace_poly.degree
    shift = PolyQ([1, 1, 1])  # zeta^2 + zeta + 1 = zeta * (t)
    out = PolyQ()
    for k, c in enumerate(trace_poly.coeffs):
        if c:
            out = out + (shift**k) * PolyQ.monomial(d - k) * c
    return out


def eigenvalue_from_trace(t) -> mpc:
    c = (mpf(t) - 1) / 2
    c = max(min(c, mpf(1)), mpf(-1))
    return mpc(c, mpmath.sqrt(1 - c * c))


def in_S(t) -> bool:
    """Whether t = 1 + 2 cos(q pi) for a rational q (t the trace of a finite-order rotation)."""
    if isinstance(t, (int, Fraction)):
        return not rational_trace_infinite_order(t)
    if isinstance(t, AlgebraicReal):
        if not -1 - tol(20) <= t.value <= 3 + tol(20):
            raise DomainError("trace outside [-1, 3]")
        zpoly = zeta_poly_from_trace_poly(t.poly)
        return is_root_of_unity(zpoly, eigenvalue_from_trace(t.value)).is_root
    raise Undecidable("membership in S needs an exact trace (Fraction or AlgebraicReal)")
