"""Dense univariate polynomials over Q.

A polynomial a_0 + a_1 x + ... + a_n x^n is stored as the tuple
``(a_0, ..., a_n)`` of :class:`fractions.Fraction`, leading coefficient
nonzero; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
from mpmath import mpc, mpf


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        raise TypeError("float coefficients are not exact; pass a Fraction or a string")
    return Fraction(c)


class PolyQ:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _trim([_frac(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("PolyQ is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff=1) -> "PolyQ":
        return cls([0] * degree + [coeff])

    @classmethod
    def from_string_list(cls, text: str) -> "PolyQ":
        """Parse ``"[c0, c1, ...]"`` with integer or ``p/q`` entries."""
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"expected a bracketed coefficient list, got {text!r}")
        items = [s.strip() for s in body[1:-1].split(",") if s.strip()]
        return cls(Fraction(s) for s in items)

    # -- basic protocol -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"PolyQ({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"({mag})*{mono}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "PolyQ") -> "PolyQ":
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyQ(x + y for x, y in zip(a, b))

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other) -> "PolyQ":
        if not isinstance(other, PolyQ):
            return PolyQ(c * _frac(other) for c in self.coeffs)
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "PolyQ":
        result = PolyQ([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        q, r = PolyQ(quot), PolyQ(rem[:db] if db > 0 else [])
        return q, r

    def __floordiv__(self, other: "PolyQ") -> "PolyQ":
        return divmod(self, other)[0]

    def __mod__(self, other: "PolyQ") -> "PolyQ":
        return divmod(self, other)[1]

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        return self * (1 / self.lead)

    def compose(self, other: "PolyQ") -> "PolyQ":
        """self(other(x)) by Horner's rule."""
        out = PolyQ()
        for c in reversed(self.coeffs):
            out = out * other + PolyQ([c])
        return out

    def divides(self, other: "PolyQ") -> bool:
        return (other % self).is_zero()

    # -- evaluation -----------------------------------------------------

    def __call__(self, z):
        if isinstance(z, (Fraction, int)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * z + c
            return acc
        acc = mpc(0) if isinstance(z, mpc) or isinstance(z, complex) else mpf(0)
        for c in reversed(self.coeffs):
            acc = acc * z + mpf(c.numerator) / c.denominator
        return acc

    def coeff_norm(self) -> mpf:
        return mpmath.fsum(abs(mpf(c.numerator) / c.denominator) for c in self.coeffs)


def gcd(a: PolyQ, b: PolyQ) -> PolyQ:
    """Monic greatest common divisor (zero only when both inputs are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


@functools.lru_cache(maxsize=None)
def cyclotomic(n: int) -> PolyQ:
    """The n-th cyclotomic polynomial, built by exact division of x^n - 1."""
    if n < 1:
        raise ValueError("n must be positive")
    poly = PolyQ.monomial(n) - PolyQ([1])
    for d in range(1, n):
        if n % d == 0:
            q, r = divmod(poly, cyclotomic(d))
            assert r.is_zero()
            poly = q
    return poly


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result
