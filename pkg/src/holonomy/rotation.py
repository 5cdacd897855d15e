"""SO(3) and SO(4) matrices at working precision.

The two building blocks are

    C(theta) = [[1, 0, 0], [0, cos, -sin], [0, sin, cos]]   (rotation about e1)
    U(phi)   = [[cos, sin, 0], [-sin, cos, 0], [0, 0, 1]]

and a generator pair is presented as ``C(theta1)``, ``U(phi) C(theta2) U(phi)^T``,
so the second axis is U(phi) e1 = (cos phi, -sin phi, 0) at angle phi from e1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
from mpmath import mp, mpf

from ._precision import fmt_decimal, tol
from .errors import DomainError, InconsistentInput, NoAxisError
from .scalar.angles import FLOAT, RATIONAL_PI, AngleSpec, recognize_angle

GUARD_BITS = 24


def _mat(rows) -> tuple[tuple[mpf, ...], ...]:
    return tuple(tuple(mpf(x) for x in row) for row in rows)


def _matmul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return tuple(tuple(mpmath.fsum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)) for i in range(n))


def _transpose(a):
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a[0])))


class _SquareMatrix:
    """Shared behaviour of Rotation3 / Rotation4 (immutable, mpf entries)."""

    dim = 0
    entries: tuple
    provenance: str | None

    def __matmul__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return type(self)(_matmul(self.entries, other.entries))

    @property
    def T(self):
        return type(self)(_transpose(self.entries), provenance=None)

    def inverse(self):
        return self.T

    def trace(self) -> mpf:
        return mpmath.fsum(self.entries[i][i] for i in range(self.dim))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def max_abs_diff(self, other) -> mpf:
        return max(abs(a - b) for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb))

    def frobenius_distance(self, other) -> mpf:
        return mpmath.sqrt(mpmath.fsum((a - b) ** 2 for ra, rb in zip(self.entries, other.entries) for a, b in zip(ra, rb)))

    def is_identity(self, tolerance=None) -> bool:
        tolerance = tol(20) if tolerance is None else tolerance
        return self.max_abs_diff(type(self).identity()) < tolerance

    def orthogonality_defect(self) -> mpf:
        """max |M^T M - I| entry, evaluated with guard bits."""
        with mp.extraprec(GUARD_BITS):
            g = _matmul(_transpose(self.entries), self.entries)
            return max(abs(g[i][j] - (1 if i == j else 0)) for i in range(self.dim) for j in range(self.dim))

    def det(self) -> mpf:
        return mpmath.det(mpmath.matrix(self.entries))

    def power(self, n: int):
        result, base = type(self).identity(), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries])

    def to_json(self) -> list[list[str]]:
        return [[fmt_decimal(x) for x in row] for row in self.entries]

    def check_special_orthogonal(self, digits: float = 20) -> None:
        if self.orthogonality_defect() > tol(digits) or abs(self.det() - 1) > tol(digits):
            raise InconsistentInput(f"matrix is not in SO({self.dim})")

    def __eq__(self, other):
        return type(other) is type(self) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(mpmath.nstr(x, 8) for x in r) + "]" for r in self.entries)
        tag = f" {self.provenance}" if self.provenance else ""
        return f"{type(self).__name__}([{rows}]){tag}"


class Rotation3(_SquareMatrix):
    dim = 3
    __slots__ = ("entries", "provenance")

    def __init__(self, entries, provenance: str | None = None):
        object.__setattr__(self, "entries", _mat(entries))
        object.__setattr__(self, "provenance", provenance)
        if len(self.entries) != 3 or any(len(r) != 3 for r in self.entries):
            raise ValueError("Rotation3 needs a 3x3 matrix")

    def __setattr__(self, name, value):
        raise AttributeError("Rotation3 is immutable")

    @classmethod
    def identity(cls):
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)), provenance="I")

    @classmethod
    def from_numpy(cls, m, provenance=None):
        return cls([[mpf(float(x)) for x in row] for row in m], provenance=provenance)

    def apply(self, v: Sequence) -> tuple[mpf, mpf, mpf]:
        return tuple(mpmath.fsum(self.entries[i][j] * v[j] for j in range(3)) for i in range(3))


class Rotation4(_SquareMatrix):
    dim = 4
    __slots__ = ("entries", "provenance")

    def __init__(self, entries, provenance: str | None = None):
        object.__setattr__(self, "entries", _mat(entries))
        object.__setattr__(self, "provenance", provenance)
        if len(self.entries) != 4 or any(len(r) != 4 for r in self.entries):
            raise ValueError("Rotation4 needs a 4x4 matrix")

    def __setattr__(self, name, value):
        raise AttributeError("Rotation4 is immutable")

    @classmethod
    def identity(cls):
        return cls([[1 if i == j else 0 for j in range(4)] for i in range(4)], provenance="I")

    def __neg__(self):
        return Rotation4([[-x for x in row] for row in self.entries])


# -- building blocks ------------------------------------------------------


def _cs(angle) -> tuple[mpf, mpf]:
    if isinstance(angle, AngleSpec):
        return angle.cos(), angle.sin()
    a = mpf(angle)
    return mpmath.cos(a), mpmath.sin(a)


def _label(angle) -> str:
    return angle.text() if isinstance(angle, AngleSpec) else mpmath.nstr(mpf(angle), 12)


def _check_theta(theta: AngleSpec) -> None:
    if theta.kind == RATIONAL_PI:
        ok = 0 < theta.ratio < 2
    else:
        v = theta.value()
        ok = 0 < v < 2 * mp.pi
    if not ok:
        raise DomainError(f"rotation angle {theta.text()} outside (0, 2pi)")


def _check_phi(phi: AngleSpec, extended: bool) -> None:
    if phi.kind == RATIONAL_PI:
        lo_ok = phi.ratio > 0 or (extended and phi.ratio == 0)
        ok = lo_ok and phi.ratio <= Fraction(1, 2)
    else:
        v = phi.value()
        ok = (v > 0 or (extended and v == 0)) and v <= mp.pi / 2 + tol(30)
    if not ok:
        raise DomainError(f"axis angle {phi.text()} outside (0, pi/2]")


def C_matrix(theta) -> Rotation3:
    """C(theta) without range checks (used for arbitrary angles)."""
    with mp.extraprec(GUARD_BITS):
        c, s = _cs(theta)
    return Rotation3(((1, 0, 0), (0, c, -s), (0, s, c)), provenance=f"C({_label(theta)})")


def U_matrix(phi) -> Rotation3:
    with mp.extraprec(GUARD_BITS):
        c, s = _cs(phi)
    return Rotation3(((c, s, 0), (-s, c, 0), (0, 0, 1)), provenance=f"U({_label(phi)})")


def build_C(theta: AngleSpec) -> Rotation3:
    _check_theta(theta)
    return C_matrix(theta)


def rotation_about(axis: Sequence, angle) -> Rotation3:
    """Right-handed rotation by ``angle`` about the unit vector ``axis`` (Rodrigues)."""
    with mp.extraprec(GUARD_BITS):
        x, y, z = (mpf(a) for a in axis)
        n = mpmath.sqrt(x * x + y * y + z * z)
        x, y, z = x / n, y / n, z / n
        c, s = _cs(angle)
        k = 1 - c
        rows = (
            (c + x * x * k, x * y * k - z * s, x * z * k + y * s),
            (y * x * k + z * s, c + y * y * k, y * z * k - x * s),
            (z * x * k - y * s, z * y * k + x * s, c + z * z * k),
        )
    return Rotation3(rows)


def build_conjugated_C(theta, phi) -> Rotation3:
    """U(phi) C(theta) U(phi)^T, evaluated in closed form."""
    with mp.extraprec(GUARD_BITS):
        cp, sp_ = _cs(phi)
        r = rotation_about((cp, -sp_, 0), theta)
    return Rotation3(r.entries, provenance=f"U({_label(phi)})C({_label(theta)})U({_label(phi)})^T")


@dataclass(frozen=True)
class PairPresentation:
    theta1: AngleSpec
    theta2: AngleSpec
    phi: AngleSpec
    c1: Rotation3 = field(compare=False)
    c2: Rotation3 = field(compare=False)
    extended: bool = False
    notes: tuple[str, ...] = ()

    def generators(self) -> tuple[Rotation3, Rotation3]:
        return self.c1, self.c2

    def swapped(self) -> "PairPresentation":
        return build_pair(self.theta2, self.theta1, self.phi, extended=self.extended)

    def specs(self) -> tuple[AngleSpec, AngleSpec, AngleSpec]:
        return self.theta1, self.theta2, self.phi

    def describe(self) -> str:
        return f"({self.theta1.text()}, {self.theta2.text()}, {self.phi.text()})"


def build_pair(theta1: AngleSpec, theta2: AngleSpec, phi: AngleSpec, extended: bool = False, notes=()) -> PairPresentation:
    """The pair (C(theta1), U(phi) C(theta2) U(phi)^T); phi = 0 only when ``extended``."""
    _check_theta(theta1)
    _check_theta(theta2)
    _check_phi(phi, extended)
    c1 = build_C(theta1)
    c2 = build_conjugated_C(theta2, phi)
    return PairPresentation(theta1, theta2, phi, c1, c2, extended=extended, notes=tuple(notes))


# -- interrogation ----------------------------------------------------------


def _normalize(v):
    n = mpmath.sqrt(mpmath.fsum(x * x for x in v))
    return tuple(x / n for x in v)


def _sign_convention(v):
    eps = tol(20)
    for x in v:
        if abs(x) > eps:
            return v if x > 0 else tuple(-y for y in v)
    return v


def rotation_angle(r: Rotation3) -> mpf:
    """Angle in [0, pi]; atan2 of the skew part keeps full accuracy near 0 and pi."""
    m = r.entries
    w = (m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1])
    s = mpmath.sqrt(mpmath.fsum(x * x for x in w)) / 2
    return mpmath.atan2(s, (r.trace() - 1) / 2)


def signed_axis_angle(r: Rotation3) -> tuple[tuple[mpf, mpf, mpf], mpf]:
    """Unit axis a and angle in (0, pi] with r the right-handed rotation by angle about a."""
    if r.is_identity(tol(25)):
        raise NoAxisError("the identity has no rotation axis")
    m = r.entries
    angle = rotation_angle(r)
    w = (m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1])
    s = mpmath.sin(angle)
    if s > mpf("1e-6"):
        return _normalize(w), angle
    # near a half-turn: the symmetric part is (1 - cos) a a^T + cos I
    c = mpmath.cos(angle)
    sym = [[(m[i][j] + m[j][i]) / 2 - (c if i == j else 0) for j in range(3)] for i in range(3)]
    k = max(range(3), key=lambda i: sym[i][i])
    a = _normalize(sym[k])
    # fix the sign with the (small) skew part when it carries information
    dot = mpmath.fsum(x * y for x, y in zip(a, w))
    if dot < 0:
        a = tuple(-x for x in a)
    return a, angle


def axis_and_angle(r: Rotation3) -> tuple[tuple[mpf, mpf, mpf], mpf]:
    """Unit fixed axis (first nonzero coordinate positive) and unsigned angle in [0, pi]."""
    a, angle = signed_axis_angle(r)
    return _sign_convention(a), angle


def angle_between_axes(r1: Rotation3, r2: Rotation3) -> mpf:
    """Angle in [0, pi/2] between the (unoriented) rotation axes."""
    a1, _ = signed_axis_angle(r1)
    a2, _ = signed_axis_angle(r2)
    d = abs(mpmath.fsum(x * y for x, y in zip(a1, a2)))
    return mpmath.acos(min(d, mpf(1)))


def commutes(a: Rotation3, b: Rotation3, tolerance=None) -> bool:
    tolerance = tol(20) if tolerance is None else tolerance
    return (a @ b).max_abs_diff(b @ a) < tolerance


def element_order(r: Rotation3, cap: int, tolerance=None) -> int | None:
    """Least n <= cap with r^n = I (to tolerance); None when it exceeds the cap."""
    tolerance = tol(20) if tolerance is None else tolerance
    ident = Rotation3.identity()
    power = r
    for n in range(1, cap + 1):
        if power.max_abs_diff(ident) < tolerance:
            return n
        power = power @ r
    return None


def random_rotation(rng: np.random.Generator) -> Rotation3:
    """Haar-random rotation from a random unit quaternion, built at working precision."""
    q = rng.normal(size=4)
    w, x, y, z = _normalize([mpf(float(t)) for t in q])
    return Rotation3(
        (
            (1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)),
            (2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)),
            (2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)),
        )
    )


# -- raw matrices to canonical presentation ---------------------------------


@dataclass(frozen=True)
class Canonicalization:
    pair: PairPresentation
    frame: Rotation3  # raw_1 = frame @ pair.c1 @ frame^T, likewise raw_2 (or its inverse)
    residual: mpf
    inverted: bool = False


def canonicalize(c1: Rotation3, c2: Rotation3, recognize: bool = True) -> Canonicalization:
    """Conjugate a raw generator pair into the C(theta1), U(phi)C(theta2)U(phi)^T form.

    Angles are read off numerically and, when ``recognize`` is set, matched
    against exact forms (see :func:`recognize_angle`).  The match is
    recorded in the pair's notes.  If the axes make an obtuse angle the
    second generator is replaced by its inverse, which keeps both rotation
    angles in (0, pi] without changing the generated group.
    """
    a1, t1 = signed_axis_angle(c1)
    a2, t2 = signed_axis_angle(c2)
    dot = mpmath.fsum(x * y for x, y in zip(a1, a2))
    inverted = False
    if dot < 0:
        # c2^-1 is the rotation by t2 about -a2 and generates the same group
        a2 = tuple(-x for x in a2)
        dot = -dot
        c2 = c2.T
        inverted = True
    phi = mpmath.acos(min(dot, mpf(1)))
    extended = False
    if phi < tol(20):
        phi, extended = mpf(0), True

    def spec(x):
        return recognize_angle(x) if recognize else AngleSpec(FLOAT, radians_text=mpmath.nstr(x, int(mp.prec * 0.30103) + 3))

    s1, s2 = spec(t1), spec(t2)
    sphi = AngleSpec(RATIONAL_PI, ratio=0) if extended else spec(phi)
    notes = ["recognized from matrices: " + ", ".join(s.text() for s in (s1, s2, sphi))]
    if inverted:
        notes.append("second generator replaced by its inverse")
    pair = build_pair(s1, s2, sphi, extended=extended, notes=notes)

    # frame: e1 -> a1, (cos phi, -sin phi, 0) -> a2
    r1 = a1
    if extended:
        helper = (1, 0, 0) if abs(a1[0]) < mpf("0.9") else (0, 1, 0)
        r3 = _normalize(_cross(r1, helper))
        r2 = _cross(r3, r1)
    else:
        cphi, sphi_ = mpmath.cos(phi), mpmath.sin(phi)
        r2 = _normalize(tuple((cphi * x - y) / sphi_ for x, y in zip(r1, a2)))
    r3 = _cross(r1, r2)
    frame = Rotation3(tuple(zip(r1, r2, r3)))
    residual = max(
        (frame @ pair.c1 @ frame.T).max_abs_diff(c1),
        (frame @ pair.c2 @ frame.T).max_abs_diff(c2),
    )
    return Canonicalization(pair, frame, residual, inverted)


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def cross(a, b):
    return _cross(a, b)


def dot(a, b):
    return mpmath.fsum(x * y for x, y in zip(a, b))
