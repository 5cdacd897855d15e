"""Constant connections on a rank-4 bundle over the torus and their induced SO(3) pairs.

A connection is given by two skew 4x4 matrices P, Q (one per coordinate
loop).  Holonomy generators are A1 = exp(2 pi P), A2 = exp(2 pi Q); flipping
the sign of P gives the opposite transport convention, which changes no
classification verdict.  The action of A on the second exterior power, in the
basis

    Omega(+-,1) = (e12 +- e34) / sqrt 2
    Omega(+-,2) = (e13 +- e42) / sqrt 2
    Omega(+-,3) = (e14 +- e23) / sqrt 2,

splits into two SO(3) blocks C+ and C-.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import mpmath
import numpy as np
from mpmath import mp, mpf

from ._precision import fmt_decimal, tol
from .errors import InconsistentInput, NoAxisError, PrecisionError
from .rotation import Rotation3, Rotation4, signed_axis_angle

PLUS = "+"
MINUS = "-"
DUALITY_LABELS = (PLUS, MINUS)

# ordered basis of the second exterior power
PAIRS = tuple(combinations(range(4), 2))  # (0,1) (0,2) (0,3) (1,2) (1,3) (2,3)
_PAIR_INDEX = {p: k for k, p in enumerate(PAIRS)}


@dataclass(frozen=True)
class SkewMatrix4:
    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(mpf(x) for x in r) for r in self.entries)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise ValueError("SkewMatrix4 needs a 4x4 matrix")
        for i in range(4):
            for j in range(4):
                if rows[i][j] != -rows[j][i]:
                    raise InconsistentInput(f"matrix is not skew at ({i + 1}, {j + 1})")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_upper(cls, values) -> "SkewMatrix4":
        """From the six entries above the diagonal, in the order 12, 13, 14, 23, 24, 34."""
        m = [[mpf(0)] * 4 for _ in range(4)]
        for (i, j), v in zip(PAIRS, values):
            m[i][j] = mpf(v)
            m[j][i] = -mpf(v)
        return cls(tuple(tuple(r) for r in m))

    @classmethod
    def zero(cls) -> "SkewMatrix4":
        return cls.from_upper([0] * 6)

    def upper(self) -> tuple:
        return tuple(self.entries[i][j] for i, j in PAIRS)

    def scaled(self, k) -> "SkewMatrix4":
        return SkewMatrix4.from_upper([mpf(k) * x for x in self.upper()])

    def to_mp(self):
        return mpmath.matrix([list(r) for r in self.entries])

    def to_json(self):
        return [[fmt_decimal(x) for x in r] for r in self.entries]


def _to_rotation4(m) -> Rotation4:
    return Rotation4([[m[i, j] for j in range(4)] for i in range(4)])


def expm_skew(L: SkewMatrix4) -> Rotation4:
    with mp.extraprec(16):
        a = mpmath.expm(L.to_mp())
    return _to_rotation4(a)


def holonomy_from_connection(P: SkewMatrix4, Q: SkewMatrix4) -> tuple[Rotation4, Rotation4]:
    """A1 = exp(2 pi P), A2 = exp(2 pi Q)."""
    out = []
    for L in (P, Q):
        a = expm_skew(L.scaled(2 * mp.pi))
        a.check_special_orthogonal(20)
        out.append(a)
    return out[0], out[1]


# -- the splitting -----------------------------------------------------------------


def _omega_basis():
    """Columns: Omega(+,1..3), Omega(-,1..3) in the basis e12, e13, e14, e23, e24, e34."""
    r = 1 / mpmath.sqrt(2)
    w = mpmath.zeros(6, 6)
    # (pair, sign) terms; e42 = -e24
    specs = [
        [((0, 1), 1), ((2, 3), 1)],
        [((0, 2), 1), ((1, 3), -1)],
        [((0, 3), 1), ((1, 2), 1)],
        [((0, 1), 1), ((2, 3), -1)],
        [((0, 2), 1), ((1, 3), 1)],
        [((0, 3), 1), ((1, 2), -1)],
    ]
    for col, terms in enumerate(specs):
        for p, s in terms:
            w[_PAIR_INDEX[p], col] = s * r
    return w


def omega_gram() -> list[list[Fraction]]:
    """Gram matrix of the Omega vectors in exact arithmetic (each coefficient is +-1/sqrt 2)."""
    coeffs = []
    for col in range(6):
        w = _omega_basis()
        coeffs.append([0 if w[k, col] == 0 else (1 if w[k, col] > 0 else -1) for k in range(6)])
    return [[Fraction(sum(a * b for a, b in zip(u, v)), 2) for v in coeffs] for u in coeffs]


def wedge_square(a) -> "mpmath.matrix":
    """Action of a 4x4 matrix on the second exterior power, basis e12 .. e34."""
    m = mpmath.zeros(6, 6)
    for col, (i, j) in enumerate(PAIRS):
        for row, (k, l) in enumerate(PAIRS):
            m[row, col] = a[k][i] * a[l][j] - a[l][i] * a[k][j]
    return m


def lambda_split(A: Rotation4) -> tuple[Rotation3, Rotation3]:
    """(C+, C-): the self-dual and anti-self-dual blocks of the action of A."""
    with mp.extraprec(16):
        w = _omega_basis()
        big = w.T * wedge_square(A.entries) * w
        off = max(abs(big[i, j]) for i in range(6) for j in range(6) if (i < 3) != (j < 3))
    if off > tol(20):
        raise InconsistentInput("matrix is not in SO(4): the exterior square does not split")
    plus = Rotation3([[big[i, j] for j in range(3)] for i in range(3)])
    minus = Rotation3([[big[i + 3, j + 3] for j in range(3)] for i in range(3)])
    for c in (plus, minus):
        c.check_special_orthogonal(20)
    return plus, minus


# -- logarithm ------------------------------------------------------------------------


def _hat(x):
    return [[0, -x[2], x[1]], [x[2], 0, -x[0]], [-x[1], x[0], 0]]


def _split_algebra(L: SkewMatrix4):
    """(x+, x-) in R^3 x R^3 for the derivative of lambda_split at L."""
    w = _omega_basis()
    # derivative of the wedge action: L ei ^ ej + ei ^ L ej
    m = mpmath.zeros(6, 6)
    e = L.entries
    for col, (i, j) in enumerate(PAIRS):
        for row, (k, l) in enumerate(PAIRS):
            m[row, col] = (e[k][i] * (1 if l == j else 0) + (1 if k == i else 0) * e[l][j]) - (
                e[l][i] * (1 if k == j else 0) + (1 if l == i else 0) * e[k][j]
            )
    x = w.T * m * w
    plus = (x[2, 1], x[0, 2], x[1, 0])
    minus = (x[5, 4], x[3, 5], x[4, 3])
    return plus + minus


_LIFT_CACHE: dict = {}


def _lift_matrix():
    key = mp.prec
    if key not in _LIFT_CACHE:
        cols = []
        for k in range(6):
            basis = [0] * 6
            basis[k] = 1
            cols.append(_split_algebra(SkewMatrix4.from_upper(basis)))
        m = mpmath.matrix([[cols[c][r] for c in range(6)] for r in range(6)])
        _LIFT_CACHE[key] = mpmath.inverse(m)
    return _LIFT_CACHE[key]


def lift_algebra(x_plus, x_minus) -> SkewMatrix4:
    """The skew 4x4 matrix whose split derivative is (x+, x-)."""
    v = mpmath.matrix(list(x_plus) + list(x_minus))
    return SkewMatrix4.from_upper(list(_lift_matrix() * v))


def so3_log_vector(c: Rotation3):
    """angle * axis, with angle in [0, pi]."""
    try:
        axis, angle = signed_axis_angle(c)
    except NoAxisError:
        return (mpf(0), mpf(0), mpf(0)), None, mpf(0)
    return tuple(angle * a for a in axis), axis, angle


def so4_log(A: Rotation4) -> SkewMatrix4:
    """A skew L with exp(L) = A, built from the logarithms of the two SO(3) blocks."""
    A.check_special_orthogonal(18)
    plus, minus = lambda_split(A)
    xp, ap, tp = so3_log_vector(plus)
    xm, _, _ = so3_log_vector(minus)
    L = lift_algebra(xp, xm)
    if expm_skew(L).max_abs_diff(A) < tol(15):
        return L
    # exp(L) = -A: move the plus block to the other sheet of the double cover
    ap = ap if ap is not None else (mpf(1), mpf(0), mpf(0))
    xp = tuple((tp - 2 * mp.pi) * a for a in ap)
    L = lift_algebra(xp, xm)
    if expm_skew(L).max_abs_diff(A) < tol(15):
        return L
    raise PrecisionError("so4_log failed to reproduce the input; retry at doubled precision")


def lift_rotation(plus: Rotation3, minus: Rotation3 | None = None) -> Rotation4:
    """An element of SO(4) with the given blocks (unique up to sign)."""
    minus = minus if minus is not None else Rotation3.identity()
    xp, _, _ = so3_log_vector(plus)
    xm, _, _ = so3_log_vector(minus)
    return expm_skew(lift_algebra(xp, xm))


def designed_connection(c1: Rotation3, c2: Rotation3, eps: str = PLUS, other=(None, None)):
    """(P, Q) whose eps-blocks of holonomy are (c1, c2); the other blocks default to the identity."""
    if eps not in DUALITY_LABELS:
        raise ValueError("eps must be '+' or '-'")
    out = []
    for c, o in zip((c1, c2), other):
        a = lift_rotation(c, o) if eps == PLUS else lift_rotation(o if o is not None else Rotation3.identity(), c)
        out.append(so4_log(a).scaled(1 / (2 * mp.pi)))
    return out[0], out[1]


# -- induced pairs ----------------------------------------------------------------------


@dataclass(frozen=True)
class InducedPair:
    eps: str
    c1: Rotation3
    c2: Rotation3
    A1: Rotation4
    A2: Rotation4

    @property
    def degenerate(self) -> bool:
        """A generator is the identity, so the group is generated by one rotation."""
        return self.c1.is_identity(tol(20)) or self.c2.is_identity(tol(20))


def induced_pair(P: SkewMatrix4, Q: SkewMatrix4, eps: str) -> InducedPair:
    if eps not in DUALITY_LABELS:
        raise ValueError("eps must be '+' or '-'")
    a1, a2 = holonomy_from_connection(P, Q)
    k = 0 if eps == PLUS else 1
    return InducedPair(eps, lambda_split(a1)[k], lambda_split(a2)[k], a1, a2)


def random_rotation4(rng: np.random.Generator) -> Rotation4:
    """x -> p x conj(q) for random unit quaternions p, q."""
    p = [mpf(float(t)) for t in rng.normal(size=4)]
    q = [mpf(float(t)) for t in rng.normal(size=4)]
    p = [t / mpmath.sqrt(mpmath.fsum(u * u for u in p)) for t in p]
    q = [t / mpmath.sqrt(mpmath.fsum(u * u for u in q)) for t in q]
    a, b, c, d = p
    left = [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
    a, b, c, d = q
    right = [[a, b, c, d], [-b, a, -d, c], [-c, d, a, -b], [-d, -c, b, a]]
    return Rotation4(left) @ Rotation4(right)


def random_skew4(rng: np.random.Generator, scale: float = 1.0) -> SkewMatrix4:
    return SkewMatrix4.from_upper([mpf(float(t)) * scale for t in rng.normal(size=6)])


# -- I/O -----------------------------------------------------------------------------------


def _exact(x) -> Fraction:
    if isinstance(x, bool):
        raise InconsistentInput("connection entries must be numbers")
    try:
        return Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError):
        raise InconsistentInput(f"bad connection entry {x!r}") from None


def parse_connection(data: dict) -> tuple[SkewMatrix4, SkewMatrix4]:
    """{"P": 4x4, "Q": 4x4} with decimal-string entries; skewness checked exactly."""
    out = []
    for name in ("P", "Q"):
        rows = data.get(name)
        if not isinstance(rows, list) or len(rows) != 4 or any(not isinstance(r, list) or len(r) != 4 for r in rows):
            raise InconsistentInput(f"{name} must be a 4x4 array")
        exact = [[_exact(x) for x in r] for r in rows]
        for i in range(4):
            for j in range(4):
                if exact[i][j] != -exact[j][i]:
                    raise InconsistentInput(f"{name} is not skew at ({i + 1}, {j + 1})")
        out.append(SkewMatrix4(tuple(tuple(mpf(x.numerator) / x.denominator for x in r) for r in exact)))
    return out[0], out[1]


def load_connection(path) -> tuple[SkewMatrix4, SkewMatrix4]:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InconsistentInput(f"connection file is not JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InconsistentInput("connection file must hold an object with keys P and Q")
    return parse_connection(data)


def connection_json(P: SkewMatrix4, Q: SkewMatrix4) -> dict:
    return {"P": P.to_json(), "Q": Q.to_json()}
