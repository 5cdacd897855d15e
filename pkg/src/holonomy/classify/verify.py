"""Mechanical re-checking of classification certificates from their witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .._precision import tol
from ..errors import HolonomyError, NoAxisError
from ..orbit.words import Word
from ..rotation import PairPresentation, Rotation3, commutes, cross, dot, element_order, rotation_angle, signed_axis_angle
from ..scalar.poly import PolyQ
from ..scalar.unity import is_root_of_unity, rational_trace_infinite_order
from . import report as R
from .closure import ExceedsCap, closure_of


@dataclass
class Verification:
    rule: str
    checks: list = field(default_factory=list)  # (name, passed, detail)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(p for _, p, _ in self.checks)

    def __bool__(self):
        return self.ok

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))
        return bool(passed)

    def failures(self):
        return [(n, d) for n, p, d in self.checks if not p]


def _trace_near(m: Rotation3, value) -> bool:
    return abs(m.trace() - value) < tol(20)


def _is_rotation(m: Rotation3) -> bool:
    try:
        m.check_special_orthogonal(20)
    except HolonomyError:
        return False
    return True


def _axis(m):
    try:
        return signed_axis_angle(m)[0]
    except NoAxisError:
        return None


def _eigenvalue(angle) -> mpc:
    return mpc(mpmath.cos(angle), mpmath.sin(angle))


def _check_irrational_evidence(v: Verification, m: Rotation3, cert: R.Certificate, prefix=""):
    """The third density condition for the element ``m``."""
    r = cert.get(prefix + "rational_trace")
    z = cert.get(prefix + "zeta_poly")
    if r is not None:
        r = Fraction(r)
        v.add("trace matches rational witness", _trace_near(m, mpf(r.numerator) / r.denominator), str(r))
        v.add("rational trace outside {-1, 0, 1, 2, 3}", rational_trace_infinite_order(r), str(r))
    elif isinstance(z, PolyQ):
        try:
            res = is_root_of_unity(z, _eigenvalue(rotation_angle(m)))
        except HolonomyError as exc:
            v.add("zeta polynomial vanishes at the eigenvalue", False, str(exc))
            return
        v.add("eigenvalue is not a root of unity", not res.is_root, f"searched n <= {res.bound}")
    elif cert.get(prefix + "asserted"):
        v.add("irrationality asserted by the caller", True, "asserted")
    else:
        v.add("irrationality evidence present", False, "no evidence witness")


def _check_word(v: Verification, pair, word_text, m: Rotation3, label):
    if pair is None:
        return
    w = Word.parse(word_text).evaluate(pair.c1, pair.c2)
    v.add(f"{label} equals its word", w.max_abs_diff(m) < tol(20), word_text)


def _check_generators(v: Verification, cert, pair):
    if pair is None:
        return
    for label, g in (("g1", pair.c1), ("g2", pair.c2)):
        m = cert.get(label)
        if isinstance(m, Rotation3):
            v.add(f"{label} witness equals the generator", m.max_abs_diff(g) < tol(20))


def _check_orders(v: Verification, cert):
    g1, g2 = cert.get("g1"), cert.get("g2")
    o1, o2 = cert.get("order_g1"), cert.get("order_g2")
    for g, o, label in ((g1, o1, "g1"), (g2, o2, "g2")):
        n = element_order(g, max(o, 1) + 1)
        v.add(f"order of {label}", n == o, f"found {n}, claimed {o}")
    return g1, g2, o1, o2


def _check_phi_irrational(v: Verification, cert, pair):
    if cert.get("phi_asserted"):
        v.add("axis angle irrationality asserted by the caller", True)
        return
    z = cert.get("phi_zeta_poly")
    if pair is None:
        v.add("axis angle evidence checkable", False, "pair required")
        return
    if isinstance(z, PolyQ):
        try:
            res = is_root_of_unity(z, _eigenvalue(pair.phi.value()))
            v.add("axis angle is an irrational multiple of pi", not res.is_root)
        except HolonomyError as exc:
            v.add("axis angle zeta polynomial vanishes", False, str(exc))
    else:
        v.add("axis angle is an irrational multiple of pi", pair.phi.pi_rational() is False)


def _axes_orthogonal(a, b) -> bool:
    x, y = _axis(a), _axis(b)
    return x is not None and y is not None and abs(dot(x, y)) < tol(20)


def verify_certificate(report, pair: PairPresentation | None = None) -> Verification:
    """Re-check a report (or bare certificate) from its witnesses.

    Words are re-evaluated against ``pair`` (default: the report's pair);
    without a pair only the matrix-level conditions are checked.
    """
    cert = report.certificate if isinstance(report, R.ClassificationReport) else report
    if pair is None and isinstance(report, R.ClassificationReport):
        pair = report.pair
    v = Verification(cert.rule)
    rule = cert.rule
    _check_generators(v, cert, pair)

    if rule in R.ABC_RULES:
        a, b = cert.get("hat_c1"), cert.get("hat_c2")
        for label, m in (("hat_c1", a), ("hat_c2", b)):
            v.add(f"{label} is a rotation", _is_rotation(m))
            v.add(f"{label}: trace avoids 3 and -1", not _trace_near(m, 3) and not _trace_near(m, -1))
            _check_word(v, pair, cert.get(label + "_word"), m, label)
        x, y = _axis(a), _axis(b)
        sep = mpf(0) if x is None or y is None else mpmath.sqrt(dot(cross(x, y), cross(x, y)))
        v.add("axes are not parallel", sep > tol(20), mpmath.nstr(sep, 8))
        which = cert.get("irrational_element")
        _check_irrational_evidence(v, a if which == "hat_c1" else b, cert)
        return v

    if rule in (R.EVEN_ORDERS, R.ORDER_4N):
        g1, g2, o1, o2 = _check_orders(v, cert)
        if rule == R.EVEN_ORDERS:
            v.add("both orders even, one above two", o1 % 2 == 0 and o2 % 2 == 0 and max(o1, o2) > 2)
            _check_phi_irrational(v, cert, pair)
        else:
            v.add("axes orthogonal", _axes_orthogonal(g1, g2))
            v.add("orders not both 4", not (o1 == 4 and o2 == 4))
            v.add(
                "one order divisible by 4, the other above two",
                any(a % 4 == 0 and b > 2 for a, b in ((o1, o2), (o2, o1))),
            )
        return v

    if rule == R.INFINITE_FINITE_ORDERS:
        g1, g2, o1, o2 = _check_orders(v, cert)
        v.add("generators do not commute", not commutes(g1, g2))
        v.add("not both half-turns", not (o1 == 2 and o2 == 2))
        m = cert.get("small_element")
        if isinstance(m, Rotation3):
            bound = 2 * mp.pi / max(5, o1, o2)
            a = rotation_angle(m)
            v.add("small element angle below every finite-group angle", tol(10) < a < bound, mpmath.nstr(a, 10))
            _check_word(v, pair, cert.get("small_element_word"), m, "small_element")
        else:
            cap = cert.get("cap")
            closed = closure_of([g1, g2], cap, letters=["g1", "g2"])
            v.add("closure exceeds the cap", isinstance(closed, ExceedsCap), f"cap {cap}")
        return v

    if rule == R.FINITE_CLOSURE or (rule == R.COMMUTATIVE and cert.get("order") is not None):
        g1, g2, o1, o2 = _check_orders(v, cert)
        n = cert.get("order")
        closed = closure_of([g1, g2], max(n, 2) + 1, letters=["g1", "g2"])
        v.add("closure has the claimed order", not isinstance(closed, ExceedsCap) and closed.order == n, f"order {n}")
        return v

    if rule == R.COMMUTATIVE:
        g1, g2 = cert.get("g1"), cert.get("g2")
        v.add("generators commute", commutes(g1, g2))
        which = cert.get("infinite_order")
        _check_irrational_evidence(v, g1 if which == "g1" else g2, cert)
        return v

    if rule in (R.HALF_TURNS_RATIONAL, R.HALF_TURNS_IRRATIONAL):
        g1, g2, prod = cert.get("g1"), cert.get("g2"), cert.get("g2.g1")
        v.add("g1 is a half-turn", _trace_near(g1, -1))
        v.add("g2 is a half-turn", _trace_near(g2, -1))
        v.add("product witness", prod.max_abs_diff(g2 @ g1) < tol(20))
        if rule == R.HALF_TURNS_RATIONAL:
            m = cert.get("order_g2.g1")
            v.add("order of the product", element_order(prod, m + 1) == m, f"claimed {m}")
        else:
            _check_phi_irrational(v, cert, pair)
        return v

    if rule == R.HALF_TURN_ORTHOGONAL:
        g1, g2 = cert.get("g1"), cert.get("g2")
        v.add("one generator is a half-turn", _trace_near(g1, -1) or _trace_near(g2, -1))
        v.add("axes orthogonal", _axes_orthogonal(g1, g2))
        if pair is None:
            v.add("other generator of infinite order", False, "pair required")
        else:
            other = pair.theta2 if _trace_near(g1, -1) else pair.theta1
            v.add("other generator of infinite order", other.pi_rational() is False)
        return v

    if rule == R.SINGLE_GENERATOR:
        v.add("generator present", isinstance(cert.get("generator"), Rotation3))
        return v

    v.add("rule has a mechanical check", False, f"{rule} is not a proof")
    return v
