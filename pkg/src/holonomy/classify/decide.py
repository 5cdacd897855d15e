"""The decision tree assigning a generator pair to one of the four classes.

Order of evaluation:

1. commuting generators (finite, or infinite inside a circle group);
2. two half-turns, decided by whether phi/pi is rational;
3. fast density tests: a rational trace of C1 C2 outside {-1, 0, 1, 2, 3};
   the density criteria on a few short words; even generator orders with
   an irrational axis angle; an order 4n generator on orthogonal axes;
4. both rotation angles rational: breadth-first closure, where exceeding
   the cap means dense;
5. one rotation angle certified irrational;
6. anything else gets a heuristic verdict.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np
import sympy as sp
from mpmath import mp, mpc, mpf

from .._precision import tol
from ..errors import InconsistentInput, NoAxisError, PrecisionError, Undecidable
from ..orbit.words import Word
from ..rotation import (
    PairPresentation,
    Rotation3,
    canonicalize,
    commutes,
    cross,
    dot,
    element_order,
    rotation_angle,
    signed_axis_angle,
)
from ..scalar.angles import FLOAT, INFINITE, AngleSpec, recognize_angle, rotation_order_from_angle
from ..scalar.unity import (
    in_S,
    is_root_of_unity,
    rational_trace_infinite_order,
    zeta_poly_from_trace_poly,
)
from . import report as R
from .closure import ExceedsCap, closure_of, finite_closure, klein_type
from .trace import ExactReal, _cmp, trace_formula, trace_interval

DEFAULT_CAP = 240
HEURISTIC_DEPTH = 12
HEURISTIC_RADIUS = 0.35
_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ClassifyOptions:
    cap: int | None = None
    heuristic_depth: int = HEURISTIC_DEPTH
    heuristic_radius: float = HEURISTIC_RADIUS
    orbit_evidence: bool = True
    threads: int = 1


def default_cap(o1, o2) -> int:
    if isinstance(o1, int) and isinstance(o2, int):
        return max(DEFAULT_CAP, 4 * math.lcm(o1, o2))
    return DEFAULT_CAP


# -- candidate elements for the density criteria ---------------------------


@dataclass(frozen=True)
class Candidate:
    label: str
    word: Word
    matrix: Rotation3
    trace: ExactReal
    irrational: bool | None  # eigenvalue exp(i psi pi) with psi irrational
    evidence: tuple[tuple[str, object], ...] = ()


def _exact_matrices(pair: PairPresentation):
    def cs(spec):
        return spec.exact_cos(), spec.exact_sin()

    (c1, s1), (c2, s2), (cp, sp_) = cs(pair.theta1), cs(pair.theta2), cs(pair.phi)
    if None in (c1, s1, c2, s2, cp, sp_):
        return None
    a = sp.Matrix([[1, 0, 0], [0, c1, -s1], [0, s1, c1]])
    u = sp.Matrix([[cp, sp_, 0], [-sp_, cp, 0], [0, 0, 1]])
    b = u * sp.Matrix([[1, 0, 0], [0, c2, -s2], [0, s2, c2]]) * u.T
    return a, b


@functools.lru_cache(maxsize=2048)
def _exact_word_trace(theta1: AngleSpec, theta2: AngleSpec, phi: AngleSpec, letters: tuple, prec: int):
    pair = PairPresentation(theta1, theta2, phi, None, None)
    mats = _exact_matrices(pair)
    if mats is None:
        return None
    a, b = mats
    seq = (a, a.T, b, b.T)
    m = sp.eye(3)
    for x in letters:
        m = m * seq[x]
    with mp.workprec(prec):
        return ExactReal.of(m.trace())


def _trace_evidence(t: ExactReal, matrix: Rotation3):
    """(irrational?, evidence) for the non-real eigenvalues of a rotation with trace t."""
    if not t.is_exact:
        return None, ()
    r = t.rational
    if r is not None:
        if not -1 <= r <= 3:
            raise InconsistentInput(f"trace {r} outside [-1, 3]")
        return rational_trace_infinite_order(r), (("rational_trace", r),)
    alg = t.algebraic()
    zpoly = zeta_poly_from_trace_poly(alg.poly)
    try:
        res = is_root_of_unity(zpoly, _eigenvalue(matrix))
    except PrecisionError:
        return None, ()
    return (not res.is_root), (("zeta_poly", zpoly),)


def _eigenvalue(m: Rotation3) -> mpc:
    a = rotation_angle(m)
    return mpc(mpmath.cos(a), mpmath.sin(a))


def _generator_candidate(label, word, matrix, spec: AngleSpec) -> Candidate:
    rational = spec.pi_rational()
    if rational is False:
        if spec.asserted or spec.zeta_poly is None:
            ev = (("asserted", True),)
        else:
            ev = (("zeta_poly", spec.zeta_poly),)
        irr = True
    elif rational is True:
        irr, ev = False, ()
    else:
        irr, ev = None, ()
    t = spec.exact_cos()
    trace = ExactReal.of(1 + 2 * t) if t is not None else ExactReal(matrix.trace())
    return Candidate(label, word, matrix, trace, irr, ev)


def word_candidates(pair: PairPresentation) -> list[Candidate]:
    """C1, C2, C1C2, C2C1 and the commutator, with exact trace evidence where available."""
    out = [
        _generator_candidate("C1", Word.parse("g1"), pair.c1, pair.theta1),
        _generator_candidate("C2", Word.parse("g2"), pair.c2, pair.theta2),
    ]
    for label, text in (("C1C2", "g1.g2"), ("C2C1", "g2.g1"), ("commutator", "g1.g2.g1inv.g2inv")):
        w = Word.parse(text)
        m = w.evaluate(pair.c1, pair.c2)
        t = _exact_word_trace(pair.theta1, pair.theta2, pair.phi, w.letters, mp.prec)
        if t is None:
            t = ExactReal(m.trace())
            irr, ev = None, ()
        else:
            irr, ev = _trace_evidence(t, m)
        out.append(Candidate(label, w, m, t, irr, ev))
    return out


def condition_A(c: Candidate) -> bool:
    """Order infinite, or finite and more than two: the trace avoids 3 and -1."""
    return _cmp(c.trace, 3) != 0 and _cmp(c.trace, -1) != 0


def condition_B(a: Rotation3, b: Rotation3) -> bool:
    try:
        x, _ = signed_axis_angle(a)
        y, _ = signed_axis_angle(b)
    except NoAxisError:
        return False
    n = cross(x, y)
    return mpmath.sqrt(dot(n, n)) > tol(20)


@dataclass(frozen=True)
class NotEstablished:
    reason: str

    def __bool__(self):
        return False


def dense_criteria(pair: PairPresentation, cand1: Candidate, cand2: Candidate, rule: str = R.DENSE_CRITERIA):
    """Certificate when both candidates meet the three density conditions.

    Raises :class:`Undecidable` when the first two conditions hold but
    neither candidate carries exact data to settle the third.
    """
    if not (condition_A(cand1) and condition_A(cand2)):
        return NotEstablished("an element has order at most two")
    if not condition_B(cand1.matrix, cand2.matrix):
        return NotEstablished("rotation axes are parallel")
    for which, c in (("hat_c1", cand1), ("hat_c2", cand2)):
        if c.irrational:
            return _abc_certificate(rule, cand1, cand2, which, c.evidence)
    if cand1.irrational is None or cand2.irrational is None:
        raise Undecidable("no exact data to decide whether an eigenvalue angle is irrational")
    return NotEstablished("both eigenvalue angles are rational multiples of pi")


def _abc_certificate(rule, c1: Candidate, c2: Candidate, which, evidence) -> R.Certificate:
    w = (
        ("hat_c1", c1.matrix),
        ("hat_c1_word", str(c1.word)),
        ("hat_c2", c2.matrix),
        ("hat_c2_word", str(c2.word)),
        ("irrational_element", which),
    ) + tuple(evidence)
    return R.Certificate(rule, w, f"{c1.label} and {c2.label} satisfy the density conditions")


_PAIR_ORDER = (
    ("C1C2", "C2C1"),
    ("C1", "C2"),
    ("C1", "C1C2"),
    ("C2", "C1C2"),
    ("C1", "commutator"),
    ("C2", "commutator"),
    ("C1C2", "commutator"),
    ("C1", "C2C1"),
    ("C2", "C2C1"),
    ("C2C1", "commutator"),
)


def _try_word_set(pair: PairPresentation):
    cands = {c.label: c for c in word_candidates(pair)}
    undecided = False
    for a, b in _PAIR_ORDER:
        try:
            cert = dense_criteria(pair, cands[a], cands[b])
        except Undecidable:
            undecided = True
            continue
        if cert:
            return cert
    return None if not undecided else Undecidable("word set undecided")


# -- the tree -----------------------------------------------------------------


def _report(pair, verdict, cert, trace, interval, insv, **kw) -> R.ClassificationReport:
    notes = tuple(pair.notes) if pair is not None else ()
    return R.ClassificationReport(verdict, cert, trace, insv, interval, pair=pair, notes=notes + tuple(kw.pop("notes", ())), **kw)


def _in_S_of_trace(trace) -> bool | None:
    if trace.exact is None:
        return None
    r = trace.rational
    try:
        if r is not None:
            return in_S(r)
        return in_S(trace.exact.algebraic())
    except (PrecisionError, InconsistentInput, Undecidable, NotImplementedError):
        return None


def _is_pi(spec: AngleSpec) -> bool:
    return spec.pi_ratio() == 1


def _phi_evidence(phi: AngleSpec):
    if phi.asserted or phi.zeta_poly is None:
        return (("phi_asserted", True),)
    return (("phi_zeta_poly", phi.zeta_poly),)


def _order_witnesses(pair, o1, o2):
    return (("g1", pair.c1), ("g2", pair.c2), ("order_g1", o1), ("order_g2", o2))


def small_angle_witness(elements, words, bound: mpf):
    """A word whose rotation angle lies strictly inside (0, bound), from pairwise quotients."""
    g = np.array([e.to_numpy() for e in elements]).reshape(len(elements), 9)
    traces = g @ g.T  # tr(g_i g_j^T)
    cosines = np.clip((traces - 1) / 2, -1, 1)
    angles = np.arccos(cosines)
    angles[angles < 1e-6] = np.inf
    i, j = np.unravel_index(np.argmin(angles), angles.shape)
    if not np.isfinite(angles[i, j]) or angles[i, j] >= float(bound):
        return None
    w = Word.parse(words[i]) * Word.parse(words[j]).inverse()
    return w


def classify(pair: PairPresentation, options: ClassifyOptions | None = None) -> R.ClassificationReport:
    options = options or ClassifyOptions()
    t1, t2, phi = pair.theta1, pair.theta2, pair.phi
    c1, c2 = pair.c1, pair.c2
    trace = trace_formula(t1, t2, phi)
    interval = trace_interval(t1, t2)
    insv = _in_S_of_trace(trace)
    o1, o2 = rotation_order_from_angle(t1), rotation_order_from_angle(t2)
    rep = functools.partial(_report, pair, trace=trace, interval=interval, insv=insv)

    # (1) commuting generators
    if commutes(c1, c2):
        return _commutative(pair, o1, o2, rep, options)

    # (2) two half-turns
    if _is_pi(t1) and _is_pi(t2):
        return _half_turns(pair, rep)

    # (3) fast paths
    r = trace.rational
    if r is not None and rational_trace_infinite_order(r):
        cands = {c.label: c for c in word_candidates(pair)}
        cert = dense_criteria(pair, cands["C1C2"], cands["C2C1"], rule=R.RATIONAL_TRACE)
        if cert:
            return rep(R.DENSE, cert)
    found = _try_word_set(pair)
    if isinstance(found, R.Certificate):
        return rep(R.DENSE, found)
    finite1, finite2 = isinstance(o1, int), isinstance(o2, int)
    if finite1 and finite2:
        if o1 % 2 == 0 and o2 % 2 == 0 and max(o1, o2) > 2 and phi.pi_rational() is False:
            cert = R.Certificate(
                R.EVEN_ORDERS,
                _order_witnesses(pair, o1, o2) + _phi_evidence(phi),
                "both generator orders even, one above two, axis angle an irrational multiple of pi",
            )
            return rep(R.DENSE, cert)
        if phi.pi_ratio() == _HALF and not (o1 == 4 and o2 == 4):
            for a, b in ((o1, o2), (o2, o1)):
                if a % 4 == 0 and b > 2:
                    cert = R.Certificate(
                        R.ORDER_4N,
                        _order_witnesses(pair, o1, o2) + (("phi", "pi*1/2"),),
                        "one generator of order 4n, the other of finite order above two, orthogonal axes",
                    )
                    return rep(R.DENSE, cert)

    # (4) both rotation angles rational
    if finite1 and finite2:
        return _closure_branch(pair, o1, o2, rep, options)

    # (5) a certified irrational rotation angle
    if o1 == INFINITE or o2 == INFINITE:
        out = _irrational_branch(pair, o1, o2, rep)
        if out is not None:
            return out

    # (6)
    return _heuristic(pair, rep, options, "no exact rule applies to these inputs")


def _commutative(pair, o1, o2, rep, options):
    text = "commuting generators; an infinite group of this kind is dense in a circle subgroup isomorphic to SO(2)"
    if isinstance(o1, int) and isinstance(o2, int):
        closed = closure_of([pair.c1, pair.c2], 4 * math.lcm(o1, o2) + 8, letters=["g1", "g2"])
        if not isinstance(closed, ExceedsCap):
            kt, n = klein_type(closed.elements)
            cert = R.Certificate(R.COMMUTATIVE, _order_witnesses(pair, o1, o2) + (("order", n),), text)
            return rep(R.FINITE, cert, order=n, klein_type=kt)
    if o1 == INFINITE or o2 == INFINITE:
        which = "g1" if o1 == INFINITE else "g2"
        spec = pair.theta1 if o1 == INFINITE else pair.theta2
        ev = (("asserted", True),) if spec.asserted or spec.zeta_poly is None else (("zeta_poly", spec.zeta_poly),)
        cert = R.Certificate(
            R.COMMUTATIVE, (("g1", pair.c1), ("g2", pair.c2), ("infinite_order", which)) + ev, text
        )
        return rep(R.COMMUTATIVE_INFINITE, cert)
    return _heuristic(pair, rep, options, "commuting generators of undecided order")


def _half_turns(pair, rep):
    phi = pair.phi
    prod = Word.parse("g2.g1").evaluate(pair.c1, pair.c2)  # rotation by 2 phi about the common normal
    ratio = phi.pi_ratio()
    if ratio is not None:
        m = rotation_order_from_angle(AngleSpec.pi(2 * ratio))
        cert = R.Certificate(
            R.HALF_TURNS_RATIONAL,
            (("g1", pair.c1), ("g2", pair.c2), ("g2.g1", prod), ("order_g2.g1", m)),
            "two half-turns whose axes meet at a rational multiple of pi",
        )
        return rep(R.FINITE, cert, order=2 * m, klein_type="dihedral")
    if phi.pi_rational() is False:
        cert = R.Certificate(
            R.HALF_TURNS_IRRATIONAL,
            (("g1", pair.c1), ("g2", pair.c2), ("g2.g1", prod)) + _phi_evidence(phi),
            "two half-turns whose axes meet at an irrational multiple of pi; the common normal is fixed",
        )
        return rep(R.AXIS_INFINITE, cert)
    return _heuristic(pair, rep, ClassifyOptions(orbit_evidence=False), "two half-turns with undecided axis angle")


def _closure_branch(pair, o1, o2, rep, options):
    cap = options.cap or default_cap(o1, o2)
    try:
        closed = finite_closure(pair, cap)
    except PrecisionError:
        if FLOAT not in (pair.theta1.kind, pair.theta2.kind, pair.phi.kind):
            raise
        # a numeric input can sit arbitrarily close to a finite group
        return _heuristic(pair, rep, options, "closure met nearly coincident elements for a numeric input")
    if not isinstance(closed, ExceedsCap):
        kt, n = klein_type(closed.elements)
        cert = R.Certificate(
            R.FINITE_CLOSURE, _order_witnesses(pair, o1, o2) + (("order", n), ("cap", cap)), "closure terminated"
        )
        if pair.phi.kind == FLOAT:
            return R.ClassificationReport(
                R.HEURISTIC,
                R.Certificate(R.HEURISTIC_RULE, cert.witnesses, "closure terminated for a numeric axis angle"),
                rep.keywords["trace"],
                rep.keywords["insv"],
                rep.keywords["interval"],
                leaning=R.LEAN_FINITE,
                evidence=(("closure_order", n), ("klein_type", kt)),
                pair=pair,
                notes=tuple(pair.notes),
            )
        return rep(R.FINITE, cert, order=n, klein_type=kt)
    bound = 2 * mp.pi / max(5, o1, o2)
    witnesses = _order_witnesses(pair, o1, o2) + (("cap", cap),)
    w = small_angle_witness(closed.elements, closed.words, bound - mpf("1e-10"))
    if w is not None:
        m = w.evaluate(pair.c1, pair.c2)
        a = rotation_angle(m)
        if mpf("1e-10") < a < bound - mpf("1e-10"):
            witnesses += (("small_element", m), ("small_element_word", str(w)), ("angle_bound", bound))
    cert = R.Certificate(
        R.INFINITE_FINITE_ORDERS,
        witnesses,
        "finite-order generators (not both half-turns) generating more elements than any finite group they could generate",
    )
    return rep(R.DENSE, cert)


def _irrational_branch(pair, o1, o2, rep):
    phi = pair.phi
    irr_first = o1 == INFINITE
    other = pair.theta2 if irr_first else pair.theta1
    if _is_pi(other):
        if phi.pi_ratio() == _HALF:
            cert = R.Certificate(
                R.HALF_TURN_ORTHOGONAL,
                (("g1", pair.c1), ("g2", pair.c2), ("phi", "pi*1/2")),
                "a half-turn orthogonal to an infinite-order rotation",
            )
            return rep(R.AXIS_INFINITE, cert)
        if phi.value() < mp.pi / 2 - tol(20):
            cands = {c.label: c for c in word_candidates(pair)}
            if irr_first:
                hat1, hat2 = cands["C2C1"], cands["C1"]
            else:
                hat1, hat2 = cands["C1C2"], cands["C2"]
            try:
                cert = dense_criteria(pair, hat1, hat2, rule=R.HALF_TURN_OBLIQUE)
            except Undecidable:
                cert = None
            if cert:
                return rep(R.DENSE, cert)
        return None
    cands = {c.label: c for c in word_candidates(pair)}
    try:
        cert = dense_criteria(pair, cands["C1"], cands["C2"], rule=R.IRRATIONAL_GENERATOR)
    except Undecidable:
        cert = None
    if cert:
        return rep(R.DENSE, cert)
    return None


def _heuristic(pair, rep, options, reason):
    evidence = [("reason", reason)]
    leaning = R.LEAN_UNKNOWN
    try:
        closed = closure_of([pair.c1, pair.c2], options.cap or DEFAULT_CAP, letters=["g1", "g2"])
    except PrecisionError:
        closed = None
        evidence.append(("near_coincident_elements", True))
    if closed is not None and not isinstance(closed, ExceedsCap):
        leaning = R.LEAN_FINITE
        evidence.append(("closure_order", closed.order))
    elif options.orbit_evidence:
        from ..orbit.enumerate import GENERIC_POINT, enumerate_orbit

        orb = enumerate_orbit(pair, GENERIC_POINT, options.heuristic_depth, threads=options.threads)
        evidence.append(("covering_radius", orb.covering_radius))
        evidence.append(("depth", options.heuristic_depth))
        if orb.covering_radius < options.heuristic_radius:
            leaning = R.LEAN_DENSE
    cert = R.Certificate(R.HEURISTIC_RULE, (("g1", pair.c1), ("g2", pair.c2)), reason)
    kw = rep.keywords
    return R.ClassificationReport(
        R.HEURISTIC, cert, kw["trace"], kw["insv"], kw["interval"],
        leaning=leaning, evidence=tuple(evidence), pair=pair, notes=tuple(pair.notes),
    )


# -- raw matrices -------------------------------------------------------------


def classify_matrices(c1: Rotation3, c2: Rotation3, options: ClassifyOptions | None = None) -> R.ClassificationReport:
    """Classify the group generated by two arbitrary rotation matrices.

    The pair is conjugated into canonical position first; angles are
    matched against exact forms, so exact verdicts are available whenever
    the matrices encode recognisable angles.
    """
    c1.check_special_orthogonal(18)
    c2.check_special_orthogonal(18)
    ident1, ident2 = c1.is_identity(tol(20)), c2.is_identity(tol(20))
    if ident1 or ident2:
        return _single_generator(c2 if ident1 else c1, both=ident1 and ident2)
    canon = canonicalize(c1, c2)
    return classify(canon.pair, options)


def _single_generator(g: Rotation3, both: bool) -> R.ClassificationReport:
    from .trace import TraceInterval, TraceValue

    tr = g.trace()
    tv = TraceValue(tr, None)
    iv = TraceInterval(tr, tr, True, True)
    if both:
        cert = R.Certificate(R.SINGLE_GENERATOR, (("generator", g),), "both generators are the identity")
        return R.ClassificationReport(R.FINITE, cert, tv, True, iv, order=1, klein_type="cyclic")
    spec = recognize_angle(rotation_angle(g))
    order = rotation_order_from_angle(spec) if spec.kind != FLOAT else None
    text = "one generator is the identity; the group is generated by a single rotation"
    cert = R.Certificate(R.SINGLE_GENERATOR, (("generator", g), ("angle", spec.text())), text)
    if isinstance(order, int):
        return R.ClassificationReport(R.FINITE, cert, tv, True, iv, order=order, klein_type="cyclic")
    if order == INFINITE:
        return R.ClassificationReport(R.COMMUTATIVE_INFINITE, cert, tv, False, iv)
    n = element_order(g, DEFAULT_CAP)
    return R.ClassificationReport(
        R.HEURISTIC, cert, tv, None, iv,
        leaning=R.LEAN_FINITE if n else R.LEAN_UNKNOWN,
        evidence=(("numeric_order", n),),
    )
