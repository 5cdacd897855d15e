"""One test per acceptance criterion; each records a PASS/FAIL line for the run summary."""

import math
import time
from fractions import Fraction

import mpmath
import numpy as np
import sympy as sp
from mpmath import mp, mpc, mpf

from holonomy.bundle import (
    PLUS,
    designed_connection,
    expm_skew,
    induced_pair,
    lambda_split,
    random_rotation4,
    so4_log,
)
from holonomy.classify import classify, classify_matrices, trace_formula, trace_interval, verify_certificate
from holonomy.orbit import (
    GENERIC_POINT,
    ApproxBudget,
    Approximator,
    circle_covering_radius,
    enumerate_orbit,
    invariant_axis,
)
from holonomy.rotation import Rotation4, build_pair, random_rotation
from holonomy.scalar import PolyQ, is_root_of_unity, parse_angle

from conftest import ACCEPTANCE_LINES
from fixtures import R3, R5
from oracles import mp_trace_by_multiplication, naive_closure, np_pair

# frozen from the oracle runs
GOLDEN_COVERING_RADIUS = 0.033411846137353554  # brute-force probe scan of the depth-12 orbit
GOLDEN_APPROX_SUCCESSES = 100  # greedy run, seed 20240, epsilon 0.05
APPROX_SEED = 20240


def record(n: int, name: str, ok: bool, detail: str, started: float):
    ACCEPTANCE_LINES[n] = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail} ({time.time() - started:.1f}s)"
    print(ACCEPTANCE_LINES[n])
    assert ok, detail


def _pair(spec, extended=False):
    return build_pair(*map(parse_angle, spec), extended=extended)


def test_criterion_01_trace_formula_equivalence():
    t0 = time.time()
    assert mp.prec == 128
    rng = np.random.default_rng(1)
    worst = mpf(0)
    for _ in range(1000):
        t1, t2 = rng.uniform(1e-6, 2 * math.pi, 2)
        phi = rng.uniform(1e-6, math.pi / 2)
        specs = [parse_angle(f"rad:{float(x)!r}") for x in (t1, t2, phi)]
        got = trace_formula(*specs).value
        want = mp_trace_by_multiplication(*(s.value() for s in specs))
        worst = max(worst, abs(got - want))
    record(1, "trace formula", worst < mpf(10) ** -25, f"max deviation {mpmath.nstr(worst, 3)} over 1000 triples", t0)


def test_criterion_02_interval_fixtures():
    t0 = time.time()
    cases = [
        (("pi/3", "pi/3"), "(0, 5/4]"),
        (("pi/2", "pi/2"), "(-1, 0]"),
        (("pi/3", "pi*2/3"), "(-1, -1/4]"),
        (("pi*2/3", "pi*2/3"), "[-1, 0)"),
    ]
    bad = [f"{a},{b} -> {trace_interval(parse_angle(a), parse_angle(b)).text()}"
           for (a, b), want in cases if trace_interval(parse_angle(a), parse_angle(b)).text() != want]
    for t2 in ("pi*2/5", "pi/3", "acos(1/3)", "pi*3/4"):
        iv = trace_interval(parse_angle("pi"), parse_angle(t2))
        exact = sp.simplify(iv.hi_exact.expr - (1 - 2 * parse_angle(t2).exact_cos())) == 0
        if not (iv.lo_exact.rational == -1 and iv.lo_closed and not iv.hi_closed and exact):
            bad.append(f"pi,{t2} -> {iv.text()}")
    record(2, "trace intervals", not bad, "all five examples exact" if not bad else "; ".join(bad), t0)


def test_criterion_03_rational_trace_sweep():
    t0 = time.time()
    false_ok = oracle_ok = True
    count = 0
    for n in range(2, 51):
        for m in range(-2 * n, 2 * n + 1):
            if math.gcd(m, n) != 1:
                continue
            count += 1
            c = mpf(m) / (2 * n)
            zeta = mpc(c, mpmath.sqrt(1 - c * c))
            if is_root_of_unity(PolyQ([1, Fraction(-m, n), 1]), zeta).is_root:
                false_ok = False
            # n^k x^k = A_k x + B_k modulo n x^2 - m x + n; x^(2p) - 1 leaves remainder A x + (B - n^2p)
            a, b = 0, 1
            for k in range(1, 401):
                a, b = m * a + n * b, -n * a
                if k % 2 == 0 and a == 0 and b == n**k:
                    oracle_ok = False
    true_ok = True
    for two_cos in (-2, -1, 0, 1, 2):
        c = mpf(two_cos) / 2
        zeta = mpc(c, mpmath.sqrt(max(1 - c * c, mpf(0))))
        true_ok &= is_root_of_unity(PolyQ([1, -two_cos, 1]), zeta).is_root
    ok = false_ok and oracle_ok and true_ok
    detail = f"{count} fractions m/n rejected, remainder oracle nonzero for p <= 200, integers 2cos accepted"
    record(3, "rational traces outside S", ok, detail if ok else f"false={false_ok} oracle={oracle_ok} true={true_ok}", t0)


CRITERION_4 = [
    (("pi", "pi*1/2", "pi*1/4"), 24, "octahedral"),
    (("pi*1/2", "pi*1/2", "pi*1/2"), 24, "octahedral"),
    (("pi*2/3", "pi*2/3", "acos(1/3)"), 12, "tetrahedral"),
    (("pi", "pi*2/3", "acos(sqrt(1/3))"), 24, "octahedral"),
]


def test_criterion_04_finite_fixtures():
    t0 = time.time()
    notes = []
    for spec, order, kind in CRITERION_4:
        rep = classify(_pair(spec))
        oracle = naive_closure(np_pair(*(float(parse_angle(x).value()) for x in spec)), cap=240)
        oracle_n = None if oracle is None else len(oracle)
        if (rep.verdict, rep.order, rep.klein_type, oracle_n) != ("finite", order, kind, order):
            notes.append(f"{spec}: classified {rep.verdict} order {rep.order} {rep.klein_type}, "
                         f"brute-force oracle {oracle_n}, expected {order} {kind}")
    record(4, "finite fixtures", not notes, "all four orders and types match" if not notes else "; ".join(notes), t0)


CRITERION_5_RATIONAL = [
    ("pi*1/2", "pi*1/2", "pi*1/4"),
    ("pi", "pi*1/4", "pi*1/4"),
    ("pi*1/2", "pi*1/4", "pi*1/2"),
    ("pi*1/2", "pi*2/5", "pi*1/2"),
    ("pi*1/2", "pi*2/7", "pi*1/2"),
]
CRITERION_5_ALGEBRAIC = [
    ("pi", "pi*1/3", "acos(sqrt(1/3)) zeta_poly=[1,0,2/3,0,1]"),
    ("pi", "pi*1/3", "acos(sqrt(2/3)) zeta_poly=[1,0,-2/3,0,1]"),
    ("pi", "pi*1/3", f"acos({R3}) zeta_poly=[1,0,0,0,-2/9,0,0,0,1]"),
    ("pi", "pi*1/5", f"acos({R5}) zeta_poly=[1,0,0,0,6/5,0,0,0,1]"),
    ("pi*1/3", "pi*2/3", "acos(sqrt(5)/3) zeta_poly=[1,0,-2/9,0,1]"),
]


def test_criterion_05_dense_fixtures():
    t0 = time.time()
    notes = []
    for spec in CRITERION_5_RATIONAL + CRITERION_5_ALGEBRAIC:
        rep = classify(_pair(spec))
        check = verify_certificate(rep)
        if rep.verdict != "dense" or not check.ok:
            notes.append(f"{spec}: {rep.verdict}, verification failures {check.failures()}")
    n = len(CRITERION_5_RATIONAL) + len(CRITERION_5_ALGEBRAIC)
    record(5, "dense fixtures", not notes, f"{n} pairs dense, certificates re-verified" if not notes else "; ".join(notes), t0)


def test_criterion_06_axis_infinite_fixture():
    t0 = time.time()
    pair = _pair(("pi", "pi", "acos(1/3)"))
    rep = classify(pair)
    orb = enumerate_orbit(pair, GENERIC_POINT, 14)
    conf = orb.plane_confinement
    min_radius = min(r for _, r in orb.radius_trace)
    ok = (rep.verdict == "axis_infinite" and conf is not None and conf.level_count <= 2
          and conf.max_deviation < 1e-9 and min_radius > 0.5)
    detail = (f"verdict {rep.verdict}, {conf.level_count if conf else '?'} planes, deviation "
              f"{conf.max_deviation if conf else float('nan'):.1e}, min covering radius {min_radius:.3f}")
    record(6, "axis-infinite orbit", ok, detail, t0)


def test_criterion_07_commutative_orbit():
    t0 = time.time()
    pair = _pair(("acos(1/3)", "pi*1/2", "0"), extended=True)
    rep = classify(pair)
    axis = invariant_axis(pair)
    orb = enumerate_orbit(pair, GENERIC_POINT, 200)
    conf = orb.plane_confinement
    radius = circle_covering_radius(orb.points, axis)
    ok = (rep.verdict == "commutative_infinite" and conf is not None and conf.level_count == 1
          and conf.max_deviation < 1e-9 and radius < 0.1)
    detail = f"verdict {rep.verdict}, one circle deviation {conf.max_deviation:.1e}, circle covering radius {radius:.4f}"
    record(7, "commutative orbit", ok, detail, t0)


def test_criterion_08_density_measurement():
    t0 = time.time()
    orb = enumerate_orbit(_pair(("pi*1/2", "pi*1/2", "pi*1/4")), GENERIC_POINT, 12)
    radii = [r for _, r in orb.radius_trace]
    monotone = all(b <= a for a, b in zip(radii, radii[1:]))
    r = orb.covering_radius
    golden = abs(r - GOLDEN_COVERING_RADIUS) <= 0.1 * GOLDEN_COVERING_RADIUS
    ok = r < 0.35 and monotone and golden
    detail = f"radius {r:.6f} at depth 12 (golden {GOLDEN_COVERING_RADIUS:.6f}), monotone={monotone}"
    record(8, "covering radius", ok, detail, t0)


def test_criterion_09_lambda_split_pipeline():
    t0 = time.time()
    rng = np.random.default_rng(9)
    hom = mpf(0)
    for _ in range(200):
        a, b = random_rotation4(rng), random_rotation4(rng)
        (ap, am), (bp, bm), (cp, cm) = lambda_split(a), lambda_split(b), lambda_split(a @ b)
        hom = max(hom, cp.max_abs_diff(ap @ bp), cm.max_abs_diff(am @ bm))
    minus_i = Rotation4([[-1 if i == j else 0 for j in range(4)] for i in range(4)])
    kernel = all(x.is_identity(mpf(10) ** -20) for x in lambda_split(minus_i))
    trip = mpf(0)
    for _ in range(100):
        a = random_rotation4(rng)
        trip = max(trip, expm_skew(so4_log(a)).max_abs_diff(a))
    pair = _pair(("pi", "pi*1/2", "pi*1/4"))
    ip = induced_pair(*designed_connection(pair.c1, pair.c2, PLUS), PLUS)
    rep = classify_matrices(ip.c1, ip.c2)
    designed = (rep.verdict, rep.order) == ("finite", 24)
    ok = hom < mpf(10) ** -20 and kernel and trip < mpf(10) ** -10 and designed
    detail = (f"homomorphism {mpmath.nstr(hom, 2)}, -I kernel {kernel}, log round trip {mpmath.nstr(trip, 2)}, "
              f"designed connection {rep.verdict} {rep.order}")
    record(9, "lambda split", ok, detail, t0)


def test_criterion_10_approximation():
    t0 = time.time()
    approx = Approximator(_pair(("pi*1/2", "pi*1/2", "pi*1/4")), ApproxBudget(depth=12))
    rng = np.random.default_rng(APPROX_SEED)
    results = [approx.approximate(random_rotation(rng), 0.05) for _ in range(100)]
    wins = sum(r.distance < 0.05 for r in results)
    ok = wins >= 95 and wins == GOLDEN_APPROX_SUCCESSES
    detail = f"{wins}/100 within 0.05 (frozen {GOLDEN_APPROX_SUCCESSES}), worst {max(r.distance for r in results):.4f}"
    record(10, "approximation", ok, detail, t0)


CRITERION_11 = [
    ("pi", "pi*1/2", "pi*1/4"),
    ("pi*2/3", "pi*2/3", "acos(1/3)"),
    ("pi", "pi*2/5", f"acos({R5})"),
    ("pi", "pi", "pi*1/4"),
    ("pi*1/2", "pi*1/2", "pi*1/4"),
    ("pi*1/2", "pi*2/5", "pi*1/2"),
    ("pi", "pi*1/3", "acos(sqrt(1/3))"),
    ("pi*1/3", "pi*2/3", "acos(sqrt(5)/3)"),
    ("pi", "pi", "acos(1/3)"),
    ("pi", "acos(1/3)", "pi*1/2"),
]


def test_criterion_11_stability():
    t0 = time.time()
    rng = np.random.default_rng(11)
    changes = []
    for spec in CRITERION_11:
        pair = _pair(spec)
        base = classify(pair).verdict_class()
        if classify(pair.swapped()).verdict_class() != base:
            changes.append(f"{spec} swap")
        for trial in range(50):
            g = random_rotation(rng)
            a, b = g @ pair.c1 @ g.T, g @ pair.c2 @ g.T
            if classify_matrices(a, b).verdict_class() != base or classify_matrices(b, a).verdict_class() != base:
                changes.append(f"{spec} trial {trial}")
    detail = f"{len(CRITERION_11)} fixtures x 50 conjugations, {len(changes)} verdict changes"
    record(11, "stability", not changes, detail if not changes else detail + ": " + ", ".join(changes[:5]), t0)
