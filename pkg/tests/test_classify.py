import json

import numpy as np
import pytest
from mpmath import mp

from holonomy.classify import (
    ClassifyOptions,
    ExceedsCap,
    classify,
    classify_matrices,
    finite_closure,
    verify_certificate,
)
from holonomy.classify import report as R
from holonomy.rotation import C_matrix, Rotation3, build_pair, random_rotation
from holonomy.scalar import parse_angle

from fixtures import AXIS_INFINITE, DENSE_ALGEBRAIC, DENSE_IRRATIONAL, DENSE_RATIONAL, FINITE, R3, R5


def _pair(spec, extended=False, asserted=()):
    specs = [parse_angle(x) for x in spec]
    for i in asserted:
        specs[i] = specs[i].with_assertion()
    return build_pair(*specs, extended=extended)


@pytest.mark.parametrize("spec,expected", list(FINITE.items()))
def test_finite_fixtures(spec, expected):
    rep = classify(_pair(spec))
    assert rep.verdict == R.FINITE
    assert (rep.order, rep.klein_type) == expected
    assert verify_certificate(rep).ok


@pytest.mark.parametrize("spec", DENSE_RATIONAL + DENSE_ALGEBRAIC + DENSE_IRRATIONAL)
def test_dense_fixtures_carry_valid_certificates(spec):
    rep = classify(_pair(spec))
    assert rep.verdict == R.DENSE
    check = verify_certificate(rep)
    assert check.ok, check.failures()


@pytest.mark.parametrize(
    "spec",
    [
        ("pi", "pi*1/3", "acos(sqrt(1/3)) zeta_poly=[1,0,2/3,0,1]"),
        ("pi", "pi*1/3", "acos(sqrt(2/3)) zeta_poly=[1,0,-2/3,0,1]"),
        ("pi", "pi*1/3", f"acos({R3}) zeta_poly=[1,0,0,0,-2/9,0,0,0,1]"),
        ("pi", "pi*1/5", f"acos({R5}) zeta_poly=[1,0,0,0,6/5,0,0,0,1]"),
        ("pi*1/3", "pi*2/3", "acos(sqrt(5)/3) zeta_poly=[1,0,-2/9,0,1]"),
    ],
)
def test_supplied_zeta_polys(spec):
    rep = classify(_pair(spec))
    assert rep.verdict == R.DENSE and verify_certificate(rep).ok


@pytest.mark.parametrize("spec", AXIS_INFINITE)
def test_axis_infinite_fixtures(spec):
    rep = classify(_pair(spec))
    assert rep.verdict == R.AXIS_INFINITE
    assert verify_certificate(rep).ok


def test_commutative_infinite():
    rep = classify(_pair(("acos(1/3)", "pi*1/2", "0"), extended=True))
    assert rep.verdict == R.COMMUTATIVE_INFINITE and verify_certificate(rep).ok


def test_commutative_finite():
    rep = classify(_pair(("pi*1/3", "pi*1/2", "0"), extended=True))
    assert (rep.verdict, rep.order, rep.klein_type) == (R.FINITE, 12, "cyclic")


def test_half_turn_pair_order():
    rep = classify(_pair(("pi", "pi", "pi*1/4")))
    assert (rep.verdict, rep.order, rep.klein_type) == (R.FINITE, 8, "dihedral")


@pytest.mark.parametrize("spec", DENSE_RATIONAL)
def test_rational_dense_fixtures_outgrow_the_closure_cap(spec):
    assert isinstance(finite_closure(_pair(spec), 240), ExceedsCap)


def test_heuristic_leans_dense_and_assertion_decides():
    spec = ("pi*1/2", "rad:1.1", "rad:0.7")
    rep = classify(_pair(spec))
    assert rep.verdict == R.HEURISTIC and rep.leaning == R.LEAN_DENSE
    assert not verify_certificate(rep).ok
    decided = classify(_pair(spec, asserted=(1,)))
    assert decided.verdict == R.DENSE and verify_certificate(decided).ok


def test_float_axis_with_finite_closure_leans_finite():
    rep = classify(_pair(("pi", "pi*1/2", "rad:0.7853981633974483096156608458198757210")))
    assert rep.verdict == R.HEURISTIC and rep.leaning == R.LEAN_FINITE


def test_finite_orders_with_numeric_axis_angle_are_dense():
    rep = classify(_pair(("pi*1/2", "pi*1/2", "rad:0.7")))
    assert rep.verdict == R.DENSE and rep.certificate.rule == R.INFINITE_FINITE_ORDERS
    assert verify_certificate(rep).ok


def test_report_json_is_deterministic():
    a = classify(_pair(("pi", "pi*1/2", "pi*1/4"))).dumps()
    b = classify(_pair(("pi", "pi*1/2", "pi*1/4"))).dumps()
    assert a == b
    data = json.loads(a)
    assert data["verdict"] == "finite" and data["certificate"]["rule"] == R.FINITE_CLOSURE


def test_tampered_certificate_fails_verification():
    rep = classify(_pair(("pi*1/2", "pi*1/2", "pi*1/4")))
    wit = tuple((k, C_matrix(mp.pi) if isinstance(v, Rotation3) else v) for k, v in rep.certificate.witnesses)
    bad = R.Certificate(rep.certificate.rule, wit, rep.certificate.text)
    assert not verify_certificate(bad, rep.pair).ok


STABILITY = list(FINITE) + DENSE_RATIONAL[:3] + DENSE_ALGEBRAIC[:3] + AXIS_INFINITE


@pytest.mark.parametrize("spec", STABILITY)
def test_verdict_stable_under_swap_and_conjugation(spec):
    pair = _pair(spec)
    base = classify(pair).verdict_class()
    assert classify(pair.swapped()).verdict_class() == base
    rng = np.random.default_rng(7)
    for _ in range(3):
        g = random_rotation(rng)
        a, b = g @ pair.c1 @ g.T, g @ pair.c2 @ g.T
        assert classify_matrices(a, b).verdict_class() == base
        assert classify_matrices(b, a).verdict_class() == base


def test_identity_generators():
    ident = Rotation3.identity()
    rep = classify_matrices(ident, ident)
    assert (rep.verdict, rep.order) == (R.FINITE, 1)
    rep = classify_matrices(ident, C_matrix(2 * mp.pi / 5))
    assert (rep.verdict, rep.order) == (R.FINITE, 5)


def test_explicit_small_cap_still_decides_dense():
    rep = classify(_pair(("pi*1/2", "pi*2/5", "pi*1/2")), ClassifyOptions(cap=30))
    assert rep.verdict == R.DENSE
