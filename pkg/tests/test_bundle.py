import json

import numpy as np
import pytest
from mpmath import mp, mpf

from holonomy.bundle import (
    MINUS,
    PLUS,
    SkewMatrix4,
    connection_json,
    designed_connection,
    expm_skew,
    holonomy_from_connection,
    induced_pair,
    lambda_split,
    lift_rotation,
    load_connection,
    omega_gram,
    parse_connection,
    random_rotation4,
    random_skew4,
    so4_log,
)
from holonomy.classify import classify_matrices
from holonomy.errors import InconsistentInput
from holonomy.rotation import Rotation3, Rotation4, build_pair, random_rotation, signed_axis_angle
from holonomy.scalar import parse_angle

from oracles import block_rotation4, split_by_bivectors

TIGHT = mpf(10) ** -20


def _close(a, b, t=TIGHT):
    return a.max_abs_diff(b) < t


def test_split_matches_bivector_oracle():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a = random_rotation4(rng)
        plus, minus = lambda_split(a)
        op, om = split_by_bivectors(a.entries)
        assert plus.max_abs_diff(Rotation3(op.tolist())) < TIGHT
        assert minus.max_abs_diff(Rotation3(om.tolist())) < TIGHT


def test_split_is_a_homomorphism():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a, b = random_rotation4(rng), random_rotation4(rng)
        (ap, am), (bp, bm), (cp, cm) = lambda_split(a), lambda_split(b), lambda_split(a @ b)
        assert _close(cp, ap @ bp) and _close(cm, am @ bm)


def test_kernel_is_plus_minus_identity():
    ident = Rotation3.identity()
    for a in (Rotation4.identity(), Rotation4([[-1 if i == j else 0 for j in range(4)] for i in range(4)])):
        plus, minus = lambda_split(a)
        assert _close(plus, ident) and _close(minus, ident)


@pytest.mark.slow
def test_no_other_kernel_elements():
    rng = np.random.default_rng(3)
    ident = Rotation3.identity()
    closest = min(
        max(float(p.max_abs_diff(ident)), float(m.max_abs_diff(ident)))
        for p, m in (lambda_split(random_rotation4(rng)) for _ in range(10**4))
    )
    assert closest > 1e-3


def test_omega_basis_is_orthonormal():
    g = omega_gram()
    assert all(g[i][j] == (1 if i == j else 0) for i in range(6) for j in range(6))


@pytest.mark.parametrize("alpha", [mp.pi / 3, mpf("0.7"), mp.pi])
def test_plane_rotation_blocks(alpha):
    a = Rotation4(block_rotation4(alpha, 0).tolist())
    for block in lambda_split(a):
        axis, angle = signed_axis_angle(block)
        assert abs(angle - alpha) < TIGHT
        assert abs(abs(axis[0]) - 1) < TIGHT


def test_exponential_of_plane_generator():
    alpha = mpf("0.9")
    P = SkewMatrix4.from_upper([-alpha / (2 * mp.pi), 0, 0, 0, 0, 0])
    A, _ = holonomy_from_connection(P, SkewMatrix4.zero())
    assert _close(A, Rotation4(block_rotation4(alpha, 0).tolist()))


def test_exp_inverse_and_zero():
    rng = np.random.default_rng(4)
    for _ in range(10):
        P = random_skew4(rng)
        assert _close(expm_skew(P.scaled(2 * mp.pi)) @ expm_skew(P.scaled(-2 * mp.pi)), Rotation4.identity())
    assert _close(expm_skew(SkewMatrix4.zero()), Rotation4.identity())


def test_log_round_trip():
    rng = np.random.default_rng(5)
    for _ in range(30):
        a = random_rotation4(rng)
        assert expm_skew(so4_log(a)).max_abs_diff(a) < mpf(10) ** -10
    assert so4_log(Rotation4.identity()).upper() == SkewMatrix4.zero().upper()


def test_log_of_block_rotation():
    a = Rotation4(block_rotation4(mp.pi / 3, mp.pi / 5).tolist())
    L = so4_log(a).entries
    assert abs(L[1][0] - mp.pi / 3) < TIGHT and abs(L[3][2] - mp.pi / 5) < TIGHT
    assert max(abs(L[i][j]) for i, j in ((0, 2), (0, 3), (1, 2), (1, 3))) < TIGHT


def test_minus_identity_logarithm():
    a = Rotation4([[-1 if i == j else 0 for j in range(4)] for i in range(4)])
    assert expm_skew(so4_log(a)).max_abs_diff(a) < mpf(10) ** -10


def test_lift_has_requested_blocks():
    rng = np.random.default_rng(6)
    p, m = random_rotation(rng), random_rotation(rng)
    plus, minus = lambda_split(lift_rotation(p, m))
    assert _close(plus, p) and _close(minus, m)


@pytest.mark.parametrize("eps", [PLUS, MINUS])
def test_designed_connection_reproduces_finite_fixture(eps):
    pair = build_pair(*map(parse_angle, ("pi", "pi*1/2", "pi*1/4")))
    P, Q = designed_connection(pair.c1, pair.c2, eps)
    ip = induced_pair(P, Q, eps)
    assert _close(ip.c1, pair.c1) and _close(ip.c2, pair.c2)
    rep = classify_matrices(ip.c1, ip.c2)
    assert (rep.verdict, rep.order) == ("finite", 24)
    other = induced_pair(P, Q, MINUS if eps == PLUS else PLUS)
    assert other.degenerate


def test_induced_pairs_commute_with_products():
    rng = np.random.default_rng(7)
    P, Q = random_skew4(rng), random_skew4(rng)
    a1, a2 = holonomy_from_connection(P, Q)
    for k, eps in enumerate((PLUS, MINUS)):
        ip = induced_pair(P, Q, eps)
        assert _close(lambda_split(a1 @ a2)[k], ip.c1 @ ip.c2)


def test_zero_connection_is_degenerate():
    z = SkewMatrix4.zero()
    assert induced_pair(z, z, PLUS).degenerate and induced_pair(z, z, MINUS).degenerate


def test_skew_checked_on_construction_and_load(tmp_path):
    with pytest.raises(InconsistentInput):
        SkewMatrix4(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)))
    good = {"P": [["0", "0.25", "0", "0"], ["-0.25", "0", "0", "0"], ["0", "0", "0", "0"], ["0", "0", "0", "0"]],
            "Q": [["0"] * 4 for _ in range(4)]}
    P, Q = parse_connection(good)
    assert P.entries[0][1] == mpf("0.25")
    bad = json.loads(json.dumps(good))
    bad["P"][1][0] = "-0.2500000001"
    with pytest.raises(InconsistentInput):
        parse_connection(bad)
    with pytest.raises(InconsistentInput):
        parse_connection({"P": [[0]], "Q": good["Q"]})
    path = tmp_path / "c.json"
    path.write_text("not json")
    with pytest.raises(InconsistentInput):
        load_connection(path)
    path.write_text(json.dumps(connection_json(P, Q)))
    P2, _ = load_connection(path)
    assert P2.upper() == P.upper()


def test_shipped_connection_file():
    P, Q = load_connection("tests/data/octahedral_connection.json")
    ip = induced_pair(P, Q, PLUS)
    assert classify_matrices(ip.c1, ip.c2).order == 24
