import numpy as np
import pytest
from mpmath import mpf

from holonomy.orbit import ApproxBudget, Approximator, approximate_element
from holonomy.rotation import build_pair, random_rotation
from holonomy.scalar import parse_angle

DENSE = ("pi*1/2", "pi*1/2", "pi*1/4")


@pytest.fixture(scope="module")
def approximator():
    pair = build_pair(*map(parse_angle, DENSE))
    return Approximator(pair, ApproxBudget(depth=10, pool_threshold=0.3))


def test_words_reproduce_claimed_matrix(approximator):
    rng = np.random.default_rng(11)
    pair = approximator.pair
    for _ in range(10):
        res = approximator.approximate(random_rotation(rng), 0.1)
        again = res.word.evaluate(pair.c1, pair.c2)
        assert again.max_abs_diff(res.matrix) < mpf(10) ** -20


def test_converged_flag_matches_distance(approximator):
    rng = np.random.default_rng(5)
    for _ in range(10):
        t = random_rotation(rng)
        res = approximator.approximate(t, 0.1)
        assert res.converged == (res.distance < 0.1)
        assert abs(res.distance - float(res.matrix.frobenius_distance(t))) < 1e-12


def test_table_element_is_found_exactly(approximator):
    pair = approximator.pair
    t = approximator.table.word(123).evaluate(pair.c1, pair.c2)
    res = approximator.approximate(t, 1e-8)
    assert res.converged and res.distance < 1e-10


def test_greedy_improves_on_the_nearest_table_element(approximator):
    rng = np.random.default_rng(2)
    t = random_rotation(rng)
    flat = approximator.table.mats.reshape(-1, 9)
    nearest = np.linalg.norm(flat - t.to_numpy().reshape(9), axis=1).min()
    res = approximator.approximate(t, 1e-6)
    assert res.distance <= nearest + 1e-12


def test_finite_group_cannot_get_close():
    pair = build_pair(*map(parse_angle, ("pi", "pi*1/2", "pi*1/4")))
    t = random_rotation(np.random.default_rng(0))
    res = approximate_element(pair, t, 0.05, ApproxBudget(depth=6))
    assert not res.converged


def test_epsilon_must_be_positive(approximator):
    with pytest.raises(ValueError):
        approximator.approximate(random_rotation(np.random.default_rng(0)), 0)
