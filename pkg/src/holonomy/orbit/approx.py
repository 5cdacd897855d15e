"""Greedy approximation of a target rotation by a word in the generators."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from ..rotation import PairPresentation, Rotation3
from .enumerate import ElementTable, EmptyPool, SmallRotationPool, enumerate_elements, harvest_small_rotations
from .words import Word


@dataclass(frozen=True)
class ApproxBudget:
    depth: int = 12
    pool_threshold: float = 0.2
    max_steps: int = 60
    restarts: int = 3
    max_word_length: int = 4000


@dataclass(frozen=True)
class ApproxResult:
    word: Word
    distance: float  # Frobenius distance at working precision
    converged: bool
    matrix: Rotation3 = field(repr=False)
    steps: int = 0


class Approximator:
    """Phase 1 picks the nearest table element; phase 2 multiplies by corrections.

    Corrections are drawn from the element table and the pool of small
    rotations, on either side; the seed is restarted from the next-nearest
    table element when a phase-2 loop stalls.
    """

    def __init__(self, pair: PairPresentation, budget: ApproxBudget = ApproxBudget(), table=None, pool=None):
        self.pair = pair
        self.budget = budget
        self.table: ElementTable = table if table is not None else enumerate_elements(pair, budget.depth)
        if pool is None:
            try:
                pool = harvest_small_rotations(pair, budget.depth, budget.pool_threshold, table=self.table)
            except EmptyPool:
                pool = None
        self.pool: SmallRotationPool | None = pool
        self._table_tree = cKDTree(self.table.mats.reshape(-1, 9))
        mats = [self.table.mats]
        self._corr_words = [self.table.word(i) for i in range(len(self.table))]
        if pool is not None:
            mats.append(pool.mats)
            self._corr_words += list(pool.words)
        self._corr = np.concatenate(mats)
        self._corr_tree = cKDTree(self._corr.reshape(-1, 9))

    def _greedy(self, target: np.ndarray, seed: int, epsilon: float):
        x = self.table.mats[seed]
        word = self.table.word(seed)
        dist = float(np.linalg.norm(x - target))
        steps = 0
        while dist >= epsilon and steps < self.budget.max_steps:
            # right: ||x s - t|| = ||s - x^T t||; left: ||s x - t|| = ||s - t x^T||
            right, left = x.T @ target, target @ x.T
            dr, ir = self._corr_tree.query(right.reshape(9))
            dl, il = self._corr_tree.query(left.reshape(9))
            if dr <= dl:
                nx, nw = x @ self._corr[ir], word * self._corr_words[ir]
            else:
                nx, nw = self._corr[il] @ x, self._corr_words[il] * word
            nd = float(np.linalg.norm(nx - target))
            if nd >= dist - 1e-15 or len(nw) > self.budget.max_word_length:
                break
            x, word, dist = nx, nw, nd
            steps += 1
        return word, dist, steps

    def approximate(self, target: Rotation3, epsilon: float) -> ApproxResult:
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        t = target.to_numpy()
        k = min(self.budget.restarts + 1, len(self.table))
        _, seeds = self._table_tree.query(t.reshape(9), k=k)
        best = None
        for seed in np.atleast_1d(seeds):
            word, dist, steps = self._greedy(t, int(seed), epsilon)
            if best is None or dist < best[1]:
                best = (word, dist, steps)
            if dist < epsilon:
                break
        word, _, steps = best
        m = word.evaluate(self.pair.c1, self.pair.c2)
        d = float(m.frobenius_distance(target))
        return ApproxResult(word, d, d < epsilon, m, steps)


def approximate_element(
    pair: PairPresentation, target: Rotation3, epsilon: float, budget: ApproxBudget = ApproxBudget()
) -> ApproxResult:
    """Best word found within ``budget``; ``converged`` tells whether it is within ``epsilon``."""
    return Approximator(pair, budget).approximate(target, epsilon)
