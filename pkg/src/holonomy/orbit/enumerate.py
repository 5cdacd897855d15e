"""Breadth-first enumeration of orbits and group elements, and sphere coverage.

Enumeration runs in float64 with KD-tree deduplication; every point or
element keeps the word that produced it, so any of them can be re-evaluated
at full working precision (see :meth:`OrbitReport.point_mp`).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.spatial import cKDTree

from ..errors import BudgetError
from ..rotation import PairPresentation, Rotation3, signed_axis_angle
from .words import NAMES, Word, generator_stack, inverse_letter

DEDUP_TOL = 1e-12
ELEMENT_DEDUP_TOL = 1e-10
N_PROBES = 4096
DEFAULT_BUDGET = 3_000_000

GENERIC_POINT = np.array([0.3141592653589793, 0.5772156649015329, 0.7071067811865476])
GENERIC_POINT = GENERIC_POINT / np.linalg.norm(GENERIC_POINT)


def fibonacci_sphere(n: int = N_PROBES) -> np.ndarray:
    i = np.arange(n)
    z = 1 - (2 * i + 1) / n
    r = np.sqrt(1 - z * z)
    t = i * math.pi * (3 - math.sqrt(5))
    return np.stack([r * np.cos(t), r * np.sin(t), z], axis=1)


_PROBES = {}


def _probes(n):
    if n not in _PROBES:
        _PROBES[n] = fibonacci_sphere(n)
    return _PROBES[n]


def covering_radius(points: np.ndarray, probes: np.ndarray | None = None, threads: int = 1) -> float:
    """Largest geodesic distance from a probe direction to its nearest point."""
    probes = _probes(N_PROBES) if probes is None else probes
    d, _ = cKDTree(points).query(probes, k=1, workers=threads)
    return float(2 * np.arcsin(min(1.0, float(d.max()) / 2)))


# -- generic breadth-first engine ------------------------------------------------


@dataclass
class _Tree:
    """Nodes reached by reduced words; node 0 is the empty word."""

    values: np.ndarray  # (n, dim)
    parent: np.ndarray
    letter: np.ndarray  # first letter of the node's word, -1 for the root
    layer_ends: list  # layer_ends[d] = number of nodes of word length <= d

    def word(self, i: int) -> Word:
        letters = []
        while i > 0:
            letters.append(int(self.letter[i]))
            i = int(self.parent[i])
        return Word(tuple(letters))

    def words(self, upto: int | None = None) -> list[str]:
        n = len(self.values) if upto is None else upto
        out = ["e"] * n
        for i in range(1, n):
            p = int(self.parent[i])
            a = NAMES[int(self.letter[i])]
            out[i] = a if p == 0 else f"{a}.{out[p]}"
        return out


def _bfs(apply, start: np.ndarray, depth: int, tol: float, budget: int, threads: int, on_layer=None):
    values = [start[None, :]]
    parent = [np.array([-1])]
    letter = [np.array([-1])]
    total = 1
    layer_ends = [1]
    front_idx = np.array([0])
    front_val = start[None, :]
    front_letter = np.array([-1])
    tree = cKDTree(start[None, :])
    for d in range(1, depth + 1):
        cand_val, cand_par, cand_let = [], [], []
        for a in range(4):
            # prepend a; skip when it would cancel the word's first letter
            keep = front_letter != inverse_letter(a)
            if not keep.any():
                continue
            cand_val.append(apply(a, front_val[keep]))
            cand_par.append(front_idx[keep])
            cand_let.append(np.full(int(keep.sum()), a))
        if not cand_val:
            layer_ends.append(total)
            break
        cv = np.concatenate(cand_val)
        cp = np.concatenate(cand_par)
        cl = np.concatenate(cand_let)
        dist, _ = tree.query(cv, k=1, distance_upper_bound=tol, workers=threads)
        fresh = ~np.isfinite(dist)
        if fresh.any():
            sub = np.nonzero(fresh)[0]
            pairs = cKDTree(cv[sub]).query_pairs(tol, output_type="ndarray")
            if len(pairs):
                dup = np.zeros(len(sub), bool)
                dup[pairs[:, 1]] = True
                fresh[sub[dup]] = False
        nv, npar, nl = cv[fresh], cp[fresh], cl[fresh]
        front_idx = np.arange(total, total + len(nv))
        total += len(nv)
        values.append(nv)
        parent.append(npar)
        letter.append(nl)
        layer_ends.append(total)
        front_val, front_letter = nv, nl
        if total > budget:
            t = _Tree(np.concatenate(values), np.concatenate(parent), np.concatenate(letter), layer_ends)
            raise BudgetError(f"enumeration exceeded {budget} nodes at depth {d}", partial=t)
        if len(nv):
            tree = cKDTree(np.concatenate(values))
        if on_layer is not None:
            on_layer(d, np.concatenate(values))
        if not len(nv):
            # closed: remaining layers are empty
            layer_ends.extend([total] * (depth - d))
            break
    return _Tree(np.concatenate(values), np.concatenate(parent), np.concatenate(letter), layer_ends)


def _point_apply(gens):
    return lambda a, pts: pts @ gens[a].T


def _element_apply(gens):
    def apply(a, flat):
        m = flat.reshape(-1, 3, 3)
        return np.einsum("ij,njk->nik", gens[a], m).reshape(-1, 9)

    return apply


# -- orbits -------------------------------------------------------------------------


@dataclass(frozen=True)
class PlaneConfinement:
    normal: np.ndarray
    max_deviation: float
    level_count: int
    levels: tuple[float, ...]
    confined: bool


@dataclass
class OrbitReport:
    base_point: np.ndarray
    points: np.ndarray
    depth: int
    covering_radius: float
    radius_trace: list
    plane_confinement: PlaneConfinement | None
    tree: _Tree = field(repr=False)
    pair: PairPresentation = field(repr=False, default=None)

    @property
    def words(self) -> list[str]:
        return self.tree.words()

    def word(self, i: int) -> Word:
        return self.tree.word(i)

    def point_mp(self, i: int):
        """Point i recomputed from its word at working precision."""
        m = self.word(i).evaluate(self.pair.c1, self.pair.c2)
        p = [mpmath.mpf(float(x)) for x in self.base_point]
        norm = mpmath.sqrt(mpmath.fsum(x * x for x in p))
        return m.apply(tuple(x / norm for x in p))

    def points_at_depth(self, d: int) -> np.ndarray:
        d = min(d, len(self.tree.layer_ends) - 1)
        return self.points[: self.tree.layer_ends[d]]


def invariant_axis(pair: PairPresentation, depth: int = 2, tolerance: float = 1e-10):
    """A unit vector v with C v = +-v for every group element C, or None."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    g1, g2 = pair.c1.to_numpy(), pair.c2.to_numpy()
    cands = []
    for g in (pair.c1, pair.c2):
        try:
            cands.append(np.array([float(x) for x in signed_axis_angle(g)[0]]))
        except Exception:
            pass
    if len(cands) == 2:
        n = np.cross(cands[0], cands[1])
        if np.linalg.norm(n) > 1e-9:
            cands.append(n / np.linalg.norm(n))
    for v in cands:
        if all(min(np.linalg.norm(g @ v - v), np.linalg.norm(g @ v + v)) < tolerance for g in (g1, g2)):
            # check on the enumerated elements as well
            tree = _bfs(_element_apply(generator_stack(pair.c1, pair.c2)), np.eye(3).reshape(9), min(depth, 6),
                        ELEMENT_DEDUP_TOL, 200_000, 1)
            mats = tree.values.reshape(-1, 3, 3)
            img = mats @ v
            dev = np.minimum(np.linalg.norm(img - v, axis=1), np.linalg.norm(img + v, axis=1))
            if dev.max() < tolerance:
                return _sign_fix(v)
    return None


def _sign_fix(v):
    for x in v:
        if abs(x) > 1e-12:
            return v if x > 0 else -v
    return v


def plane_confinement(points: np.ndarray, normal: np.ndarray, gap: float = 1e-6, max_dev: float = 1e-9):
    """Cluster the heights <x, normal>; confined when at most two levels, each flat to ``max_dev``."""
    h = np.sort(points @ normal)
    breaks = np.nonzero(np.diff(h) > gap)[0]
    groups = np.split(h, breaks + 1)
    dev = max(float(np.max(np.abs(g - g.mean()))) for g in groups)
    levels = tuple(float(g.mean()) for g in groups)
    return PlaneConfinement(normal, dev, len(groups), levels, len(groups) <= 2 and dev < max_dev)


def enumerate_orbit(
    pair: PairPresentation,
    p,
    depth: int,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
    probes: int = N_PROBES,
) -> OrbitReport:
    """All distinct C p for reduced words C of length <= depth."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    p = np.asarray(p, dtype=float)
    if abs(np.linalg.norm(p) - 1) > 1e-12:
        raise ValueError("base point must be a unit vector")
    gens = generator_stack(pair.c1, pair.c2)
    probe_pts = _probes(probes)
    trace = []

    def on_layer(d, pts):
        trace.append((d, covering_radius(pts, probe_pts, threads)))

    try:
        tree = _bfs(_point_apply(gens), p, depth, DEDUP_TOL, budget, threads, on_layer)
    except BudgetError as exc:
        t = exc.partial
        partial = OrbitReport(p, t.values, depth, covering_radius(t.values, probe_pts, threads), trace, None, t, pair)
        raise BudgetError(str(exc), partial=partial) from None
    # closed orbits stop early; the radius stays put for the remaining depths
    last = trace[-1][1] if trace else covering_radius(tree.values, probe_pts, threads)
    while len(trace) < depth:
        trace.append((len(trace) + 1, last))
    axis = invariant_axis(pair, 2)
    conf = plane_confinement(tree.values, axis) if axis is not None else None
    return OrbitReport(p, tree.values, depth, trace[-1][1], trace, conf, tree, pair)


def circle_covering_radius(points: np.ndarray, axis: np.ndarray) -> float:
    """Half the largest angular gap of the points around ``axis`` (radians of the circle)."""
    axis = axis / np.linalg.norm(axis)
    helper = np.array([1.0, 0, 0]) if abs(axis[0]) < 0.9 else np.array([0, 1.0, 0])
    e1 = np.cross(axis, helper)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(axis, e1)
    ang = np.sort(np.mod(np.arctan2(points @ e2, points @ e1), 2 * math.pi))
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    return float(gaps.max() / 2)


def write_points_csv(report: OrbitReport, path) -> None:
    words = report.words
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "y", "z", "word"])
        for pt, word in zip(report.points, words):
            w.writerow([f"{pt[0]:.17g}", f"{pt[1]:.17g}", f"{pt[2]:.17g}", word])


def write_radius_csv(report: OrbitReport, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["depth", "covering_radius"])
        for d, r in report.radius_trace:
            w.writerow([d, f"{r:.17g}"])


# -- element tables -------------------------------------------------------------------


@dataclass
class ElementTable:
    mats: np.ndarray  # (n, 3, 3)
    tree: _Tree = field(repr=False)
    pair: PairPresentation = field(repr=False, default=None)

    def __len__(self):
        return len(self.mats)

    def word(self, i: int) -> Word:
        return self.tree.word(i)


def enumerate_elements(pair: PairPresentation, depth: int, budget: int = DEFAULT_BUDGET, threads: int = 1) -> ElementTable:
    gens = generator_stack(pair.c1, pair.c2)
    tree = _bfs(_element_apply(gens), np.eye(3).reshape(9), depth, ELEMENT_DEDUP_TOL, budget, threads)
    return ElementTable(tree.values.reshape(-1, 3, 3), tree, pair)


# -- small rotations ---------------------------------------------------------------------


class EmptyPool(BudgetError):
    """No product of enumerated elements fell below the angle threshold."""


@dataclass
class SmallRotationPool:
    mats: np.ndarray
    words: list
    angles: np.ndarray
    threshold: float
    pair: PairPresentation = field(repr=False, default=None)

    def __len__(self):
        return len(self.words)

    @property
    def entries(self):
        return list(zip(self.mats, self.words, self.angles))

    def rotation(self, i: int) -> Rotation3:
        return self.words[i].evaluate(self.pair.c1, self.pair.c2)


def _angles(mats: np.ndarray) -> np.ndarray:
    tr = np.trace(mats, axis1=1, axis2=2)
    return np.arccos(np.clip((tr - 1) / 2, -1, 1))


def harvest_small_rotations(
    pair: PairPresentation,
    depth: int,
    threshold: float,
    table: ElementTable | None = None,
    neighbours: int = 8,
    max_pool: int = 50_000,
    threads: int = 1,
) -> SmallRotationPool:
    """Quotients C_i C_j^-1 of nearby enumerated elements with rotation angle below ``threshold``."""
    if depth < 2:
        raise ValueError("depth must be at least 2")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    table = table if table is not None else enumerate_elements(pair, depth, threads=threads)
    flat = table.mats.reshape(-1, 9)
    # ||C_i - C_j||_F = ||C_i C_j^T - I||_F = 2 sqrt(2) sin(angle / 2)
    radius = 2 * math.sqrt(2) * math.sin(min(threshold, math.pi) / 2) + 1e-12
    k = min(neighbours + 1, len(flat))
    dist, idx = cKDTree(flat).query(flat, k=k, distance_upper_bound=radius, workers=threads)
    dist, idx = np.atleast_2d(dist), np.atleast_2d(idx)
    ii, jj = np.nonzero(np.isfinite(dist))
    i_idx, j_idx = ii, idx[ii, jj]
    keep = i_idx != j_idx
    i_idx, j_idx = i_idx[keep], j_idx[keep]
    prods = np.einsum("nij,nkj->nik", table.mats[i_idx], table.mats[j_idx])
    ang = _angles(prods)
    ok = (ang > 1e-9) & ((ang < threshold) | (threshold >= math.pi))
    i_idx, j_idx, prods, ang = i_idx[ok], j_idx[ok], prods[ok], ang[ok]
    if not len(ang):
        raise EmptyPool(f"no quotient with angle below {threshold}")
    order = np.lexsort((j_idx, i_idx, ang))
    prods, ang, i_idx, j_idx = prods[order], ang[order], i_idx[order], j_idx[order]
    # deduplicate the products themselves
    flatp = prods.reshape(-1, 9)
    pairs = cKDTree(flatp).query_pairs(ELEMENT_DEDUP_TOL, output_type="ndarray")
    uniq = np.ones(len(flatp), bool)
    if len(pairs):
        uniq[pairs[:, 1]] = False
    sel = np.nonzero(uniq)[0][:max_pool]
    words = [table.word(int(i_idx[s])) * table.word(int(j_idx[s])).inverse() for s in sel]
    return SmallRotationPool(prods[sel], words, ang[sel], threshold, pair)
