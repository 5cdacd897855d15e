"""Breadth-first closure of a generated group and the Klein type of the result."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
from mpmath import mp, mpf

from .._precision import tol
from ..errors import InconsistentInput, PrecisionError
from ..rotation import PairPresentation, Rotation3, rotation_angle, signed_axis_angle

KEY_DIGITS = 12
# a scaled entry this close to a half-integer may round either way
_BOUNDARY = mpf("1e-4")

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
TETRAHEDRAL = "tetrahedral"
OCTAHEDRAL = "octahedral"
ICOSAHEDRAL = "icosahedral"


def _fast_matmul(a, b):
    # plain mpf sums; 3-term dot products lose nothing meaningful at 128 bits
    return tuple(
        tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3))
        for i in range(3)
    )


def _key(entries, scale):
    return tuple(int(mpmath.nint(x * scale)) for row in entries for x in row)


def _near_boundary(entries, scale) -> bool:
    for row in entries:
        for x in row:
            y = x * scale
            if abs(abs(y - mpmath.floor(y)) - mpf(0.5)) < _BOUNDARY:
                return True
    return False


@dataclass(frozen=True)
class FiniteClosure:
    elements: tuple[Rotation3, ...]
    words: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class ExceedsCap:
    cap: int
    elements: tuple[Rotation3, ...]
    words: tuple[str, ...]

    def __bool__(self):
        return False


_LETTERS = ("g1", "g1inv", "g2", "g2inv")


class _ElementSet:
    def __init__(self):
        self.scale = mpf(10) ** KEY_DIGITS
        self.by_key: dict = {}
        self.items: list = []

    def find(self, m):
        k = _key(m, self.scale)
        hit = self.by_key.get(k)
        if hit is not None:
            if _maxdiff(self.items[hit][0], m) > tol(20):
                raise PrecisionError("distinct elements share a rounding key; raise precision")
            return hit
        if _near_boundary(m, self.scale):
            for idx, (e, _) in enumerate(self.items):
                if _maxdiff(e, m) < tol(20):
                    return idx
        return None

    def add(self, m, word):
        self.by_key[_key(m, self.scale)] = len(self.items)
        self.items.append((m, word))
        return len(self.items) - 1


def _maxdiff(a, b):
    return max(abs(x - y) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _canonical(elems):
    # sort by rounded entries so the output does not depend on the discovery order
    scale = mpf(10) ** KEY_DIGITS
    return sorted(elems, key=lambda it: _key(it[0], scale))


def closure_of(generators: list[Rotation3], cap: int, letters=None):
    """Closure of the group generated by ``generators`` (and their inverses)."""
    if cap < 1:
        raise ValueError("cap must be positive")
    gens = []
    names = letters or [f"h{i + 1}" for i in range(len(generators))]
    for g, name in zip(generators, names):
        gens.append((g.entries, name))
        gens.append((g.T.entries, name + "inv" if not name.endswith("inv") else name[:-3]))
    ident = Rotation3.identity().entries
    found = _ElementSet()
    found.add(ident, "e")
    frontier = [0]
    while frontier:
        nxt = []
        for idx in frontier:
            m, word = found.items[idx]
            for g, name in gens:
                prod = _fast_matmul(g, m)  # prepend the letter
                if found.find(prod) is None:
                    if len(found.items) >= cap:
                        elems = _canonical(found.items)
                        return ExceedsCap(
                            cap, tuple(Rotation3(e) for e, _ in elems), tuple(w for _, w in elems)
                        )
                    w = name if word == "e" else f"{name}.{word}"
                    nxt.append(found.add(prod, w))
        frontier = nxt
    elems = _canonical(found.items)
    return FiniteClosure(tuple(Rotation3(e, provenance=w) for e, w in elems), tuple(w for _, w in elems))


def finite_closure(pair: PairPresentation, cap: int = 240):
    """Closure under left multiplication by g1, g1inv, g2, g2inv.

    Returns :class:`FiniteClosure` when the group has at most ``cap``
    elements, else :class:`ExceedsCap` holding the elements found so far.
    """
    if cap < 2:
        raise ValueError("cap must be at least 2")
    return closure_of([pair.c1, pair.c2], cap, letters=["g1", "g2"])


def is_closed(elements, tolerance=None) -> bool:
    """Every pairwise product rounds to a member (brute force)."""
    s = _ElementSet()
    for e in elements:
        s.add(e.entries, "")
    for a in elements:
        for b in elements:
            if s.find(_fast_matmul(a.entries, b.entries)) is None:
                return False
    return True


def _same_axis(a, b, tolerance) -> bool:
    d = abs(mpmath.fsum(x * y for x, y in zip(a, b)))
    return abs(d - 1) < tolerance


def klein_type(elements) -> tuple[str, int]:
    """(klein_type, order) of a finite rotation group given by all its elements."""
    n = len(elements)
    if n == 1:
        return CYCLIC, 1
    tolerance = tol(15)
    nontrivial = [e for e in elements if not e.is_identity()]
    axes = [signed_axis_angle(e)[0] for e in nontrivial]
    angles = [rotation_angle(e) for e in nontrivial]
    if all(_same_axis(axes[0], a, tolerance) for a in axes):
        return CYCLIC, n
    if n % 2 == 0:
        for a in axes:
            about = [i for i, b in enumerate(axes) if _same_axis(a, b, tolerance)]
            rest = [i for i in range(len(axes)) if i not in set(about)]
            if len(about) + 1 == n // 2 and all(abs(angles[i] - mp.pi) < tolerance for i in rest):
                return DIHEDRAL, n
    named = {12: TETRAHEDRAL, 24: OCTAHEDRAL, 60: ICOSAHEDRAL}
    if n in named:
        return named[n], n
    raise InconsistentInput(f"a group of order {n} fits no finite rotation group type")
