"""Freely reduced words in g1, g2 and their inverses."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rotation import Rotation3

G1, G1INV, G2, G2INV = range(4)
NAMES = ("g1", "g1inv", "g2", "g2inv")
_INDEX = {n: i for i, n in enumerate(NAMES)}
IDENTITY_TEXT = "e"


def inverse_letter(a: int) -> int:
    return a ^ 1


def reduce_letters(letters) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == inverse_letter(a):
            out.pop()
        else:
            out.append(a)
    return tuple(out)


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", reduce_letters(self.letters))
        if any(a not in (0, 1, 2, 3) for a in self.letters):
            raise ValueError("letters must be 0..3")

    @classmethod
    def parse(cls, text: str) -> "Word":
        text = text.strip()
        if text in ("", IDENTITY_TEXT):
            return cls(())
        try:
            return cls(tuple(_INDEX[t] for t in text.split(".")))
        except KeyError as exc:
            raise ValueError(f"unknown letter {exc.args[0]!r} in word {text!r}") from None

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple(inverse_letter(a) for a in reversed(self.letters)))

    def __str__(self):
        return ".".join(NAMES[a] for a in self.letters) if self.letters else IDENTITY_TEXT

    def __repr__(self):
        return f"Word({str(self)!r})"

    def evaluate(self, c1: Rotation3, c2: Rotation3) -> Rotation3:
        """The product of the letters, left to right, at working precision."""
        mats = (c1, c1.T, c2, c2.T)
        out = Rotation3.identity()
        for a in self.letters:
            out = out @ mats[a]
        return Rotation3(out.entries, provenance=str(self))

    def evaluate_numpy(self, gens: np.ndarray) -> np.ndarray:
        """Float64 product; ``gens`` is the (4, 3, 3) stack g1, g1inv, g2, g2inv."""
        out = np.eye(3)
        for a in self.letters:
            out = out @ gens[a]
        return out


def generator_stack(c1: Rotation3, c2: Rotation3) -> np.ndarray:
    a, b = c1.to_numpy(), c2.to_numpy()
    return np.stack([a, a.T, b, b.T])


def words_up_to(length: int):
    """Reduced words by length, lexicographic within a length."""
    layer = [Word(())]
    yield layer[0]
    for _ in range(length):
        nxt = []
        for w in layer:
            for a in range(4):
                if w.letters and w.letters[-1] == inverse_letter(a):
                    continue
                nxt.append(Word(w.letters + (a,)))
        nxt.sort(key=lambda w: w.letters)
        yield from nxt
        layer = nxt
