"""The group of a cut-diagram: presentations, path words and peripheral words."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

from .core import CutDiagram, RegionRef


class FreeWord:
    """A freely reduced word in abstract generators.

    Stored in syllable form: adjacent equal generators are merged and zero
    exponents dropped, so two words are equal iff they are equal in the
    free group.
    """

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[tuple[Hashable, int]] = ()):
        out: list[list] = []
        for g, e in syllables:
            if e == 0:
                continue
            if out and out[-1][0] == g:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([g, e])
        self.syllables = tuple((g, e) for g, e in out)

    @classmethod
    def gen(cls, g: Hashable, e: int = 1) -> "FreeWord":
        return cls(((g, e),))

    @classmethod
    def _raw(cls, syllables: tuple) -> "FreeWord":
        w = cls.__new__(cls)
        w.syllables = syllables
        return w

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        left, right = self.syllables, other.syllables
        if not left:
            return other
        if not right:
            return self
        # both sides are reduced; only the junction can cancel
        i, j = len(left), 0
        carry = None
        while i > 0 and j < len(right) and left[i - 1][0] == right[j][0]:
            e = left[i - 1][1] + right[j][1]
            i, j = i - 1, j + 1
            if e != 0:
                carry = (left[i][0], e)
                break
        mid = (carry,) if carry else ()
        return FreeWord._raw(left[:i] + mid + right[j:])

    def inverse(self) -> "FreeWord":
        return FreeWord._raw(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, e: int) -> "FreeWord":
        if e < 0:
            return self.inverse() ** (-e)
        out = FreeWord()
        for _ in range(e):
            out = out * self
        return out

    def conj(self, by: "FreeWord") -> "FreeWord":
        """``by^-1 * self * by``"""
        return by.inverse() * self * by

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeWord) and self.syllables == other.syllables

    def __hash__(self) -> int:
        return hash(self.syllables)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def letters(self) -> list[tuple[Hashable, int]]:
        """Expanded letters as (generator, +1/-1) pairs."""
        out = []
        for g, e in self.syllables:
            s = 1 if e > 0 else -1
            out.extend([(g, s)] * abs(e))
        return out

    def generators(self) -> set:
        return {g for g, _ in self.syllables}

    def exponent_sum(self, g: Hashable) -> int:
        return sum(e for h, e in self.syllables if h == g)

    def map(self, f) -> "FreeWord":
        """Apply the homomorphism sending generator ``g`` to the word ``f(g)``."""
        out = FreeWord()
        for g, e in self.syllables:
            out = out * (f(g) ** e)
        return out

    def __repr__(self) -> str:
        if not self.syllables:
            return "FreeWord(1)"
        return "FreeWord(" + " ".join(
            f"{g}" if e == 1 else f"{g}^{e}" for g, e in self.syllables
        ) + ")"


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    """``[a, b] = a^-1 b^-1 a b``"""
    return a.inverse() * b.inverse() * a * b


@dataclass(frozen=True)
class Presentation:
    generators: tuple[RegionRef, ...]
    relations: tuple[FreeWord, ...]


def presentation(d: CutDiagram) -> Presentation:
    """One relation ``B^-1 C^-e A C^e`` per cut-point with incoming region
    ``A``, outgoing region ``B``, label ``C`` and sign ``e``.

    With this choice the region after a cut-point is the conjugate of the
    region before it by the letter the path word picks up, which matches the
    Chen map recursion.
    """
    rels = []
    for i, p, cp in d.iter_points():
        a = FreeWord.gen(d.incoming(i, p))
        b = FreeWord.gen(d.outgoing(i, p))
        c = FreeWord.gen(cp.label, cp.sign)
        rels.append(b.inverse() * c.inverse() * a * c)
    return Presentation(tuple(d.all_regions()), tuple(rels))


def path_word(d: CutDiagram, i: int, start: int, stop: int) -> tuple[FreeWord, FreeWord]:
    """Words of the orientation-following path on component ``i``.

    ``start`` and ``stop`` are slot positions: slot ``s`` sits just before
    cut-point ``s`` (0-based), so the path crosses cut-points
    ``start .. stop-1``.  On a circle ``stop`` may exceed the cut-point count
    to wrap around; ``stop = start + k`` is a full loop.

    Returns ``(w_tilde, w)`` with ``w = R^(-|gamma|) w_tilde`` where ``R`` is
    the starting region.
    """
    pts = d.points(i)
    k = len(pts)
    if stop < start or start < 0:
        raise ValueError("positions must follow the orientation")
    if d.is_circle(i):
        if start > max(k - 1, 0) and not (k == 0 and start == 0):
            raise ValueError(f"start slot {start} out of range")
        crossed = [pts[(start + t) % k] for t in range(stop - start)] if k else []
        if not k and stop != start:
            raise ValueError("no cut-points to traverse")
        origin = RegionRef(i, start % k if k else 0)
    else:
        if stop > k:
            raise ValueError(f"stop slot {stop} out of range")
        crossed = list(pts[start:stop])
        origin = RegionRef(i, start)
    w_tilde = FreeWord((cp.label, cp.sign) for cp in crossed)
    framing = sum(cp.sign for cp in crossed if cp.label.component == i)
    w = FreeWord.gen(origin, -framing) * w_tilde
    return w_tilde, w


def meridian(d: CutDiagram, i: int) -> RegionRef:
    if not 1 <= i <= d.n:
        raise IndexError(i)
    return RegionRef(i, 0)


def longitude(d: CutDiagram, i: int) -> FreeWord:
    """Preferred longitude from the canonical basepoint of component ``i``."""
    k = len(d.points(i))
    return path_word(d, i, 0, k)[1]
