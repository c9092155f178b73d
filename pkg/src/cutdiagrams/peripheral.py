"""Nilpotent and reduced peripheral systems, and comparison of diagrams
through their Milnor tables."""

from __future__ import annotations

from dataclasses import dataclass

from .chen import ChenMap, NilPresentation, network_longitude, nilpotent_presentation
from .core import CIRCLE, CutDiagram
from .group import FreeWord
from .magnus import TruncatedSeries, expand, milnor_table, reduced_milnor_table


@dataclass(frozen=True)
class NilPeripheralSystem:
    """Meridians and longitude images in the ``q``-th nilpotent quotient.

    Circle longitudes are only meaningful up to conjugation; interval
    longitudes are compared as they are.
    """

    q: int
    presentation: NilPresentation
    meridians: tuple[FreeWord, ...]
    longitudes: tuple[FreeWord, ...]
    kinds: tuple[str, ...]

    def compare_mode(self, i: int) -> str:
        return "conjugation" if self.kinds[i - 1] == CIRCLE else "exact"

    def longitude_series(self, i: int) -> TruncatedSeries:
        return expand(self.longitudes[i - 1], self.q, len(self.kinds))


def peripheral_system(d: CutDiagram, q: int) -> NilPeripheralSystem:
    if q < 1:
        raise ValueError("q must be at least 1")
    eta = ChenMap(d)
    longs = tuple(eta(q, network_longitude(d, eta.net, i)) for i in range(1, d.n + 1))
    return NilPeripheralSystem(
        q,
        nilpotent_presentation(d, q, eta.net),
        tuple(FreeWord.gen(i) for i in range(1, d.n + 1)),
        longs,
        d.skeleton.components,
    )


@dataclass(frozen=True)
class ReducedPeripheralData:
    """Longitude cosets modulo the normal closure of the own meridian.

    ``representatives[i-1]`` is ``eta_q(lambda_i)`` with every ``R_i`` letter
    deleted, and ``images[i-1]`` its reduced Magnus expansion.
    """

    q: int
    meridians: tuple[FreeWord, ...]
    representatives: tuple[FreeWord, ...]
    images: tuple[TruncatedSeries, ...]

    def is_trivial(self) -> bool:
        return all(s.is_one() for s in self.images)


def _drop_generator(w: FreeWord, g) -> FreeWord:
    return FreeWord((h, e) for h, e in w.syllables if h != g)


def reduced_peripheral(d: CutDiagram, q: int | None = None) -> ReducedPeripheralData:
    """``q`` defaults to the number of components, beyond which the reduced
    expansion has no room for non-repeating monomials anyway."""
    q = q or max(d.n, 1)
    system = peripheral_system(d, q)
    reps = tuple(_drop_generator(lam, i) for i, lam in enumerate(system.longitudes, start=1))
    images = tuple(expand(r, q, max(d.n, 1), reduced=True) for r in reps)
    return ReducedPeripheralData(q, system.meridians, reps, images)


@dataclass(frozen=True)
class Verdict:
    distinguished: bool
    witness: tuple[int, ...] | None
    maxlen: int

    def describe(self) -> str:
        if self.distinguished:
            return "DIFFER at " + " ".join(map(str, self.witness))
        return f"EQUAL up to length {self.maxlen}"


def same_invariants(d1: CutDiagram, d2: CutDiagram, maxlen: int, reduced: bool = False) -> Verdict:
    """Compare Milnor tables; the witness is the lexicographically least
    differing sequence (values compared modulo the larger modulus)."""
    if d1.skeleton != d2.skeleton:
        raise ValueError("diagrams have different skeletons")
    table = reduced_milnor_table if reduced else milnor_table
    t1, t2 = table(d1, maxlen), table(d2, maxlen)
    witness = t1.first_difference(t2)
    return Verdict(witness is not None, witness, t1.maxlen)
