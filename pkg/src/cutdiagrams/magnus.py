"""Truncated Magnus expansion and Milnor invariants.

The Magnus map sends the meridian ``R_i`` to ``1 + X_i`` in the ring of
noncommutative integer power series in ``X_1 .. X_n``.  We keep only the
terms of total degree below ``q``, which is exactly what survives in the
``q``-th nilpotent quotient.

Series are stored densely, one numpy array per degree, so that degree-``d``
coefficients live in an array of length ``n**d`` indexed by the base-``n``
reading of the 0-based index sequence.  Coefficients are int64 until a
product could overflow, after which the arrays switch to Python ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from math import comb, gcd
from typing import Iterable, Mapping

import numpy as np

from .chen import RoadNetwork, canonical_network, network_longitude
from .core import CutDiagram, RegionRef
from .group import FreeWord

_SAFE = 2**62


def _binom(e: int, k: int) -> int:
    # generalized binomial, valid for negative e
    if e >= 0:
        return comb(e, k)
    return (-1) ** k * comb(-e + k - 1, k)


@lru_cache(maxsize=None)
def _distinct_mask(n: int, d: int) -> np.ndarray:
    mask = np.ones(n**d, dtype=bool)
    for idx, seq in enumerate(itertools.product(range(n), repeat=d)):
        if len(set(seq)) < d:
            mask[idx] = False
    return mask


def _flat_index(seq: Iterable[int], n: int) -> int:
    idx = 0
    for s in seq:
        idx = idx * n + (s - 1)
    return idx


class TruncatedSeries:
    """Element of ``Z<<X_1..X_n>>`` modulo terms of degree ``>= q``.

    With ``reduced=True`` every monomial with a repeated index is discarded,
    which is the Magnus image of the reduced free group.
    """

    __slots__ = ("n", "q", "levels", "reduced")

    def __init__(self, n: int, q: int, levels: list[np.ndarray], reduced: bool = False):
        self.n = n
        self.q = q
        self.levels = levels
        self.reduced = reduced

    @classmethod
    def one(cls, n: int, q: int, reduced: bool = False) -> "TruncatedSeries":
        levels = [np.zeros(n**d, dtype=np.int64) for d in range(q)]
        if q:
            levels[0][0] = 1
        return cls(n, q, levels, reduced)

    @classmethod
    def generator_power(cls, i: int, e: int, n: int, q: int, reduced: bool = False):
        """``(1 + X_i)^e`` truncated."""
        s = cls.one(n, q, reduced)
        for d in range(1, q):
            if reduced and d > 1:
                break
            c = _binom(e, d)
            if c:
                idx = _flat_index([i] * d, n)
                if abs(c) >= _SAFE:
                    s.levels[d] = s.levels[d].astype(object)
                s.levels[d][idx] = c
        return s

    def copy(self) -> "TruncatedSeries":
        return TruncatedSeries(self.n, self.q, [a.copy() for a in self.levels], self.reduced)

    def _norm(self) -> int:
        return sum(int(np.abs(a).sum()) for a in self.levels)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if (self.n, self.q) != (other.n, other.q):
            raise ValueError("series over different alphabets or truncations")
        reduced = self.reduced or other.reduced
        big = self._norm() * other._norm() >= _SAFE
        a = [x.astype(object) for x in self.levels] if big else self.levels
        b = [x.astype(object) for x in other.levels] if big else other.levels
        out = []
        for d in range(self.q):
            acc = None
            for k in range(d + 1):
                x, y = a[k], b[d - k]
                if not x.any() or not y.any():
                    continue
                term = np.outer(x, y).ravel()
                acc = term if acc is None else acc + term
            if acc is None:
                acc = np.zeros(self.n**d, dtype=object if big else np.int64)
            if reduced and d > 1:
                acc = np.where(_distinct_mask(self.n, d), acc, 0)
                if big:
                    acc = acc.astype(object)
            out.append(acc)
        return TruncatedSeries(self.n, self.q, out, reduced)

    def inverse(self) -> "TruncatedSeries":
        """Inverse of a series with constant term 1 (geometric series)."""
        if self.levels[0][0] != 1:
            raise ValueError("only series with constant term 1 are inverted here")
        h = self.copy()
        h.levels[0] = np.zeros(1, dtype=h.levels[0].dtype)
        neg_h = TruncatedSeries(self.n, self.q, [-x for x in h.levels], self.reduced)
        result = TruncatedSeries.one(self.n, self.q, self.reduced)
        power = TruncatedSeries.one(self.n, self.q, self.reduced)
        for _ in range(1, self.q):
            power = power * neg_h
            result = result + power
        return result

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return TruncatedSeries(
            self.n, self.q, [x + y for x, y in zip(self.levels, other.levels)], self.reduced
        )

    def coefficient(self, seq: Iterable[int]) -> int:
        seq = tuple(seq)
        if len(seq) >= self.q:
            raise ValueError(f"degree {len(seq)} is truncated away (q={self.q})")
        return int(self.levels[len(seq)][_flat_index(seq, self.n)])

    @property
    def coefficients(self) -> dict[tuple[int, ...], int]:
        """Nonzero coefficients keyed by 1-based index sequences."""
        out = {}
        for d, arr in enumerate(self.levels):
            for idx in np.flatnonzero(arr):
                seq = []
                rest = int(idx)
                for _ in range(d):
                    rest, r = divmod(rest, self.n)
                    seq.append(r + 1)
                out[tuple(reversed(seq))] = int(arr[idx])
        return out

    def is_one(self) -> bool:
        return int(self.levels[0][0]) == 1 and not any(a.any() for a in self.levels[1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.n, self.q) == (other.n, other.q) and all(
            np.array_equal(x, y) for x, y in zip(self.levels, other.levels)
        )

    def __repr__(self) -> str:
        terms = []
        for seq, c in sorted(self.coefficients.items(), key=lambda t: (len(t[0]), t[0])):
            mono = "".join(f"X{i}" for i in seq) or "1"
            terms.append(f"{c:+d}*{mono}")
        return f"TruncatedSeries(q={self.q}: {' '.join(terms)})"


def _alphabet(w: FreeWord) -> int:
    return max((g for g in w.generators()), default=1)


def expand(w: FreeWord, q: int, n: int | None = None, reduced: bool = False) -> TruncatedSeries:
    """Magnus expansion of a word over meridians ``1..n``, truncated below degree ``q``."""
    if q < 1:
        raise ValueError("q must be at least 1")
    n = n or _alphabet(w)
    out = TruncatedSeries.one(n, q, reduced)
    for g, e in w.syllables:
        out = out * TruncatedSeries.generator_power(g, e, n, q, reduced)
    return out


def reduced_expand(w: FreeWord, q: int, n: int | None = None) -> TruncatedSeries:
    return expand(w, q, n, reduced=True)


def in_lcs(w: FreeWord, q: int, n: int | None = None) -> bool:
    """Whether ``w`` lies in the ``q``-th lower central series term ``F_q``."""
    return expand(w, q, n).is_one()


def chen_series(
    d: CutDiagram, q: int, network: RoadNetwork | None = None, reduced: bool = False
) -> dict[RegionRef, TruncatedSeries]:
    """Magnus images of ``eta_q(R)`` for every region ``R``.

    Runs the Chen recursion directly in the truncated algebra instead of
    materializing words, whose length grows geometrically with ``q``.
    """
    net = network or canonical_network(d)
    n = d.n
    base = {r: TruncatedSeries.generator_power(r.component, 1, n, q, reduced)
            for r in d.all_regions()}
    images = dict(base)
    for _ in range(q - 1):
        gen_cache: dict[tuple[RegionRef, int], TruncatedSeries] = {}

        def letter(g: RegionRef, e: int) -> TruncatedSeries:
            key = (g, e)
            if key not in gen_cache:
                s = images[g]
                if e < 0:
                    s = s.inverse()
                acc = TruncatedSeries.one(n, q, reduced)
                for _ in range(abs(e)):
                    acc = acc * s
                gen_cache[key] = acc
            return gen_cache[key]

        new = {}
        for r in d.all_regions():
            if r == net.basepoint(r.component):
                new[r] = base[r]
                continue
            road = TruncatedSeries.one(n, q, reduced)
            for g, e in net.road(r).syllables:
                road = road * letter(g, e)
            new[r] = road.inverse() * base[r] * road
        images = new
    return images


def series_of_word(
    w: FreeWord, images: Mapping[RegionRef, TruncatedSeries], n: int, q: int, reduced: bool = False
) -> TruncatedSeries:
    out = TruncatedSeries.one(n, q, reduced)
    inv_cache: dict[RegionRef, TruncatedSeries] = {}
    for g, e in w.syllables:
        s = images[g]
        if e < 0:
            if g not in inv_cache:
                inv_cache[g] = s.inverse()
            s = inv_cache[g]
        for _ in range(abs(e)):
            out = out * s
    return out


def longitude_series(
    d: CutDiagram, maxlen: int, network: RoadNetwork | None = None, reduced: bool = False
) -> list[TruncatedSeries]:
    net = network or canonical_network(d)
    images = chen_series(d, maxlen, net, reduced)
    return [
        series_of_word(network_longitude(d, net, j), images, d.n, maxlen, reduced)
        for j in range(1, d.n + 1)
    ]


@dataclass
class MilnorTable:
    """Milnor numbers keyed by full index sequences ``I + (j,)``.

    Each entry is ``(value, modulus)``; modulus 0 means the value is exact,
    otherwise it is reduced into ``[0, modulus)``.
    """

    n: int
    maxlen: int
    entries: dict[tuple[int, ...], tuple[int, int]] = field(default_factory=dict)
    reduced: bool = False

    def __getitem__(self, seq) -> tuple[int, int]:
        return self.entries[tuple(seq)]

    def value(self, seq) -> int:
        return self.entries[tuple(seq)][0]

    def modulus(self, seq) -> int:
        return self.entries[tuple(seq)][1]

    def nonzero(self) -> list[tuple[tuple[int, ...], int, int]]:
        return [(s, v, m) for s, (v, m) in sorted(self.entries.items()) if v != 0]

    def lines(self) -> list[str]:
        out = []
        for seq, v, m in self.nonzero():
            line = f"{' '.join(map(str, seq))} : {v}"
            if m:
                line += f" mod {m}"
            out.append(line)
        return out

    def as_records(self) -> list[dict]:
        return [{"sequence": list(s), "value": v, "modulus": m} for s, v, m in self.nonzero()]

    def first_difference(self, other: "MilnorTable") -> tuple[int, ...] | None:
        """Least sequence (tuple order) whose values differ modulo the larger modulus."""
        for seq in sorted(set(self.entries) & set(other.entries)):
            (a, ma), (b, mb) = self.entries[seq], other.entries[seq]
            m = max(ma, mb)
            if (a - b) % m if m else a != b:
                return seq
        return None

    def agrees_with(self, other: "MilnorTable") -> bool:
        return self.first_difference(other) is None


def _candidate_subsequences(seq: tuple[int, ...]) -> set[tuple[int, ...]]:
    k = len(seq)
    out = set()
    for size in range(2, k):
        for keep in itertools.combinations(range(k), size):
            sub = tuple(seq[t] for t in keep)
            for r in range(size):
                out.add(sub[r:] + sub[:r])
    return out


def indeterminacy(table: Mapping[tuple[int, ...], tuple[int, int] | int], seq) -> int:
    """gcd of the values over all sequences obtained from ``seq`` by deleting
    at least one index and permuting cyclically (lengths >= 2)."""
    seq = tuple(seq)
    vals = []
    for sub in _candidate_subsequences(seq):
        if sub not in table:
            raise KeyError(f"entry {sub} needed before {seq}")
        v = table[sub]
        vals.append(v[0] if isinstance(v, tuple) else v)
    return reduce(gcd, (abs(v) for v in vals), 0)


def _sequences(n: int, maxlen: int, reduced: bool):
    for length in range(2, maxlen + 1):
        for seq in itertools.product(range(1, n + 1), repeat=length):
            if reduced and len(set(seq)) < length:
                continue
            yield seq


def table_from_longitudes(
    d: CutDiagram, maxlen: int, longitudes: list[TruncatedSeries], reduced: bool = False
) -> MilnorTable:
    table = MilnorTable(d.n, maxlen, reduced=reduced)
    raw: dict[tuple[int, ...], tuple[int, int]] = {}
    for seq in _sequences(d.n, maxlen, reduced):
        *prefix, j = seq
        value = longitudes[j - 1].coefficient(prefix)
        # a circle meridian is only defined up to conjugation, which blurs
        # every entry that involves a circle component
        touches_circle = any(d.is_circle(i) for i in set(seq))
        modulus = indeterminacy(raw, seq) if touches_circle else 0
        if modulus:
            value %= modulus
        raw[seq] = (value, modulus)
    table.entries = raw
    return table


def milnor_table(d: CutDiagram, maxlen: int, network: RoadNetwork | None = None) -> MilnorTable:
    """Milnor numbers of all sequences of length ``2..maxlen``."""
    if maxlen < 2:
        raise ValueError("maxlen must be at least 2")
    return table_from_longitudes(d, maxlen, longitude_series(d, maxlen, network))


def reduced_milnor_table(d: CutDiagram, maxlen: int, network: RoadNetwork | None = None) -> MilnorTable:
    """Milnor numbers of sequences without repeated indices."""
    if maxlen < 2:
        raise ValueError("maxlen must be at least 2")
    maxlen = min(maxlen, max(d.n, 2))
    longs = longitude_series(d, maxlen, network, reduced=True)
    return table_from_longitudes(d, maxlen, longs, reduced=True)
