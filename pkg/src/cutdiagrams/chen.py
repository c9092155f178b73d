"""Road networks, Chen maps and nilpotent presentations."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import CutDiagram, RegionRef, region_count
from .group import FreeWord, commutator, longitude, path_word


@dataclass(frozen=True)
class RoadNetwork:
    """Per-component basepoint regions and, for every region, the word of a
    road reaching it from the basepoint."""

    basepoints: tuple[RegionRef, ...]
    roads: dict[RegionRef, FreeWord] = field(hash=False)

    def basepoint(self, i: int) -> RegionRef:
        return self.basepoints[i - 1]

    def road(self, r: RegionRef) -> FreeWord:
        try:
            return self.roads[r]
        except KeyError:
            raise ValueError(f"region {r} is not covered by the road network") from None


def _forward(d: CutDiagram, i: int, start: int, stop: int) -> FreeWord:
    return path_word(d, i, start, stop)[0]


def road_network(
    d: CutDiagram,
    basepoints: dict[int, int] | None = None,
    windings: dict[RegionRef, int] | None = None,
) -> RoadNetwork:
    """Road network with roads following the orientation from chosen basepoints.

    ``basepoints`` maps a component to its basepoint region index (default 0).
    On a circle a road may first run ``windings[r]`` extra full turns (negative
    values turn backwards).  On an interval, roads to regions before the
    basepoint run against the orientation.
    """
    basepoints = basepoints or {}
    windings = windings or {}
    bases, roads = [], {}
    for i in range(1, d.n + 1):
        b = basepoints.get(i, 0)
        if not 0 <= b < region_count(d, i):
            raise ValueError(f"basepoint {i}.{b} out of range")
        bases.append(RegionRef(i, b))
        k = len(d.points(i))
        for t in range(region_count(d, i)):
            r = RegionRef(i, t)
            if d.is_circle(i):
                if k == 0:
                    roads[r] = FreeWord()
                    continue
                stop = t if t >= b else t + k
                word = _forward(d, i, b, stop)
                turns = windings.get(r, 0)
                if turns and r != bases[-1]:
                    loop = _forward(d, i, b, b + k)
                    word = (loop ** turns) * word
            else:
                word = _forward(d, i, b, t) if t >= b else _forward(d, i, t, b).inverse()
            roads[r] = word
    return RoadNetwork(tuple(bases), roads)


def canonical_network(d: CutDiagram) -> RoadNetwork:
    """Roads are the prefix words of the traversal from region ``r_0``."""
    return road_network(d)


def network_longitude(d: CutDiagram, net: RoadNetwork, i: int) -> FreeWord:
    """Longitude of component ``i`` based at the network's basepoint.

    For intervals the arc always runs along the whole component, so this is
    the canonical longitude.
    """
    if not d.is_circle(i):
        return longitude(d, i)
    b = net.basepoint(i).region
    k = len(d.points(i))
    return path_word(d, i, b, b + k)[1]


class ChenMap:
    """Memoized Chen maps ``eta_q`` for one diagram and road network."""

    def __init__(self, d: CutDiagram, net: RoadNetwork | None = None):
        self.d = d
        self.net = net or canonical_network(d)
        self._levels: list[dict[RegionRef, FreeWord]] = []

    def _level(self, q: int) -> dict[RegionRef, FreeWord]:
        while len(self._levels) < q:
            if not self._levels:
                self._levels.append(
                    {r: FreeWord.gen(r.component) for r in self.d.all_regions()}
                )
                continue
            prev = self._levels[-1]
            cur = {}
            for r in self.d.all_regions():
                meridian = FreeWord.gen(r.component)
                if r == self.net.basepoint(r.component):
                    cur[r] = meridian
                else:
                    v = self.net.road(r).map(lambda g: _lookup(prev, g))
                    cur[r] = meridian.conj(v)
            self._levels.append(cur)
        return self._levels[q - 1]

    def __call__(self, q: int, w: FreeWord) -> FreeWord:
        if q < 1:
            raise ValueError("q must be at least 1")
        level = self._level(q)
        return w.map(lambda g: _lookup(level, g))


def _lookup(level: dict[RegionRef, FreeWord], g) -> FreeWord:
    try:
        return level[g]
    except KeyError:
        raise ValueError(f"region {g} is not covered by the road network") from None


def chen_map(d: CutDiagram, net: RoadNetwork | None, q: int, w: FreeWord) -> FreeWord:
    """Image of a word over regions under ``eta_q``; a word over meridian indices."""
    return ChenMap(d, net)(q, w)


@dataclass(frozen=True)
class NilPresentation:
    q: int
    meridians: tuple[int, ...]
    commutation_relations: tuple[tuple[int, FreeWord], ...]

    def relators(self) -> list[FreeWord]:
        """The words ``[R_i, eta_q(lambda_i)]``; the class ``F_q`` stays implicit."""
        return [commutator(FreeWord.gen(i), lam) for i, lam in self.commutation_relations]


def nilpotent_presentation(d: CutDiagram, q: int, net: RoadNetwork | None = None) -> NilPresentation:
    eta = ChenMap(d, net)
    rels = tuple(
        (i, eta(q, network_longitude(d, eta.net, i)))
        for i in range(1, d.n + 1)
        if d.is_circle(i)
    )
    return NilPresentation(q, tuple(range(1, d.n + 1)), rels)


def rewrite_network(
    d: CutDiagram, net: RoadNetwork, net2: RoadNetwork, q: int, w: FreeWord
) -> FreeWord:
    """Translate a word over the meridians of ``net`` into the meridians of
    ``net2`` by conjugating each ``R_i`` with the image of the ``net2`` road
    to ``net``'s basepoint on component ``i``."""
    eta2 = ChenMap(d, net2)
    subst = {}
    for i in range(1, d.n + 1):
        nu = net2.road(net.basepoint(i))
        subst[i] = FreeWord.gen(i).conj(eta2(q, nu))
    return w.map(lambda g: subst[g])
