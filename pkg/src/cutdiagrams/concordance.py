"""Cut-concordance certificates as movies of time slices over ``X x [0,1]``.

A certificate replays events on a *slice*: per annulus component, the
ordered transits of cut-arcs through the current time level together with
the region instances between them.  Region instances are nodes of a
union-find structure; after replay its classes are the regions of the
2-dimensional diagram, and the labeling obligations collected along the
way are checked against those final classes.

Transit directions are ``up`` or ``down``.  On both boundary slices a
cut-point of sign ``+1`` corresponds to an ``up`` transit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from scipy.cluster.hierarchy import DisjointSet

from .core import CutDiagram, CutPoint, RegionRef, Skeleton, check_valid
from .moves import (
    R1_MINUS,
    R1_PLUS,
    R2_MINUS,
    R2_PLUS,
    R3,
    SV_MINUS,
    SV_PLUS,
    MoveInstance,
    apply_move,
    delete_regions,
    split_region,
    split_regions,
)

STRICT, REDUCED = "strict", "reduced"
MODES = (STRICT, REDUCED)
UP, DOWN = "up", "down"

EVENT_KINDS = ("product", "vdeath", "vbirth", "svdeath", "svbirth", "min", "max", "pass")
SV_EVENTS = ("svdeath", "svbirth")


def direction_of(sign: int) -> str:
    return UP if sign > 0 else DOWN


def sign_of(direction: str) -> int:
    return 1 if direction == UP else -1


@dataclass(frozen=True)
class Event:
    """One step of a movie.

    ``direction`` is used by births (``up``/``down``) and by ``min``
    (a pair such as ``("up", "down")``); ``side`` is ``over``/``under`` for
    ``pass`` and names the role of the left transit.  ``label`` refers to a
    region of the slice just before the event.
    """

    kind: str
    component: int = 0
    position: int = 0
    direction: str | tuple[str, str] | None = None
    label: RegionRef | None = None
    side: str | None = None

    def __str__(self) -> str:
        if self.kind == "product":
            return "product"
        head = f"{self.kind} {self.component} {self.position}"
        if self.kind in ("vdeath", "svdeath", "max"):
            return head
        if self.kind in ("vbirth", "svbirth"):
            return f"{head} {self.direction} {self.label}"
        if self.kind == "min":
            return f"{head} {'/'.join(self.direction)} {self.label}"
        return f"{head} {self.side} {self.label}"


@dataclass
class Certificate:
    initial: CutDiagram
    events: list[Event] = field(default_factory=list)
    mode: str = STRICT
    final: CutDiagram | None = None


@dataclass
class Report:
    accepted: bool
    reason: str | None = None
    event: int | None = None
    detail: str = ""
    final: CutDiagram | None = None

    def __bool__(self) -> bool:
        return self.accepted

    def summary(self) -> str:
        if self.accepted:
            return "ACCEPTED"
        where = f" at event {self.event}" if self.event is not None else ""
        return f"REJECTED {self.reason}{where}: {self.detail}"


class ReplayError(ValueError):
    def __init__(self, index: int | None, message: str):
        super().__init__(message)
        self.index = index


@dataclass
class _Transit:
    direction: str
    label: int  # region-instance node


@dataclass(frozen=True)
class _Seen:
    """A transit as it appeared in some slice (for rule-1 witnesses)."""

    direction: str
    label: int
    incoming: int
    outgoing: int


class Movie:
    """Replays events and keeps the region-instance union-find.

    Nodes are integers; ``component_of[node]`` records the annulus
    component, and unions only ever happen within one component.
    """

    def __init__(self, initial: CutDiagram, mode: str = STRICT):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.skeleton = initial.skeleton
        self.mode = mode
        self.classes = DisjointSet()
        self.component_of: dict[int, int] = {}
        self._ids = itertools.count()
        self.regions: list[list[int]] = []
        self.transits: list[list[_Transit]] = []
        for i in range(1, initial.n + 1):
            self.regions.append([self.node(i) for _ in initial.regions(i)])
        for i in range(1, initial.n + 1):
            self.transits.append(
                [_Transit(direction_of(cp.sign), self.region_node(cp.label)) for cp in initial.points(i)]
            )
        self.obligations: list[tuple[int, str, tuple]] = []
        self.seen: set[_Seen] = set()
        self.index = -1
        self._record()

    # -- structure ---------------------------------------------------------
    def node(self, component: int) -> int:
        v = next(self._ids)
        self.classes.add(v)
        self.component_of[v] = component
        return v

    def is_circle(self, i: int) -> bool:
        return self.skeleton.kind(i) == "circle"

    def region_node(self, ref: RegionRef) -> int:
        c, r = ref
        if not 1 <= c <= len(self.regions) or not 0 <= r < len(self.regions[c - 1]):
            raise ReplayError(self.index, f"region {ref} does not exist in the current slice")
        return self.regions[c - 1][r]

    def incoming(self, i: int, p: int) -> int:
        return self.regions[i - 1][p]

    def outgoing(self, i: int, p: int) -> int:
        k = len(self.transits[i - 1])
        if self.is_circle(i) and p == k - 1:
            return self.regions[i - 1][0]
        return self.regions[i - 1][p + 1]

    def same(self, a: int, b: int) -> bool:
        return self.classes.connected(a, b)

    def _record(self):
        for i, row in enumerate(self.transits, start=1):
            for p, t in enumerate(row):
                self.seen.add(_Seen(t.direction, t.label, self.incoming(i, p), self.outgoing(i, p)))

    def _component(self, i: int):
        if not 1 <= i <= len(self.regions):
            raise ReplayError(self.index, f"component {i} out of range")

    def _insert(self, i: int, slot: int, new: list[_Transit], middle_fresh: bool):
        k = len(self.transits[i - 1])
        if not 0 <= slot <= k or (self.is_circle(i) and k == 0 and slot != 0):
            raise ReplayError(self.index, f"slot {slot} out of range on component {i}")
        fresh = [self.node(i) for _ in range(len(new) + 1)]
        old, regs = split_regions(self.regions[i - 1], self.is_circle(i), k, slot, fresh)
        self.regions[i - 1] = regs
        outer = [fresh[0], fresh[-1]]
        for v in outer:
            self.classes.merge(v, old)
        if not middle_fresh:
            for v in fresh[1:-1]:
                self.classes.merge(v, old)
        row = self.transits[i - 1]
        self.transits[i - 1] = row[:slot] + new + row[slot:]
        return old

    def _remove(self, i: int, p: int, m: int):
        k = len(self.transits[i - 1])
        if not 0 <= p <= k - m:
            raise ReplayError(self.index, f"position {p} out of range on component {i}")
        removed = self.transits[i - 1][p:p + m]
        merged = self.node(i)
        before, middles, after, regs = delete_regions(
            self.regions[i - 1], self.is_circle(i), k, p, m, merged
        )
        self.classes.merge(merged, before)
        self.classes.merge(merged, after)
        self.regions[i - 1] = regs
        row = self.transits[i - 1]
        self.transits[i - 1] = row[:p] + row[p + m:]
        return removed, merged, middles

    # -- events -------------------------------------------------------------
    def apply(self, ev: Event):
        self.index += 1
        kind = ev.kind
        if kind not in EVENT_KINDS:
            raise ReplayError(self.index, f"unknown event kind {kind!r}")
        if kind == "product":
            return
        i = ev.component
        self._component(i)
        if kind in SV_EVENTS and self.mode == STRICT:
            self.obligations.append((self.index, "strict-sv", ()))
        if kind in ("vdeath", "svdeath"):
            (t,), merged, _ = self._remove(i, ev.position, 1)
            self.obligations.append((self.index, "rule-2" if kind == "vdeath" else "rule-2'", (t.label, merged, i)))
        elif kind in ("vbirth", "svbirth"):
            if ev.direction not in (UP, DOWN):
                raise ReplayError(self.index, "birth needs direction up|down")
            label = self.region_node(ev.label)
            old = self._insert(i, ev.position, [_Transit(ev.direction, label)], middle_fresh=True)
            self.obligations.append((self.index, "rule-2" if kind == "vbirth" else "rule-2'", (label, old, i)))
        elif kind == "min":
            d1, d2 = ev.direction if ev.direction else (None, None)
            if {d1, d2} != {UP, DOWN}:
                raise ReplayError(self.index, "min needs opposite directions")
            label = self.region_node(ev.label)
            self._insert(i, ev.position, [_Transit(d1, label), _Transit(d2, label)], middle_fresh=True)
        elif kind == "max":
            row = self.transits[i - 1]
            p = ev.position
            if not 0 <= p < len(row) - 1:
                raise ReplayError(self.index, f"position {p} out of range on component {i}")
            if row[p].direction == row[p + 1].direction:
                raise ReplayError(self.index, "max needs opposite directions")
            a, b = row[p].label, row[p + 1].label
            self._remove(i, p, 2)
            self.obligations.append((self.index, "max-labels", (a, b)))
        elif kind == "pass":
            row = self.transits[i - 1]
            p = ev.position
            if not 0 <= p < len(row) - 1:
                raise ReplayError(self.index, f"position {p} out of range on component {i}")
            if ev.side not in ("over", "under"):
                raise ReplayError(self.index, "pass needs over|under")
            new_label = self.region_node(ev.label)
            over, under = (row[p], row[p + 1]) if ev.side == "over" else (row[p + 1], row[p])
            under_first = ev.side == "under"
            self.obligations.append(
                (self.index, "rule-1", (under.label, new_label, over.label, sign_of(over.direction), under_first))
            )
            under.label = new_label
            row[p], row[p + 1] = row[p + 1], row[p]
            self.regions[i - 1][p + 1] = self.node(i)
        self._record()

    # -- checks -------------------------------------------------------------
    def _witnessed(self, a: int, b: int, c: int, eps: int, under_first: bool) -> bool:
        for z in self.seen:
            if not self.same(z.label, c):
                continue
            s = sign_of(z.direction)
            inc_a, inc_b = self.same(z.incoming, a), self.same(z.incoming, b)
            out_a, out_b = self.same(z.outgoing, a), self.same(z.outgoing, b)
            if not under_first:
                if (s == eps and inc_b and out_a) or (s == -eps and inc_a and out_b):
                    return True
            else:
                if (s == eps and inc_a and out_b) or (s == -eps and inc_b and out_a):
                    return True
        return False

    def failed_obligation(self) -> tuple[int, str, str] | None:
        for index, tag, data in self.obligations:
            if tag == "strict-sv":
                return index, "rule-2", "sv vertex events are not allowed in strict mode"
            if tag == "rule-2" and not self.same(data[0], data[1]):
                return index, tag, "vertex arc is not labeled by the region containing the vertex"
            if tag == "rule-2'" and self.component_of[data[0]] != data[2]:
                return index, tag, "sv vertex arc is not labeled by its own component"
            if tag == "max-labels" and not self.same(data[0], data[1]):
                return index, tag, "the two transits of a maximum carry different labels"
            if tag == "rule-1" and not self._witnessed(*data):
                return index, tag, "no cut-arc witnesses the label change"
        return None

    def final_expression(self) -> CutDiagram | None:
        """The final slice as a cut-diagram, labels pulled back to the least
        region of the final slice in their class (None if some class has no
        region there)."""
        rep: dict = {}
        for i, regs in enumerate(self.regions, start=1):
            for j, v in enumerate(regs):
                rep.setdefault(self.classes[v], RegionRef(i, j))
        cps = []
        for row in self.transits:
            out = []
            for t in row:
                ref = rep.get(self.classes[t.label])
                if ref is None:
                    return None
                out.append(CutPoint(sign_of(t.direction), ref))
            cps.append(tuple(out))
        return CutDiagram(self.skeleton, tuple(cps))

    def matches(self, d: CutDiagram) -> str | None:
        """Why ``d`` is not the final boundary (None if it is)."""
        if d.skeleton != self.skeleton:
            return "skeleton differs"
        for i, row in enumerate(self.transits, start=1):
            pts = d.points(i)
            if len(pts) != len(row):
                return f"component {i}: {len(row)} transits but {len(pts)} cut-points"
            for p, (t, cp) in enumerate(zip(row, pts)):
                if sign_of(t.direction) != cp.sign:
                    return f"component {i} cut-point {p}: orientation"
                try:
                    node = self.region_node(cp.label)
                except ReplayError:
                    return f"component {i} cut-point {p}: label out of range"
                if not self.same(t.label, node):
                    return f"component {i} cut-point {p}: label"
        return None


def replay(c: Certificate) -> Movie:
    movie = Movie(c.initial, c.mode)
    for ev in c.events:
        movie.apply(ev)
    return movie


def verify(c: Certificate) -> Report:
    """Check a certificate; the report carries a rejection tag and event index."""
    try:
        check_valid(c.initial)
        movie = replay(c)
    except ReplayError as err:
        return Report(False, "structure", err.index, str(err))
    except ValueError as err:
        return Report(False, "structure", None, str(err))
    bad = movie.failed_obligation()
    if bad:
        index, tag, detail = bad
        return Report(False, tag, index, detail)
    if c.final is not None:
        why = movie.matches(c.final)
        if why:
            tag = "orientation" if why.endswith("orientation") else "final-mismatch"
            return Report(False, tag, None, why)
        return Report(True, final=c.final)
    final = movie.final_expression()
    if final is None:
        return Report(False, "unbounded-label", None, "a final label class has no region on the final slice")
    return Report(True, final=final)


def boundaries(c: Certificate) -> tuple[CutDiagram, CutDiagram]:
    """``(initial, final)`` boundary diagrams of a replayable certificate."""
    movie = replay(c)
    if c.final is not None and movie.matches(c.final) is None:
        return c.initial, c.final
    final = movie.final_expression()
    if final is None:
        raise ValueError("the final slice does not bound a 1-dimensional cut-diagram")
    return c.initial, final.with_name(f"{c.initial.name}-final")


def empty_like(d: CutDiagram, name: str = "empty") -> CutDiagram:
    return CutDiagram.empty(d.skeleton, name)


def build_slice(d: CutDiagram) -> Certificate:
    """Kill every cut-point from the front of each component."""
    events = [
        Event("vdeath", i, 0)
        for i in range(1, d.n + 1)
        for _ in d.points(i)
    ]
    return Certificate(d, events, STRICT, empty_like(d))


def _event_for(d: CutDiagram, m: MoveInstance) -> Event:
    i, p = m.component, m.position
    if m.kind in (R1_MINUS, SV_MINUS):
        return Event("vdeath" if m.kind == R1_MINUS else "svdeath", i, p)
    if m.kind == R2_MINUS:
        return Event("max", i, p)
    if m.kind in (R1_PLUS, SV_PLUS):
        label = m.label if m.label is not None else split_region(d, i, p)
        kind = "vbirth" if m.kind == R1_PLUS else "svbirth"
        return Event(kind, i, p, direction_of(m.sign), label)
    if m.kind == R2_PLUS:
        label = m.label if m.label is not None else split_region(d, i, p)
        return Event("min", i, p, (direction_of(m.sign), direction_of(-m.sign)), label)
    if m.kind == R3:
        side = "under" if m.mover == "first" else "over"
        return Event("pass", i, p, label=m.label, side=side)
    raise ValueError(f"unknown move kind {m.kind!r}")


def _build(d: CutDiagram, moves: Sequence[MoveInstance], mode: str, allowed) -> Certificate:
    events, cur = [], d
    for m in moves:
        if m.kind not in allowed:
            raise ValueError(f"move {m} cannot appear in a {mode} trace")
        events.append(_event_for(cur, m))
        cur = apply_move(cur, m)
    return Certificate(d, events, mode, cur.with_name(f"{d.name}-final"))


def build_trace(d: CutDiagram, moves: Sequence[MoveInstance]) -> Certificate:
    """Strict certificate tracing a sequence of R-moves."""
    return _build(d, moves, STRICT, (R1_PLUS, R1_MINUS, R2_PLUS, R2_MINUS, R3))


def build_sv_trace(d: CutDiagram, moves: Sequence[MoveInstance]) -> Certificate:
    """Reduced certificate for a sequence of SV moves (R-moves are allowed too)."""
    return _build(d, moves, REDUCED, (R1_PLUS, R1_MINUS, R2_PLUS, R2_MINUS, R3, SV_PLUS, SV_MINUS))
