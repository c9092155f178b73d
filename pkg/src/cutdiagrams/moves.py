"""Topological moves R1/R2/R3 and the self-virtualization move SV.

Every move is a rewrite of a :class:`CutDiagram` into a new one.  The
rewrites run on a small mutable working form in which regions are opaque
keys; after the edit the keys are renumbered under the usual region
convention.

Insertions happen at a *slot*: slot ``s`` of a component sits just before
its (0-based) cut-point ``s``.  On a circle with ``k >= 1`` cut-points both
slot ``0`` and slot ``k`` lie in region ``r_0``; slot ``0`` is after the
basepoint and slot ``k`` is before it.

R3 conventions were fixed from the group relation ``B = C^-e A C^e``: the
relabeled cut-point ``y`` (label ``A``) slides past ``x`` (label ``C``, sign
``e``), and its new label ``B`` is read off a witness cut-point ``z`` labeled
``C``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import CutDiagram, CutPoint, RegionRef, Skeleton, region_count

R1_PLUS, R1_MINUS = "R1+", "R1-"
R2_PLUS, R2_MINUS = "R2+", "R2-"
R3 = "R3"
SV_PLUS, SV_MINUS = "SV+", "SV-"

KIND_ORDER = (R1_PLUS, R1_MINUS, R2_PLUS, R2_MINUS, R3, SV_PLUS, SV_MINUS)
TOPOLOGICAL = (R1_PLUS, R1_MINUS, R2_PLUS, R2_MINUS, R3)
SELF_VIRTUAL = (SV_PLUS, SV_MINUS)
INSERTIONS = (R1_PLUS, R2_PLUS, SV_PLUS)
DELETIONS = (R1_MINUS, R2_MINUS, SV_MINUS)


class MoveError(ValueError):
    """A move's side condition does not hold."""


@dataclass(frozen=True)
class MoveInstance:
    """One applicable rewrite.

    ``position`` is a slot for insertions and a cut-point index for
    deletions and R3 (which swaps cut-points ``position`` and
    ``position + 1``).  ``label`` is a region of the diagram *before* the
    move; when it is the region being split, ``side`` says which half.
    ``relabel`` lists the cut-points (component, index) whose label is the
    split region and that follow it onto the ``after`` half.
    """

    kind: str
    component: int
    position: int
    sign: int = 0
    label: RegionRef | None = None
    side: str | None = None
    mover: str | None = None
    relabel: frozenset = field(default_factory=frozenset)

    def sort_key(self):
        return (
            self.component,
            self.position,
            KIND_ORDER.index(self.kind),
            self.sign,
            tuple(self.label) if self.label else (),
            self.side or "",
            self.mover or "",
            tuple(sorted(self.relabel)),
        )

    def __str__(self) -> str:
        return format_move(self)


def format_move(m: MoveInstance) -> str:
    """``kind@component:position[:params]`` form used on the command line."""
    parts = [f"{m.kind}@{m.component}:{m.position}"]
    if m.kind in (R1_PLUS, R2_PLUS, SV_PLUS):
        parts.append("+" if m.sign > 0 else "-")
    if m.kind == R3:
        parts.append(m.mover)
    if m.label is not None:
        parts.append(str(m.label))
    if m.side is not None:
        parts.append(m.side)
    text = ":".join(parts)
    if m.relabel:
        text += ":{" + ",".join(f"{c}.{p}" for c, p in sorted(m.relabel)) + "}"
    return text


def parse_move(text: str) -> MoveInstance:
    text = text.strip()
    relabel: frozenset = frozenset()
    if text.endswith("}") and ":{" in text:
        text, _, rel = text.partition(":{")
        items = [t for t in rel[:-1].split(",") if t]
        relabel = frozenset(tuple(int(x) for x in t.split(".")) for t in items)
    kind, _, rest = text.partition("@")
    if kind not in KIND_ORDER or not rest:
        raise ValueError(f"bad move {text!r}")
    fields_ = rest.split(":")
    comp, pos = int(fields_[0]), int(fields_[1])
    params = fields_[2:]
    sign, label, side, mover = 0, None, None, None
    if kind in (R1_PLUS, R2_PLUS, SV_PLUS):
        if not params or params[0] not in "+-":
            raise ValueError(f"move {text!r} needs a sign")
        sign = 1 if params.pop(0) == "+" else -1
    if kind == R3:
        if not params:
            raise ValueError(f"move {text!r} needs first|second")
        mover = params.pop(0)
    for p in params:
        if p in ("before", "after"):
            side = p
        else:
            label = RegionRef.parse(p)
    return MoveInstance(kind, comp, pos, sign, label, side, mover, relabel)


def split_regions(regs: list, circle: bool, k: int, slot: int, fresh: list):
    """Region list after opening ``len(fresh) - 1`` cut-points at ``slot``.

    ``fresh`` holds the keys for the part before the new cut-points, the
    regions between them and the part after, in that order.  On an empty
    circle the before and after parts coincide and ``fresh[-1]`` is unused.
    Returns ``(old_key, new_regions)``.
    """
    before, middles, after = fresh[0], fresh[1:-1], fresh[-1]
    if circle and k == 0:
        return regs[0], [before] + middles
    if not circle or 0 < slot < k:
        return regs[slot], regs[:slot] + [before] + middles + [after] + regs[slot + 1:]
    if slot == 0:
        return regs[0], [before] + middles + [after] + regs[1:]
    return regs[0], [after] + regs[1:] + [before] + middles


def delete_regions(regs: list, circle: bool, k: int, s: int, m: int, merged):
    """Region list after removing cut-points ``s .. s+m-1``.

    Returns ``(before, middles, after, new_regions)`` where ``before`` and
    ``after`` are the regions that ``merged`` replaces.
    """
    before, middles = regs[s], regs[s + 1:s + m]
    if not circle:
        return before, middles, regs[s + m], regs[:s] + [merged] + regs[s + m + 1:]
    after = regs[(s + m) % k]
    if m == k:
        return before, middles, after, [merged]
    if s + m < k:
        return before, middles, after, regs[:s] + [merged] + regs[s + m + 1:]
    return before, middles, after, [merged] + regs[1:s]


class _Work:
    """Mutable editing form: regions are keys, labels point at keys."""

    def __init__(self, d: CutDiagram):
        self.kinds = list(d.skeleton.components)
        self.name = d.name
        self.regions = [
            [("o", i, j) for j in range(region_count(d, i))] for i in range(1, d.n + 1)
        ]
        self.points = [
            [[cp.sign, ("o",) + tuple(cp.label), (i, p)] for p, cp in enumerate(d.points(i))]
            for i in range(1, d.n + 1)
        ]
        self._fresh = itertools.count()

    def fresh(self):
        return ("n", next(self._fresh))

    def is_circle(self, i: int) -> bool:
        return self.kinds[i - 1] == "circle"

    def split(self, i: int, slot: int, new_points: int):
        """Open ``new_points`` consecutive slots; returns (old, before, middles, after)."""
        k = len(self.points[i - 1])
        fresh = [self.fresh() for _ in range(new_points + 1)]
        old, regs = split_regions(self.regions[i - 1], self.is_circle(i), k, slot, fresh)
        self.regions[i - 1] = regs
        after = fresh[0] if self.is_circle(i) and k == 0 else fresh[-1]
        return old, fresh[0], fresh[1:-1], after

    def insert_points(self, i: int, slot: int, new: list):
        pts = self.points[i - 1]
        self.points[i - 1] = pts[:slot] + new + pts[slot:]

    def delete(self, i: int, s: int, m: int):
        """Remove cut-points ``s .. s+m-1``; returns (before, middles, after, merged)."""
        merged = self.fresh()
        before, middles, after, regs = delete_regions(
            self.regions[i - 1], self.is_circle(i), len(self.points[i - 1]), s, m, merged
        )
        self.regions[i - 1] = regs
        pts = self.points[i - 1]
        self.points[i - 1] = pts[:s] + pts[s + m:]
        for comp in self.points:
            for pt in comp:
                if pt[1] in (before, after):
                    pt[1] = merged
        return before, middles, after, merged

    def key_refs(self) -> dict:
        return {
            key: RegionRef(i, j)
            for i, regs in enumerate(self.regions, start=1)
            for j, key in enumerate(regs)
        }

    def to_diagram(self) -> CutDiagram:
        refs = self.key_refs()
        cps = []
        for comp in self.points:
            row = []
            for sign, key, _ in comp:
                if key not in refs:
                    raise MoveError(f"label {key} refers to a region that no longer exists")
                row.append(CutPoint(sign, refs[key]))
            cps.append(tuple(row))
        return CutDiagram(Skeleton(tuple(self.kinds)), tuple(cps), self.name)


def split_region(d: CutDiagram, i: int, slot: int) -> RegionRef:
    k = len(d.points(i))
    if not 0 <= slot <= k:
        raise MoveError(f"slot {slot} out of range on component {i}")
    if d.is_circle(i):
        return RegionRef(i, slot % k if k else 0)
    return RegionRef(i, slot)


def _key(ref: RegionRef):
    return ("o",) + tuple(ref)


def _check_component(d: CutDiagram, i: int):
    if not 1 <= i <= d.n:
        raise MoveError(f"component {i} out of range")


def _middle_unlabeled(d: CutDiagram, i: int, p: int) -> bool:
    return RegionRef(i, p + 1) not in d.labels_used()


def r3_targets(d: CutDiagram, i: int, p: int, mover: str) -> list[RegionRef]:
    """Possible new labels for the relabeled cut-point of an R3 at ``p``."""
    pts = d.points(i)
    first, second = pts[p], pts[p + 1]
    x, y = (second, first) if mover == "first" else (first, second)
    c, eps, a = x.label, x.sign, y.label
    out = []
    for zi, zp, z in d.iter_points():
        if zi == i and zp in (p, p + 1):
            continue
        if z.label != c:
            continue
        inc, outg = d.incoming(zi, zp), d.outgoing(zi, zp)
        if mover == "second":
            if z.sign == eps and outg == a:
                out.append(inc)
            elif z.sign == -eps and inc == a:
                out.append(outg)
        else:
            if z.sign == eps and inc == a:
                out.append(outg)
            elif z.sign == -eps and outg == a:
                out.append(inc)
    return sorted(set(out))


def _resolve_label(d: CutDiagram, m: MoveInstance, split: RegionRef, before, after):
    """Key of an insertion's label in the working form."""
    if m.label is None or m.label == split:
        if m.side not in ("before", "after"):
            raise MoveError("label on the split region needs side=before|after")
        return before if m.side == "before" else after
    if not 0 <= m.label.region < region_count(d, m.label.component):
        raise MoveError(f"label {m.label} out of range")
    return _key(m.label)


def apply_move(d: CutDiagram, m: MoveInstance) -> CutDiagram:
    return _apply(d, m)[0]


def _apply(d: CutDiagram, m: MoveInstance):
    _check_component(d, m.component)
    i = m.component
    pts = d.points(i)
    k = len(pts)
    w = _Work(d)

    if m.kind in INSERTIONS:
        if m.sign not in (1, -1):
            raise MoveError("insertion needs a sign")
        split = split_region(d, i, m.position)
        if m.kind == SV_PLUS and m.label is not None and m.label.component != i:
            raise MoveError("SV labels must lie on the same component")
        if m.kind == R1_PLUS and m.label not in (None, split):
            raise MoveError("R1 labels are one of the two new adjacent regions")
        for c, p in m.relabel:
            if d.points(c)[p].label != split:
                raise MoveError(f"cut-point {c}.{p} is not labeled by the split region")
        count = 2 if m.kind == R2_PLUS else 1
        old, before, middles, after = w.split(i, m.position, count)
        lab = _resolve_label(d, m, split, before, after)
        for comp in w.points:
            for pt in comp:
                if pt[1] == old:
                    pt[1] = after if pt[2] in m.relabel else before
        signs = [m.sign, -m.sign] if count == 2 else [m.sign]
        w.insert_points(i, m.position, [[s, lab, None] for s in signs])
        return w.to_diagram(), w

    if m.kind in DELETIONS:
        count = 2 if m.kind == R2_MINUS else 1
        p = m.position
        if not 0 <= p <= k - count:
            raise MoveError(f"position {p} out of range")
        if m.kind == R1_MINUS:
            if pts[p].label not in (d.incoming(i, p), d.outgoing(i, p)):
                raise MoveError("R1 needs a cut-point labeled by an adjacent region")
        elif m.kind == SV_MINUS:
            if pts[p].label.component != i:
                raise MoveError("SV needs a cut-point labeled on its own component")
        else:
            a, b = pts[p], pts[p + 1]
            if a.sign != -b.sign or a.label != b.label:
                raise MoveError("R2 needs opposite signs and equal labels")
            if not _middle_unlabeled(d, i, p):
                raise MoveError("R2 middle region occurs as a label")
        w.delete(i, p, count)
        return w.to_diagram(), w

    if m.kind == R3:
        p = m.position
        if not 0 <= p < k - 1:
            raise MoveError(f"position {p} out of range")
        if m.mover not in ("first", "second"):
            raise MoveError("R3 needs mover=first|second")
        if not _middle_unlabeled(d, i, p):
            raise MoveError("R3 middle region occurs as a label")
        if m.label not in r3_targets(d, i, p, m.mover):
            raise MoveError(f"no witness for R3 relabeling to {m.label}")
        row = w.points[i - 1]
        moving = row[p] if m.mover == "first" else row[p + 1]
        moving[1] = _key(m.label)
        row[p], row[p + 1] = row[p + 1], row[p]
        w.regions[i - 1][p + 1] = w.fresh()
        return w.to_diagram(), w

    raise MoveError(f"unknown move kind {m.kind!r}")


def inverse_move(d: CutDiagram, m: MoveInstance) -> MoveInstance:
    """The move undoing ``m`` on ``apply_move(d, m)``."""
    new, w = _apply(d, m)
    refs = w.key_refs()
    i, k = m.component, len(d.points(m.component))
    if m.kind in INSERTIONS:
        kind = {R1_PLUS: R1_MINUS, R2_PLUS: R2_MINUS, SV_PLUS: SV_MINUS}[m.kind]
        return MoveInstance(kind, i, m.position)
    if m.kind == R3:
        mover = "second" if m.mover == "first" else "first"
        moved = d.points(i)[m.position if m.mover == "first" else m.position + 1]
        return MoveInstance(R3, i, m.position, label=moved.label, mover=mover)

    count = 2 if m.kind == R2_MINUS else 1
    p = m.position
    kind = {R1_MINUS: R1_PLUS, R2_MINUS: R2_PLUS, SV_MINUS: SV_PLUS}[m.kind]
    slot = p if not (d.is_circle(i) and p + count == k) else k - count
    before, after = d.incoming(i, p), d.outgoing(i, p + count - 1)
    merged = split_region(new, i, slot)
    relabel = []
    for c, q, cp in d.iter_points():
        if c == i and p <= q < p + count:
            continue
        if cp.label == after and after != before:
            nq = q - count if (c == i and q > p) else q
            relabel.append((c, nq))
    lab = d.points(i)[p].label
    label, side = None, None
    if lab == before:
        side = "before"
    elif lab == after:
        side = "after"
    else:
        label = refs[_key(lab)]
    if kind != R1_PLUS and side is not None:
        label = merged
    sign = d.points(i)[p].sign
    return MoveInstance(kind, i, slot, sign, label, side, None, frozenset(relabel))


def _slots(d: CutDiagram, i: int) -> range:
    k = len(d.points(i))
    if d.is_circle(i) and k == 0:
        return range(1)
    return range(k + 1)


def _points_on(d: CutDiagram, region: RegionRef) -> list[tuple[int, int]]:
    return [(c, p) for c, p, cp in d.iter_points() if cp.label == region]


def _relabel_choices(d: CutDiagram, split: RegionRef, limit: int | None):
    pts = _points_on(d, split)
    if limit is not None and len(pts) > limit:
        return [frozenset(), frozenset(pts)] if pts else [frozenset()]
    return [
        frozenset(c)
        for size in range(len(pts) + 1)
        for c in itertools.combinations(pts, size)
    ]


def _label_options(d: CutDiagram, split: RegionRef, regions: Iterable[RegionRef]):
    for r in regions:
        if r == split:
            yield r, "before"
            if not (d.is_circle(r.component) and not d.points(r.component)):
                yield r, "after"
        else:
            yield r, None


def moves_by_kind(
    d: CutDiagram, kinds: Sequence[str] = TOPOLOGICAL, relabel_limit: int | None = 4
) -> dict[str, list[MoveInstance]]:
    """All applicable instances, grouped by kind.

    ``relabel_limit`` caps the enumeration of relabeling subsets: when more
    cut-points than that are labeled by a split region only the two extreme
    subsets are listed; ``0`` lists the empty subset only.
    """
    out: dict[str, list[MoveInstance]] = {kd: [] for kd in kinds}
    used = d.labels_used()
    everything = d.all_regions()
    for i in range(1, d.n + 1):
        pts = d.points(i)
        k = len(pts)
        for slot in _slots(d, i):
            split = split_region(d, i, slot)
            relabels = (
                [frozenset()] if relabel_limit == 0 else _relabel_choices(d, split, relabel_limit)
            )
            empty_circle = d.is_circle(i) and k == 0
            for sign in (1, -1):
                for rel in relabels:
                    if R1_PLUS in kinds:
                        for side in ("before",) if empty_circle else ("before", "after"):
                            out[R1_PLUS].append(
                                MoveInstance(R1_PLUS, i, slot, sign, None, side, relabel=rel)
                            )
                    if R2_PLUS in kinds:
                        for lab, side in _label_options(d, split, everything):
                            out[R2_PLUS].append(
                                MoveInstance(R2_PLUS, i, slot, sign, lab, side, relabel=rel)
                            )
                    if SV_PLUS in kinds:
                        for lab, side in _label_options(d, split, d.regions(i)):
                            out[SV_PLUS].append(
                                MoveInstance(SV_PLUS, i, slot, sign, lab, side, relabel=rel)
                            )
        for p, cp in enumerate(pts):
            if R1_MINUS in kinds and cp.label in (d.incoming(i, p), d.outgoing(i, p)):
                out[R1_MINUS].append(MoveInstance(R1_MINUS, i, p))
            if SV_MINUS in kinds and cp.label.component == i:
                out[SV_MINUS].append(MoveInstance(SV_MINUS, i, p))
        for p in range(k - 1):
            if RegionRef(i, p + 1) in used:
                continue
            a, b = pts[p], pts[p + 1]
            if R2_MINUS in kinds and a.sign == -b.sign and a.label == b.label:
                out[R2_MINUS].append(MoveInstance(R2_MINUS, i, p))
            if R3 in kinds:
                for mover in ("first", "second"):
                    for target in r3_targets(d, i, p, mover):
                        out[R3].append(MoveInstance(R3, i, p, label=target, mover=mover))
    return out


def enumerate_moves(
    d: CutDiagram, kinds: Sequence[str] = TOPOLOGICAL, relabel_limit: int | None = 4
) -> list[MoveInstance]:
    """Applicable moves, sorted by component, position and kind.

    SV moves are listed only when asked for in ``kinds``: they change the
    diagram's class and would break the topological invariance checks.
    """
    groups = moves_by_kind(d, kinds, relabel_limit)
    return sorted(
        (m for ms in groups.values() for m in ms), key=MoveInstance.sort_key
    )


def random_move(d: CutDiagram, rng: random.Random, kinds: Sequence[str] = TOPOLOGICAL):
    """Pick a kind uniformly among those with an instance, then an instance.

    Insertions get a uniformly random relabeling subset.
    """
    groups = {kd: ms for kd, ms in moves_by_kind(d, kinds, relabel_limit=0).items() if ms}
    if not groups:
        return None
    kind = rng.choice(sorted(groups, key=KIND_ORDER.index))
    m = rng.choice(groups[kind])
    if kind in INSERTIONS:
        split = split_region(d, m.component, m.position)
        rel = frozenset(pt for pt in _points_on(d, split) if rng.random() < 0.5)
        m = MoveInstance(m.kind, m.component, m.position, m.sign, m.label, m.side, None, rel)
    return m


def random_walk_trace(
    d: CutDiagram, steps: int, seed: int, kinds: Sequence[str] = TOPOLOGICAL
) -> tuple[CutDiagram, list[MoveInstance]]:
    rng = random.Random(seed)
    applied = []
    for _ in range(steps):
        m = random_move(d, rng, kinds)
        if m is None:
            continue
        d = apply_move(d, m)
        applied.append(m)
    return d, applied


def random_walk(d: CutDiagram, steps: int, seed: int, kinds: Sequence[str] = TOPOLOGICAL) -> CutDiagram:
    """Apply ``steps`` random moves; reproducible from ``(d, steps, seed)``."""
    return random_walk_trace(d, steps, seed, kinds)[0]
