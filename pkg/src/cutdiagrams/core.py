"""Domain types for 1-dimensional cut-diagrams.

A cut-diagram lives on an ordered collection of oriented circles and
intervals.  Each component carries an ordered list of signed cut-points,
and every cut-point is labeled by a region, i.e. a connected piece of the
skeleton once all cut-points are removed.

Region numbering on component ``i`` with cut-points ``p_1 .. p_k``:

* interval: regions ``r_0 .. r_k``; ``r_0`` precedes ``p_1`` and ``r_j``
  follows ``p_j``.
* circle: regions ``r_0 .. r_{k-1}`` (a single ``r_0`` when ``k = 0``);
  ``r_0`` holds the basepoint and precedes ``p_1``, ``r_j`` follows ``p_j``
  for ``j < k`` and ``p_k`` wraps around into ``r_0``.

Components are numbered from 1, regions from 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

import numpy as np

CIRCLE = "circle"
INTERVAL = "interval"
KINDS = (CIRCLE, INTERVAL)


class RegionRef(NamedTuple):
    component: int
    region: int

    def __str__(self) -> str:
        return f"{self.component}.{self.region}"

    @classmethod
    def parse(cls, text: str) -> "RegionRef":
        comp, _, reg = text.partition(".")
        if not _ or not comp.isdigit() or not reg.isdigit():
            raise ValueError(f"bad region reference {text!r}")
        return cls(int(comp), int(reg))


class CutPoint(NamedTuple):
    sign: int
    label: RegionRef

    def __str__(self) -> str:
        return f"{'+' if self.sign > 0 else '-'} {self.label}"


@dataclass(frozen=True)
class Skeleton:
    components: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))

    def __len__(self) -> int:
        return len(self.components)

    def kind(self, i: int) -> str:
        return self.components[i - 1]

    @property
    def all_intervals(self) -> bool:
        return all(k == INTERVAL for k in self.components)


@dataclass(frozen=True)
class CutDiagram:
    """An immutable 1-dimensional cut-diagram.

    ``cutpoints[i - 1]`` is the tuple of cut-points of component ``i`` in
    orientation order from the basepoint.  The ``name`` is carried for
    serialization only and does not take part in equality.
    """

    skeleton: Skeleton
    cutpoints: tuple[tuple[CutPoint, ...], ...]
    name: str = field(default="D", compare=False)

    def __post_init__(self):
        cps = tuple(
            tuple(CutPoint(int(s), RegionRef(*lab)) for s, lab in comp)
            for comp in self.cutpoints
        )
        object.__setattr__(self, "cutpoints", cps)
        if len(cps) != len(self.skeleton):
            raise ValueError("one cut-point list per skeleton component is required")

    @classmethod
    def build(cls, kinds, cutpoints, name: str = "D") -> "CutDiagram":
        """Convenience constructor from plain tuples.

        >>> CutDiagram.build(["circle"], [[(1, (1, 0))]]).n
        1
        """
        return cls(Skeleton(tuple(kinds)), tuple(tuple(c) for c in cutpoints), name)

    @classmethod
    def empty(cls, skeleton: Skeleton | None = None, name: str = "D") -> "CutDiagram":
        skeleton = skeleton or Skeleton()
        return cls(skeleton, tuple(() for _ in skeleton.components), name)

    @property
    def n(self) -> int:
        return len(self.skeleton)

    def kind(self, i: int) -> str:
        return self.skeleton.kind(i)

    def is_circle(self, i: int) -> bool:
        return self.skeleton.kind(i) == CIRCLE

    def points(self, i: int) -> tuple[CutPoint, ...]:
        return self.cutpoints[i - 1]

    def num_cutpoints(self) -> int:
        return sum(len(c) for c in self.cutpoints)

    def regions(self, i: int) -> list[RegionRef]:
        return [RegionRef(i, j) for j in range(region_count(self, i))]

    def all_regions(self) -> list[RegionRef]:
        return [r for i in range(1, self.n + 1) for r in self.regions(i)]

    def incoming(self, i: int, p: int) -> RegionRef:
        """Region just before the (0-based) cut-point ``p`` of component ``i``."""
        return RegionRef(i, p)

    def outgoing(self, i: int, p: int) -> RegionRef:
        k = len(self.points(i))
        if self.is_circle(i) and p == k - 1:
            return RegionRef(i, 0)
        return RegionRef(i, p + 1)

    def iter_points(self) -> Iterator[tuple[int, int, CutPoint]]:
        for i, comp in enumerate(self.cutpoints, start=1):
            for p, cp in enumerate(comp):
                yield i, p, cp

    def labels_used(self) -> set[RegionRef]:
        return {cp.label for _, _, cp in self.iter_points()}

    def with_name(self, name: str) -> "CutDiagram":
        return CutDiagram(self.skeleton, self.cutpoints, name)


def region_count(d: CutDiagram, i: int) -> int:
    if not 1 <= i <= d.n:
        raise IndexError(f"component {i} out of range 1..{d.n}")
    k = len(d.cutpoints[i - 1])
    if d.is_circle(i):
        return max(k, 1)
    return k + 1


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_diagram(d: CutDiagram) -> ValidationReport:
    report = ValidationReport()
    for i, kind in enumerate(d.skeleton.components, start=1):
        if kind not in KINDS:
            report.violations.append(f"component {i}: unknown kind {kind!r}")
    for i, p, cp in d.iter_points():
        where = f"component {i} cut-point {p}"
        if cp.sign not in (1, -1):
            report.violations.append(f"{where}: sign {cp.sign} is not +1/-1")
        c, r = cp.label
        if not 1 <= c <= d.n:
            report.violations.append(f"{where}: component {c} out of range")
        elif not 0 <= r < region_count(d, c):
            report.violations.append(f"{where}: region {r} out of range")
    return report


def check_valid(d: CutDiagram) -> CutDiagram:
    report = validate_diagram(d)
    if not report.ok:
        raise ValueError("; ".join(report.violations))
    return d


def linking_matrix(d: CutDiagram) -> np.ndarray:
    """Signed label counts; entry ``[j-1, i-1]`` counts cut-points on
    component ``i`` labeled by a region of component ``j``."""
    m = np.zeros((d.n, d.n), dtype=np.int64)
    for i, _, cp in d.iter_points():
        m[cp.label.component - 1, i - 1] += cp.sign
    return m
