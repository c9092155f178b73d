"""Text formats: ``.cut`` diagrams, Gauss codes and ``.cmov`` certificates.

``.cut``::

    diagram hopf
    # comments start with '#'
    component 1 circle
    + 2.0
    end
    component 2 circle
    + 1.0
    end

``.cmov``::

    from trefoil
    mode strict
    to empty            # optional claimed final diagram
    events
    vdeath 1 0
    end

Gauss codes are written one component per line (or separated by ``;``),
optionally prefixed with ``circle:`` or ``interval:``; tokens look like
``O1+`` / ``U2-``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

from .concordance import EVENT_KINDS, MODES, SV_EVENTS, Certificate, Event
from .core import CIRCLE, INTERVAL, KINDS, CutDiagram, CutPoint, RegionRef, Skeleton, validate_diagram


class ParseError(ValueError):
    """Malformed input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def _lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


# -- .cut ---------------------------------------------------------------------

def parse_cut(text: str) -> CutDiagram:
    name = None
    kinds: list[str] = []
    comps: list[list[CutPoint]] = []
    current: list[CutPoint] | None = None
    line_of_point: list[int] = []
    for number, line in _lines(text):
        words = line.split()
        if name is None:
            if words[0] != "diagram" or len(words) != 2:
                raise ParseError("expected 'diagram NAME'", number)
            name = words[1]
            continue
        if current is None:
            if words[0] != "component" or len(words) != 3:
                raise ParseError("expected 'component INDEX KIND'", number)
            if words[1] != str(len(kinds) + 1):
                raise ParseError(f"components must be numbered in order, expected {len(kinds) + 1}", number)
            if words[2] not in KINDS:
                raise ParseError(f"unknown component kind {words[2]!r}", number)
            kinds.append(words[2])
            current = []
            continue
        if words == ["end"]:
            comps.append(current)
            current = None
            continue
        if len(words) != 2 or words[0] not in ("+", "-"):
            raise ParseError(f"expected '+|- i.j', got {line!r}", number)
        try:
            ref = RegionRef.parse(words[1])
        except ValueError as err:
            raise ParseError(str(err), number) from None
        current.append(CutPoint(1 if words[0] == "+" else -1, ref))
        line_of_point.append(number)
    if name is None:
        raise ParseError("empty input")
    if current is not None:
        raise ParseError(f"component {len(kinds)} is missing 'end'")
    d = CutDiagram(Skeleton(tuple(kinds)), tuple(tuple(c) for c in comps), name)
    report = validate_diagram(d)
    if not report.ok:
        raise ParseError("; ".join(report.violations))
    return d


def write_cut(d: CutDiagram) -> str:
    out = [f"diagram {d.name}"]
    for i in range(1, d.n + 1):
        out.append(f"component {i} {d.kind(i)}")
        out.extend(str(cp) for cp in d.points(i))
        out.append("end")
    return "\n".join(out) + "\n"


# -- Gauss codes ----------------------------------------------------------------

_TOKEN = re.compile(r"([OU])(\d+)([+-])")


@dataclass(frozen=True)
class GaussToken:
    crossing: int
    role: str  # "O" or "U"
    sign: int

    def __str__(self) -> str:
        return f"{self.role}{self.crossing}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class GaussCode:
    """Per component, its kind and its tokens in orientation order."""

    components: tuple[tuple[str, tuple[GaussToken, ...]], ...]

    @classmethod
    def parse(cls, text: str) -> "GaussCode":
        comps = []
        for chunk in re.split(r"[;\n]", text):
            chunk = chunk.strip()
            if not chunk:
                continue
            kind = CIRCLE
            head, sep, rest = chunk.partition(":")
            if sep:
                if head.strip() not in KINDS:
                    raise ParseError(f"unknown component kind {head.strip()!r}")
                kind, chunk = head.strip(), rest
            body = re.sub(r"\s+", "", chunk)
            tokens = _TOKEN.findall(body)
            if "".join(o + c + s for o, c, s in tokens) != body:
                raise ParseError(f"bad Gauss code component {chunk.strip()!r}")
            comps.append(
                (kind, tuple(GaussToken(int(c), o, 1 if s == "+" else -1) for o, c, s in tokens))
            )
        return cls(tuple(comps))

    def __str__(self) -> str:
        return "; ".join(
            f"{kind}: " + " ".join(map(str, toks)) for kind, toks in self.components
        )


def parse_gauss(code: GaussCode | str, name: str = "D") -> CutDiagram:
    """Cut-diagram of a Gauss code: each undercrossing becomes a cut-point
    labeled by the region in which the matching overcrossing lies."""
    if isinstance(code, str):
        code = GaussCode.parse(code)
    seen: dict[int, dict[str, tuple[int, int, int]]] = {}
    for c, (_, toks) in enumerate(code.components, start=1):
        for t, tok in enumerate(toks):
            roles = seen.setdefault(tok.crossing, {})
            if tok.role in roles:
                raise ParseError(f"crossing {tok.crossing} has two {tok.role} tokens")
            roles[tok.role] = (c, t, tok.sign)
    for crossing, roles in seen.items():
        if set(roles) != {"O", "U"}:
            raise ParseError(f"crossing {crossing} is unmatched")
        if roles["O"][2] != roles["U"][2]:
            raise ParseError(f"crossing {crossing} has inconsistent signs")

    under_counts = [sum(tok.role == "U" for tok in toks) for _, toks in code.components]

    def region_of_tail(c: int, t: int) -> RegionRef:
        kind, toks = code.components[c - 1]
        before = sum(tok.role == "U" for tok in toks[:t])
        k = under_counts[c - 1]
        if kind == CIRCLE:
            return RegionRef(c, before % k if k else 0)
        return RegionRef(c, before)

    cps = []
    for c, (_, toks) in enumerate(code.components, start=1):
        row = []
        for tok in toks:
            if tok.role == "U":
                oc, ot, _ = seen[tok.crossing]["O"]
                row.append(CutPoint(tok.sign, region_of_tail(oc, ot)))
        cps.append(tuple(row))
    kinds = tuple(kind for kind, _ in code.components)
    return CutDiagram(Skeleton(kinds), tuple(cps), name)


# -- .cmov ----------------------------------------------------------------------

Resolver = Callable[[str], CutDiagram]


def _parse_event(words: list[str], number: int) -> Event:
    kind = words[0]
    if kind not in EVENT_KINDS:
        raise ParseError(f"unknown event kind {kind!r}", number)
    arity = {"product": 1, "vdeath": 3, "svdeath": 3, "max": 3}.get(kind, 5)
    if len(words) != arity:
        raise ParseError(f"{kind} takes {arity - 1} arguments", number)
    if kind == "product":
        return Event("product")
    try:
        comp, pos = int(words[1]), int(words[2])
        label = RegionRef.parse(words[4]) if arity == 5 else None
    except ValueError as err:
        raise ParseError(str(err), number) from None
    if arity == 3:
        return Event(kind, comp, pos)
    arg = words[3]
    if kind in ("vbirth", "svbirth"):
        if arg not in ("up", "down"):
            raise ParseError("direction must be up|down", number)
        return Event(kind, comp, pos, arg, label)
    if kind == "min":
        pair = tuple(arg.split("/"))
        if sorted(pair) != ["down", "up"]:
            raise ParseError("min directions must be up/down or down/up", number)
        return Event(kind, comp, pos, pair, label)
    if arg not in ("over", "under"):
        raise ParseError("pass needs over|under", number)
    return Event(kind, comp, pos, label=label, side=arg)


def parse_certificate(text: str, resolve: Resolver | None = None) -> Certificate:
    """Parse a ``.cmov`` file; ``resolve`` maps diagram names to diagrams
    (default: the bundled corpus)."""
    if resolve is None:
        from .corpus import load as resolve
    header: dict[str, tuple[str, int]] = {}
    events: list[Event] = []
    state = "header"
    for number, line in _lines(text):
        words = line.split()
        if state == "header":
            if words == ["events"]:
                state = "events"
                continue
            if len(words) != 2 or words[0] not in ("from", "mode", "to"):
                raise ParseError(f"unexpected header line {line!r}", number)
            if words[0] in header:
                raise ParseError(f"duplicate '{words[0]}'", number)
            header[words[0]] = (words[1], number)
        elif state == "events":
            if words == ["end"]:
                state = "done"
                continue
            events.append(_parse_event(words, number))
        else:
            raise ParseError("content after 'end'", number)
    if state != "done":
        raise ParseError("certificate must have 'events' ... 'end'")
    if "from" not in header:
        raise ParseError("missing 'from NAME'")
    mode, mode_line = header.get("mode", ("strict", None))
    if mode not in MODES:
        raise ParseError(f"unknown mode {mode!r}", mode_line)
    if mode == "strict":
        for ev in events:
            if ev.kind in SV_EVENTS:
                raise ParseError(f"{ev.kind} is only allowed in reduced mode")

    def lookup(key: str, base: CutDiagram | None = None) -> CutDiagram:
        name, number = header[key]
        if name == "empty" and base is not None:
            return CutDiagram.empty(base.skeleton, "empty")
        try:
            return resolve(name)
        except (KeyError, FileNotFoundError, ValueError) as err:
            raise ParseError(f"cannot resolve diagram {name!r}: {err}", number) from None

    initial = lookup("from")
    final = lookup("to", initial) if "to" in header else None
    return Certificate(initial, events, mode, final)


def write_certificate(c: Certificate, final_name: str | None = None) -> str:
    """Serialize; the claimed final diagram is written as ``to NAME`` when a
    name is given (``empty`` for a diagram without cut-points)."""
    out = [f"from {c.initial.name}", f"mode {c.mode}"]
    if final_name is None and c.final is not None and c.final.num_cutpoints() == 0:
        final_name = "empty"
    if final_name:
        out.append(f"to {final_name}")
    out.append("events")
    out.extend(str(ev) for ev in c.events)
    out.append("end")
    return "\n".join(out) + "\n"
