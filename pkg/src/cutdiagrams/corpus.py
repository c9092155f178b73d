"""Bundled example diagrams and certificates."""

from __future__ import annotations

from importlib import resources

from .core import CutDiagram

# Gauss codes of the classical examples; the Whitehead link and the
# Borromean rings are closures of the 3-braids s1 s1 s2^-1 s1 s2^-1 and
# (s1 s2^-1)^3.
GAUSS_CODES = {
    "trefoil": "O1+ U2+ O3+ U1+ O2+ U3+",
    "hopf": "O1+ U2+; O2+ U1+",
    "whitehead": "O1+ U2+ O4+ U5- O3- U4+; U1+ O2+ U3- O5-",
    "borromean": "O1+ U2- O4- U5+; U1+ O3+ U4- O6-; O2- U3+ O5+ U6-",
}

# R- and SV-moves taking the Whitehead link to the 2-component unlink.
WHITEHEAD_TO_UNLINK = [
    "R1+@1:0:+:before",
    "R3@1:0:second:2.0",
    "SV-@1:1",
    "SV-@1:2",
    "R2-@1:0",
    "R2-@2:0",
]


def _data():
    return resources.files("cutdiagrams") / "data"


def names() -> list[str]:
    return sorted(p.name[:-4] for p in _data().iterdir() if p.name.endswith(".cut"))


def certificate_names() -> list[str]:
    return sorted(p.name[:-5] for p in _data().iterdir() if p.name.endswith(".cmov"))


def text(filename: str) -> str:
    return (_data() / filename).read_text(encoding="utf-8")


def load(name: str) -> CutDiagram:
    from .parse_io import parse_cut

    try:
        return parse_cut(text(f"{name}.cut"))
    except FileNotFoundError:
        raise KeyError(f"no bundled diagram named {name!r}") from None


def load_certificate(name: str):
    from .parse_io import parse_certificate

    return parse_certificate(text(f"{name}.cmov"))
