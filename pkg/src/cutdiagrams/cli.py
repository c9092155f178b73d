"""Command-line interface.

Exit codes: 0 success/equal/accepted, 2 parse error, 3 invariants differ,
4 certificate rejected.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus
from .concordance import MODES, Certificate, boundaries, build_slice, build_sv_trace, build_trace, verify
from .core import CutDiagram
from .magnus import milnor_table, reduced_milnor_table
from .moves import SELF_VIRTUAL, TOPOLOGICAL, format_move, parse_move, random_walk_trace
from .parse_io import ParseError, parse_certificate, parse_cut, parse_gauss, write_certificate, write_cut
from .peripheral import same_invariants

EXIT_OK, EXIT_PARSE, EXIT_DIFFER, EXIT_REJECTED = 0, 2, 3, 4


class _Failure(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_diagram(source: str) -> CutDiagram:
    """A ``.cut`` path, or the name of a bundled diagram."""
    path = Path(source)
    if path.exists():
        try:
            return parse_cut(path.read_text(encoding="utf-8"))
        except ParseError as err:
            raise _Failure(EXIT_PARSE, f"{source}: {err}") from None
    try:
        return corpus.load(source)
    except KeyError:
        raise _Failure(EXIT_PARSE, f"{source}: no such file or bundled diagram") from None


def _resolver(base: Path):
    def resolve(name: str) -> CutDiagram:
        local = base / f"{name}.cut"
        if local.exists():
            return parse_cut(local.read_text(encoding="utf-8"))
        return corpus.load(name)

    return resolve


def _read_certificate(source: str) -> Certificate:
    path = Path(source)
    try:
        if path.exists():
            text, base = path.read_text(encoding="utf-8"), path.parent
        else:
            text, base = corpus.text(f"{source}.cmov"), Path(".")
        return parse_certificate(text, _resolver(base))
    except ParseError as err:
        raise _Failure(EXIT_PARSE, f"{source}: {err}") from None
    except (FileNotFoundError, IsADirectoryError):
        raise _Failure(EXIT_PARSE, f"{source}: no such file or bundled certificate") from None


def _emit(args, text_lines: list[str], document: dict):
    if args.format == "machine":
        print(json.dumps(document, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _diagram_doc(d: CutDiagram) -> dict:
    return {
        "name": d.name,
        "components": [
            {
                "index": i,
                "kind": d.kind(i),
                "cutpoints": [{"sign": cp.sign, "label": str(cp.label)} for cp in d.points(i)],
            }
            for i in range(1, d.n + 1)
        ],
    }


def cmd_parse(args) -> int:
    if args.gauss:
        try:
            d = parse_gauss(args.input, args.name)
        except ParseError as err:
            raise _Failure(EXIT_PARSE, str(err)) from None
    else:
        d = _read_diagram(args.input)
    _emit(args, write_cut(d).splitlines(), {"diagram": _diagram_doc(d)})
    return EXIT_OK


def cmd_invariants(args) -> int:
    d = _read_diagram(args.input)
    table = (reduced_milnor_table if args.reduced else milnor_table)(d, args.maxlen)
    _emit(
        args,
        table.lines(),
        {"diagram": d.name, "maxlen": table.maxlen, "reduced": args.reduced, "table": table.as_records()},
    )
    return EXIT_OK


def cmd_compare(args) -> int:
    a, b = _read_diagram(args.first), _read_diagram(args.second)
    try:
        verdict = same_invariants(a, b, args.maxlen, reduced=args.reduced)
    except ValueError as err:
        raise _Failure(EXIT_PARSE, str(err)) from None
    _emit(
        args,
        [verdict.describe()],
        {
            "verdict": "differ" if verdict.distinguished else "equal",
            "witness": list(verdict.witness) if verdict.witness else None,
            "maxlen": verdict.maxlen,
            "reduced": args.reduced,
        },
    )
    return EXIT_DIFFER if verdict.distinguished else EXIT_OK


def cmd_fuzz(args) -> int:
    d = _read_diagram(args.input)
    kinds = TOPOLOGICAL + SELF_VIRTUAL if args.sv else TOPOLOGICAL
    table = reduced_milnor_table if args.sv else milnor_table
    reference = table(d, args.maxlen)
    failures, lines = [], []
    for trial in range(args.trials):
        seed = args.seed + trial
        final, applied = random_walk_trace(d, args.steps, seed, kinds)
        diff = reference.first_difference(table(final, args.maxlen))
        if diff is not None:
            failures.append({"seed": seed, "witness": list(diff), "moves": [format_move(m) for m in applied]})
            lines.append(f"FAIL seed {seed} at {' '.join(map(str, diff))}")
            lines.append("  moves: " + " ".join(format_move(m) for m in applied))
    lines.append(
        ("FAIL" if failures else "PASS")
        + f" {args.trials - len(failures)}/{args.trials} trials, {args.steps} steps each"
    )
    _emit(args, lines, {"result": "fail" if failures else "pass", "trials": args.trials, "failures": failures})
    return EXIT_DIFFER if failures else EXIT_OK


def cmd_slice(args) -> int:
    d = _read_diagram(args.input)
    cert = build_slice(d)
    report = verify(cert)
    text = write_certificate(cert).splitlines()
    _emit(args, text + [f"# {report.summary()}"], {"certificate": "\n".join(text), "verdict": report.summary()})
    return EXIT_OK if report else EXIT_REJECTED


def cmd_trace(args) -> int:
    d = _read_diagram(args.input)
    try:
        moves = [parse_move(m) for m in args.moves]
        cert = (build_sv_trace if args.sv else build_trace)(d, moves)
    except ValueError as err:
        raise _Failure(EXIT_PARSE, str(err)) from None
    final_name = None
    if args.final_out:
        out = Path(args.final_out)
        final_name = out.stem
        out.write_text(write_cut(cert.final.with_name(final_name)), encoding="utf-8")
    report = verify(cert)
    text = write_certificate(cert, final_name).splitlines()
    _emit(args, text + [f"# {report.summary()}"], {"certificate": "\n".join(text), "verdict": report.summary()})
    return EXIT_OK if report else EXIT_REJECTED


def cmd_verify(args) -> int:
    cert = _read_certificate(args.input)
    if args.mode:
        cert.mode = args.mode
    report = verify(cert)
    doc = {
        "accepted": report.accepted,
        "reason": report.reason,
        "event": report.event,
        "detail": report.detail,
    }
    lines = [report.summary()]
    if report.accepted:
        start, end = boundaries(cert)
        doc["boundaries"] = [_diagram_doc(start), _diagram_doc(end)]
        lines += ["final boundary:"] + ["  " + s for s in write_cut(end).splitlines()]
    _emit(args, lines, doc)
    return EXIT_OK if report else EXIT_REJECTED


def cmd_demo(args) -> int:
    lines, doc = [], {"diagrams": {}, "certificates": {}}
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for name in corpus.names():
        d = corpus.load(name)
        table = milnor_table(d, args.maxlen)
        doc["diagrams"][name] = {"diagram": _diagram_doc(d), "table": table.as_records()}
        lines.append(f"{name}: {len(table.nonzero())} nonzero Milnor numbers up to length {args.maxlen}")
        lines += ["  " + s for s in table.lines()]
        if out:
            (out / f"{name}.cut").write_text(write_cut(d), encoding="utf-8")
    for name in corpus.certificate_names():
        cert = corpus.load_certificate(name)
        report = verify(cert)
        doc["certificates"][name] = report.summary()
        lines.append(f"{name}: {report.summary()}")
        if out:
            (out / f"{name}.cmov").write_text(corpus.text(f"{name}.cmov"), encoding="utf-8")
    hopf_slice = verify(build_slice(corpus.load("hopf")))
    doc["certificates"]["hopf-slice"] = hopf_slice.summary()
    lines.append(f"hopf-slice: {hopf_slice.summary()}")
    _emit(args, lines, doc)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "machine"), default="text")

    parser = argparse.ArgumentParser(prog="cutdiagrams", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", parents=[common], help="print a diagram in canonical .cut form")
    p.add_argument("input", help=".cut file, bundled name, or Gauss code with --gauss")
    p.add_argument("--gauss", action="store_true", help="treat INPUT as a Gauss code")
    p.add_argument("--name", default="D")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("invariants", parents=[common], help="Milnor table of a diagram")
    p.add_argument("input")
    p.add_argument("--maxlen", type=int, default=3)
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", parents=[common], help="compare Milnor tables of two diagrams")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--maxlen", type=int, default=3)
    p.add_argument("--reduced", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fuzz", parents=[common], help="random moves must preserve the invariants")
    p.add_argument("input")
    p.add_argument("--steps", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--maxlen", type=int, default=3)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--sv", action="store_true", help="include SV moves and compare reduced tables")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("slice", parents=[common], help="certificate killing every cut-point")
    p.add_argument("input")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("trace", parents=[common], help="certificate tracing a list of moves")
    p.add_argument("input")
    p.add_argument("moves", nargs="*", help="moves as kind@component:position[:params]")
    p.add_argument("--sv", action="store_true", help="reduced certificate (SV moves allowed)")
    p.add_argument("--final-out", help="also write the final diagram to this .cut file")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", parents=[common], help="check a .cmov certificate")
    p.add_argument("input")
    p.add_argument("--mode", choices=MODES, help="override the certificate's mode")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("demo", parents=[common], help="bundled examples and their certificates")
    p.add_argument("--out", help="directory to write the corpus files to")
    p.add_argument("--maxlen", type=int, default=4)
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except _Failure as err:
        print(f"error: {err}", file=sys.stderr)
        return err.code


if __name__ == "__main__":
    sys.exit(main())
