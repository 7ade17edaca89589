"""Command-line front end.

Exit codes: 0 success, 1 analysis failure, 2 input or parse error,
3 internal schema violation.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import report
from .augmentation import augment, flatten
from .bounds import (certify, verify_must_meet_circle, verify_one_cusp_forces_K,
                     verify_three_circles)
from .diagram import DiagramError, check_hypotheses, parse_pd
from .normal import Constraints, enumerate_normal_curves
from .polyhedral import DecompositionError, boundary_complex, decompose
from .render import OverlayError, render_svg

COMMANDS = ("analyze", "augment", "decompose", "enumerate", "verify", "certify", "render")


class AnalysisFailure(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="artifact", description="Twist-region and normal-curve analysis of link diagrams")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("-i", "--input", required=True, help="PD code file ('-' for stdin)")
    p.add_argument("-o", "--output", help="report path (default stdout)")
    p.add_argument("--format", choices=("text", "structured"), default="structured")
    p.add_argument("--require-hypotheses", action="store_true",
                   help="fail with exit 1 unless t >= 2, h >= 6, prime and twist-reduced")
    p.add_argument("--max-boundary-visits", type=int, default=None, metavar="N")
    p.add_argument("--forbid-shaded", action="store_true", help="enumerate: avoid shaded faces")
    p.add_argument("--admissible", action="store_true",
                   help="enumerate: shaded arcs must run from the crossing-circle vertex")
    p.add_argument("--svg", metavar="PATH", help="render: write SVG here")
    p.add_argument("--overlay", action="append", default=[],
                   choices=("twist-regions", "crossing-circles"), help="render overlays")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _execute(cmd: str, d, args) -> tuple[dict, list[str]]:
    msgs: list[str] = []
    if cmd == "analyze":
        return report.analysis(d), msgs
    if cmd == "augment":
        a = augment(d)
        return {"augmented": a.as_dict(), "flat": flatten(a).as_dict()}, msgs
    if cmd == "decompose":
        dec = decompose(augment(d), require_valid=False)
        if not dec.valid:
            msgs.append("decomposition fails validation")
        return dec.as_dict(), msgs
    if cmd == "enumerate":
        dec = decompose(augment(d), require_valid=False)
        cons = Constraints(max_boundary_visits=args.max_boundary_visits,
                           forbid_shaded=args.forbid_shaded,
                           shaded_arcs_from_circle=args.admissible)
        curves = enumerate_normal_curves(boundary_complex(dec.polyhedra[0]), cons)
        return {"constraints": cons.as_dict(), "count": len(curves),
                "curves": [c.as_dict() for c in curves]}, msgs
    if cmd == "verify":
        hyp = check_hypotheses(d)
        dec = decompose(augment(d), require_valid=False)
        evs = [v(dec, binding=hyp.hypotheses_met) for v in
               (verify_must_meet_circle, verify_one_cusp_forces_K, verify_three_circles)]
        return {"hypotheses": hyp.as_dict(), "evidence": [e.as_dict() for e in evs]}, msgs
    if cmd == "certify":
        cert = certify(d)
        return cert.as_dict(), msgs
    if cmd == "render":
        overlays = {"twist_regions": "twist-regions" in args.overlay,
                    "crossing_circles": "crossing-circles" in args.overlay}
        svg = render_svg(d, overlays)
        if args.svg:
            Path(args.svg).write_text(svg)
        else:
            msgs.append("no --svg path given; SVG not written")
        return {"svg_path": args.svg, "bytes": len(svg.encode()),
                "crossings": svg.count('class="crossing"'),
                "regions": svg.count('class="twist-region"')}, msgs
    raise AssertionError(cmd)


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0

    try:
        d = parse_pd(_read(args.input))
    except OSError as exc:
        print(f"error: cannot read {args.input}: {exc.strerror or exc}", file=stderr)
        return 2
    except DiagramError as exc:
        print(f"error: {exc}", file=stderr)
        return 2

    status, code = "ok", 0
    msgs: list[str] = []
    try:
        result, msgs = _execute(args.command, d, args)
    except (DecompositionError, DiagramError, OverlayError, ValueError) as exc:
        result, status, code = {}, "analysis-failure", 1
        msgs = [str(exc)]
        if args.command in ("analyze", "verify", "certify", "decompose", "enumerate"):
            result = _fallback(args.command, d)
    if args.require_hypotheses and not check_hypotheses(d).hypotheses_met:
        status, code = "analysis-failure", 1
        msgs.append("hypotheses not met")

    try:
        rep = report.make_report(args.command, result, status=status, messages=msgs,
                                 source=d.serialize())
    except report.SchemaViolation as exc:
        print(f"internal error: report violates schema: {exc}", file=stderr)
        return 3

    text = report.dumps(rep) if args.format == "structured" else report.to_text(rep)
    if args.output:
        Path(args.output).write_text(text)
    else:
        stdout.write(text)
    for m in msgs:
        print(f"note: {m}", file=stderr)
    return code


def _fallback(cmd: str, d) -> dict:
    # analysis failures still produce a schema-valid result where one exists
    hyp = check_hypotheses(d).as_dict()
    if cmd == "verify":
        return {"hypotheses": hyp, "evidence": []}
    if cmd == "analyze":
        return report.analysis(d)
    if cmd == "enumerate":
        return {"constraints": {}, "count": 0, "curves": []}
    if cmd == "decompose":
        return {"polyhedra": [{}, {}], "gluings": [], "validation": [], "isomorphic": False}
    return {"diagram": {"pd": d.serialize()}, "hypotheses": hyp, "binding": False,
            "closed": {"b": 0, "chi_bound": None, "genus_bound": 0},
            "meridional": {"cases": [], "chi_bound": None, "visible_spheres": []},
            "evidence": []}


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
