"""Lemma verifiers by exhaustive enumeration, and Euler characteristic bounds.

The verifiers check disk-level statements on the truncated polyhedra: they
enumerate every normal curve in a restricted universe and report the ones
violating the expected pattern.  An empty counterexample list means the
statement holds for that decomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .augmentation import augment
from .diagram import Diagram, DiagramError, HypothesisReport, check_hypotheses
from .normal import (CIRCLE, Constraints, CurveError, NormalCurve, comb_length,
                     enumerate_normal_curves, project_curve)
from .polyhedral import (BoundaryComplex, Decomposition, DecompositionError,
                         boundary_complex, decompose)

CLOSED, MERIDIONAL = "closed", "meridional"


@dataclass
class LemmaEvidence:
    lemma: str
    statement: str
    universe: dict
    searched: int = 0
    counterexamples: list[NormalCurve] = field(default_factory=list)
    interpretations: list[dict | None] = field(default_factory=list)
    binding: bool = True

    @property
    def verified(self) -> bool:
        return not self.counterexamples

    def as_dict(self):
        return {
            "lemma": self.lemma,
            "statement": self.statement,
            "universe": self.universe,
            "searched": self.searched,
            "verified": self.verified,
            "binding": self.binding,
            "counterexamples": [
                {"curve": c.as_dict(), "projection": i}
                for c, i in zip(self.counterexamples, self.interpretations)
            ],
        }


def _complexes(x) -> list[BoundaryComplex]:
    if isinstance(x, Decomposition):
        # P and P' carry the same cells; the second copy is kept for symmetry
        return [boundary_complex(p) for p in x.polyhedra]
    if isinstance(x, BoundaryComplex):
        return [x]
    return list(x)


def _projection(c: NormalCurve):
    try:
        return project_curve(c)
    except CurveError:
        return None


def _run(lemma, statement, x, cons: Constraints, bad, note, binding=True) -> LemmaEvidence:
    ev = LemmaEvidence(lemma, statement, {**cons.as_dict(), "filter": note}, binding=binding)
    seen = set()
    for bc in _complexes(x):
        curves = enumerate_normal_curves(bc, cons)
        ev.searched += len(curves)
        for c in curves:
            if bad(c) and (id(bc), c.key) not in seen:
                seen.add((id(bc), c.key))
                ev.counterexamples.append(c)
                ev.interpretations.append(_projection(c))
    return ev


def verify_must_meet_circle(x, binding=True) -> LemmaEvidence:
    """No normal curve avoids both the shaded faces and the boundary faces."""
    cons = Constraints(forbid_shaded=True, forbid_boundary=True)
    return _run("must_meet_circle",
                "every normal curve meets a shaded face or a boundary face",
                x, cons, lambda c: True, "none", binding)


def verify_one_cusp_forces_K(x, binding=True) -> LemmaEvidence:
    """A normal disk meeting exactly one crossing-circle cusp also meets a
    knot cusp.  Universe: shaded arcs run from the circle vertex to the
    opposite edge, exactly one boundary visit, at a crossing circle."""
    cons = Constraints(max_boundary_visits=1, allowed_cusps=frozenset({CIRCLE}),
                       shaded_arcs_from_circle=True)
    return _run("one_cusp_forces_K",
                "a curve meeting exactly one crossing-circle cusp meets a knot cusp",
                x, cons, lambda c: len(c.circle_segments) == 1,
                "exactly one crossing-circle visit and no knot visit", binding)


def verify_three_circles(x, binding=True) -> LemmaEvidence:
    """No curve through white faces has s-parallel segments in exactly two
    crossing-circle cusps while avoiding the knot cusps."""
    cons = Constraints(forbid_shaded=True, max_boundary_visits=2,
                       allowed_cusps=frozenset({CIRCLE}))
    return _run("three_circles",
                "no white curve meets exactly two crossing-circle cusps and no knot cusp",
                x, cons, lambda c: len({s.circle for s in c.circle_segments}) == 2,
                "exactly two distinct crossing-circle visits, no knot visit", binding)


def length_bound_violations(x) -> list[tuple[NormalCurve, Fraction]]:
    """Admissible disks whose length falls below max(pi/n, pi/3)."""
    out = []
    for bc in _complexes(x)[:1]:
        for c in enumerate_normal_curves(bc, Constraints(shaded_arcs_from_circle=True)):
            k = len(c.circle_segments)
            if not k:
                continue
            ell = comb_length(c)[0][1]
            if ell < max(Fraction(1, k), Fraction(1, 3)):
                out.append((c, ell))
    return out


# -- bounds --------------------------------------------------------------------

def min_boundary_count(is_knot: bool, surface_class: str = CLOSED):
    """Least number of crossing-circle boundary components of the punctured surface."""
    if surface_class == CLOSED:
        return 12 if is_knot else 6
    if surface_class == MERIDIONAL:
        return [0, 2, 4, "6+"]
    raise ValueError(f"unknown surface class {surface_class!r}")


def _per_segment(b: int) -> Fraction:
    """Lower bound on the length of each crossing-circle segment, in units of pi."""
    if b == 2:
        return Fraction(1)
    if b == 4:
        return Fraction(1, 2)
    return Fraction(1, 3)


def chi_bound(h: int, is_knot: bool, surface_class: str = CLOSED, b_case=None) -> Fraction | None:
    """Upper bound on the Euler characteristic.

    Each of the b boundary curves on crossing-circle cusps has at least h + 1
    segments, each of length at least lambda(b) * pi, and area = -2pi(chi - b),
    so chi <= b (1 - (h + 1) lambda / 2).  Returns None for b = 0, where the
    alternative is a visible sphere.
    """
    if h < 1:
        raise ValueError("height must be at least 1")
    if surface_class == CLOSED:
        b = min_boundary_count(is_knot, CLOSED)
    elif surface_class == MERIDIONAL:
        if b_case in (0, "0"):
            return None
        b = 6 if b_case in ("6+", None) else int(b_case)
        if b not in (2, 4) and b < 6:
            raise ValueError(f"boundary count {b_case} is not 0, 2, 4 or 6+")
        b = min(b, 6) if b >= 6 else b
    else:
        raise ValueError(f"unknown surface class {surface_class!r}")
    return b * (1 - (h + 1) * _per_segment(b) / 2)


def genus_bound(chi: Fraction | int, punctures: int = 0, orientable: bool = True) -> int:
    """Smallest genus g with 2 - 2g - punctures <= chi."""
    if not orientable:
        raise ValueError("non-orientable surfaces are not supported")
    return max(0, math.ceil(Fraction(2 - punctures - Fraction(chi), 2)))


def visible_meridional_spheres(d: Diagram) -> list[dict]:
    """Simple closed curves in the projection plane avoiding the twist regions.

    Such a curve runs through non-bigon faces and crosses strands not bounding
    a bigon; it is a simple cycle in that dual graph.  n is the number of
    points where it meets the link.
    """
    if not d.is_connected:
        raise DiagramError("diagram is disconnected")
    bigon_edges = {e for f in d.faces if f.is_bigon for e, _ in f.boundary}
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in sorted(set(d.edges) - bigon_edges):
        f, g = d.edge_faces(e)
        if f == g:
            continue
        adj.setdefault(f, []).append((e, g))
        adj.setdefault(g, []).append((e, f))
    cycles = set()

    def dfs(start, cur, faces, edges):
        for e, g in adj.get(cur, ()):
            if e in edges:
                continue
            if g == start and len(edges) >= 1:
                cyc = edges + [e]
                cycles.add((tuple(sorted(cyc)), tuple(sorted(faces))))
                continue
            if g in faces or g < start:
                continue
            dfs(start, g, faces + [g], edges + [e])

    for f in sorted(adj):
        dfs(f, f, [f], [])
    out = []
    for edges, faces in sorted(cycles, key=lambda c: (len(c[0]), c)):
        n = len(edges)
        out.append({"punctures": n, "strands": list(edges), "regions": list(faces),
                    "inessential_candidate": n == 2})
    return out


@dataclass
class BoundCertificate:
    diagram: dict
    hypotheses: HypothesisReport
    evidence: list[LemmaEvidence]
    closed: dict
    meridional: dict
    errors: list[str] = field(default_factory=list)

    @property
    def binding(self) -> bool:
        return self.hypotheses.hypotheses_met and not self.errors and \
            all(e.verified for e in self.evidence) and len(self.evidence) == 3

    def as_dict(self):
        return {
            "diagram": self.diagram,
            "hypotheses": self.hypotheses.as_dict(),
            "binding": self.binding,
            "closed": self.closed,
            "meridional": self.meridional,
            "evidence": [e.as_dict() for e in self.evidence],
            "errors": self.errors,
        }


def _frac(x):
    return None if x is None else str(x)


def certify(d: Diagram) -> BoundCertificate:
    """Check hypotheses, decompose, verify lemmas and compute both bounds."""
    hyp = check_hypotheses(d)
    errors: list[str] = []
    evidence: list[LemmaEvidence] = []
    try:
        dec = decompose(augment(d), require_valid=False)
        if not dec.valid:
            errors.append("decomposition fails validation")
        for verify in (verify_must_meet_circle, verify_one_cusp_forces_K, verify_three_circles):
            evidence.append(verify(dec, binding=hyp.hypotheses_met))
    except (DiagramError, DecompositionError) as exc:
        errors.append(str(exc))

    h = max(hyp.h, 1)
    b = min_boundary_count(hyp.is_knot, CLOSED)
    chi = chi_bound(h, hyp.is_knot, CLOSED)
    closed = {"b": b, "chi_bound": _frac(chi), "genus_bound": genus_bound(chi)}
    cases = []
    for bc in min_boundary_count(hyp.is_knot, MERIDIONAL):
        c = chi_bound(h, hyp.is_knot, MERIDIONAL, bc)
        cases.append({"b": bc, "chi_bound": _frac(c),
                      "alternative": "visible sphere" if c is None else None})
    worst = max(Fraction(c["chi_bound"]) for c in cases if c["chi_bound"] is not None)
    try:
        spheres = visible_meridional_spheres(d)
    except DiagramError as exc:
        spheres = []
        errors.append(str(exc))
    meridional = {"cases": cases, "chi_bound": _frac(worst), "visible_spheres": spheres}
    summary = {"pd": d.serialize(), "crossings": len(d.crossings), "t": hyp.t, "h": hyp.h,
               "components": len(d.components)}
    return BoundCertificate(summary, hyp, evidence, closed, meridional, errors)
