"""Deterministic SVG pictures of diagrams with optional overlays."""

from __future__ import annotations

from xml.sax.saxutils import escape

import networkx as nx

from .diagram import Diagram

SCALE = 40
MARGIN = 30


class OverlayError(ValueError):
    pass


def layout(d: Diagram) -> dict:
    """Straight-line positions respecting the diagram's rotation system.

    Every edge is subdivided twice so the graph is simple; the embedding is
    built from the PD rotation (networkx stores clockwise neighbour order).
    """
    emb = nx.PlanarEmbedding()
    data = {}
    for i, x in enumerate(d.crossings):
        nbrs = []
        for j, e in enumerate(x):
            k = d.positions[e].index((i, j))
            nbrs.append(("e", e, k))
        data[("c", i)] = list(reversed(nbrs))
    for e, (p0, p1) in d.positions.items():
        data[("e", e, 0)] = [("c", p0[0]), ("e", e, 1)]
        data[("e", e, 1)] = [("e", e, 0), ("c", p1[0])]
    emb.set_data(data)
    emb.check_structure()
    pos = nx.combinatorial_embedding_to_pos(emb)
    return {k: (MARGIN + SCALE * x, MARGIN + SCALE * y) for k, (x, y) in pos.items()}


def _hull(points, pad=10.0):
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1, y0, y1 = min(xs) - pad, max(xs) + pad, min(ys) - pad, max(ys) + pad
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def _fmt(p):
    return f"{p[0]:.1f},{p[1]:.1f}"


def render_svg(d: Diagram, overlays: dict | None = None) -> str:
    """SVG text for ``d``.

    ``overlays`` keys: ``twist_regions`` and ``crossing_circles`` (True for
    all, or a list of region indices) and ``curves`` (lists of face indices).
    """
    overlays = overlays or {}
    regions = d.twist_regions
    pos = layout(d)

    def pick(key):
        sel = overlays.get(key)
        if sel is None or sel is False:
            return []
        if sel is True:
            return [r.index for r in regions]
        for r in sel:
            if not 0 <= r < len(regions):
                raise OverlayError(f"unknown twist region {r}")
        return list(sel)

    shown_regions = pick("twist_regions")
    shown_circles = pick("crossing_circles")
    curves = overlays.get("curves") or []
    for c in curves:
        for f in c:
            if not 0 <= f < len(d.faces):
                raise OverlayError(f"unknown face {f}")

    width = max(x for x, _ in pos.values()) + MARGIN
    height = max(y for _, y in pos.values()) + MARGIN
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
           f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">']
    for r in shown_regions:
        pts = [pos[("c", c)] for c in regions[r].crossings]
        poly = " ".join(_fmt(p) for p in _hull(pts))
        out.append(f'<polygon class="twist-region" id="region-{r}" points="{poly}" '
                   f'fill="#ffe9a8" stroke="#c9a227"/>')
    for e, (p0, p1) in sorted(d.positions.items()):
        pts = [pos[("c", p0[0])], pos[("e", e, 0)], pos[("e", e, 1)], pos[("c", p1[0])]]
        out.append(f'<polyline class="strand" id="edge-{e}" points="{" ".join(_fmt(p) for p in pts)}" '
                   f'fill="none" stroke="black" stroke-width="2"/>')
    for i, x in enumerate(d.crossings):
        cx, cy = pos[("c", i)]
        # over strand drawn on top with a halo
        a = pos[("e", x[1], d.positions[x[1]].index((i, 1)))]
        b = pos[("e", x[3], d.positions[x[3]].index((i, 3)))]
        out.append(f'<g class="crossing" id="crossing-{i}">'
                   f'<circle cx="{cx:.1f}" cy="{cy:.1f}" r="5" fill="white"/>'
                   f'<line x1="{a[0]:.1f}" y1="{a[1]:.1f}" x2="{b[0]:.1f}" y2="{b[1]:.1f}" '
                   f'stroke="white" stroke-width="6"/>'
                   f'<line x1="{a[0]:.1f}" y1="{a[1]:.1f}" x2="{b[0]:.1f}" y2="{b[1]:.1f}" '
                   f'stroke="black" stroke-width="2"/></g>')
    for r in shown_circles:
        pts = _hull([pos[("c", c)] for c in regions[r].crossings], pad=16)
        cx = (pts[0][0] + pts[1][0]) / 2
        cy = (pts[0][1] + pts[2][1]) / 2
        rx = (pts[1][0] - pts[0][0]) / 2
        ry = (pts[2][1] - pts[0][1]) / 2
        out.append(f'<ellipse class="crossing-circle" id="circle-{r}" cx="{cx:.1f}" cy="{cy:.1f}" '
                   f'rx="{rx:.1f}" ry="{ry:.1f}" fill="none" stroke="#1f5fbf" stroke-width="2"/>')
    for k, c in enumerate(curves):
        cents = []
        for f in c:
            ps = [pos[("c", i)] for i, _ in d.faces[f].corners]
            cents.append((sum(p[0] for p in ps) / len(ps), sum(p[1] for p in ps) / len(ps)))
        cents.append(cents[0])
        out.append(f'<polyline class="curve" id="curve-{k}" points="{" ".join(_fmt(p) for p in cents)}" '
                   f'fill="none" stroke="#d0342c" stroke-dasharray="4 3"/>')
    out.append(f"<desc>{escape(d.serialize())}</desc>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
