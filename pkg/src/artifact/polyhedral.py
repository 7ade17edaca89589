"""Checkerboard ideal polyhedra decomposing a flat augmented link complement.

Each twist region is collapsed to a point and then split into an edge (the
crossing-circle edge) joining two trivalent vertices, one per end of the
region.  Call the resulting trivalent planar map the *circle graph*.  Both
polyhedra are the medial complex of the circle graph:

* ideal vertices are circle-graph edges (crossing-circle or knot-strand cusps),
* shaded faces are circle-graph vertices (triangles, two per crossing circle),
* white faces are circle-graph faces (regions of the projection plane),
* polyhedron edges are circle-graph corners.

Half twists only change how shaded faces are glued, so both polyhedra carry
the same cell structure.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .augmentation import AugmentedStructure, flatten
from .diagram import Diagram

WHITE, SHADED = "white", "shaded"
CIRCLE, KNOT = "circle", "knot"


class DecompositionError(ValueError):
    pass


@dataclass(frozen=True)
class IdealVertex:
    kind: str  # CIRCLE or KNOT
    circle: int | None = None  # crossing-circle index for CIRCLE vertices
    strand: int | None = None  # diagram edge label for KNOT vertices
    component: int | None = None


@dataclass(frozen=True)
class PolyFace:
    color: str
    vertices: tuple[int, ...]  # cyclic
    edges: tuple[int, ...]  # edges[i] joins vertices[i] and vertices[i+1]
    circle: int | None = None  # shaded: owning crossing circle
    side: str | None = None  # shaded: "u" or "w" end of the twist region
    region: int | None = None  # white: diagram face index


@dataclass(frozen=True, eq=False)
class Polyhedron:
    vertices: tuple[IdealVertex, ...]
    edges: tuple[tuple[int, int], ...]
    faces: tuple[PolyFace, ...]
    name: str = "P"

    @cached_property
    def edge_faces(self) -> dict[int, list[tuple[int, int]]]:
        """edge -> [(face, position in face)] incidences."""
        out: dict[int, list[tuple[int, int]]] = {e: [] for e in range(len(self.edges))}
        for fi, f in enumerate(self.faces):
            for k, e in enumerate(f.edges):
                out[e].append((fi, k))
        return out

    @cached_property
    def vertex_corners(self) -> dict[int, list[tuple[int, int]]]:
        """vertex -> [(face, position)] occurrences, in rotation order when possible."""
        occ: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(self.vertices))}
        for fi, f in enumerate(self.faces):
            for k, v in enumerate(f.vertices):
                occ[v].append((fi, k))
        return {v: _rotation(self, v, o) for v, o in occ.items()}

    def valence(self, v: int) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    @property
    def shaded_faces(self) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.color == SHADED]

    @property
    def white_faces(self) -> list[int]:
        return [i for i, f in enumerate(self.faces) if f.color == WHITE]

    def circle_vertex(self, i: int) -> int:
        return next(v for v, x in enumerate(self.vertices) if x.kind == CIRCLE and x.circle == i)

    def as_dict(self):
        return {
            "name": self.name,
            "vertices": [{"kind": v.kind, "circle": v.circle, "strand": v.strand,
                          "component": v.component} for v in self.vertices],
            "edges": [list(e) for e in self.edges],
            "faces": [{"color": f.color, "vertices": list(f.vertices), "edges": list(f.edges),
                       "circle": f.circle, "side": f.side, "region": f.region}
                      for f in self.faces],
        }


def _rotation(p: Polyhedron, v: int, occ: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Order the face corners at v by walking across shared edges."""
    if len(occ) <= 2:
        return sorted(occ)
    remaining = set(occ)
    order = [min(occ)]
    remaining.discard(order[0])
    while remaining:
        fi, k = order[-1]
        e = p.faces[fi].edges[k]  # edge leaving v forward along the face
        nxt = None
        for g, j in p.edge_faces[e]:
            if (g, j) == (fi, k):
                continue
            # in g the edge sits at position j, joining vertices j and j+1
            gf = p.faces[g]
            for cand in ((g, j), (g, (j + 1) % len(gf.vertices))):
                if cand in remaining and gf.vertices[cand[1]] == v:
                    nxt = cand
                    break
            if nxt:
                break
        if nxt is None:  # degenerate complex; fall back to index order
            order.extend(sorted(remaining))
            break
        order.append(nxt)
        remaining.discard(nxt)
    return order


# -- circle graph ------------------------------------------------------------

@dataclass(frozen=True)
class CircleGraph:
    """Trivalent planar map: darts with rotation ``sigma`` and involution ``alpha``."""

    dart_vertex: tuple[int, ...]
    dart_edge: tuple[int, ...]
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]
    edge_info: tuple[IdealVertex, ...]
    vertex_info: tuple[tuple[int, str], ...]  # (circle index, "u"/"w")
    corner_region: tuple[int, ...]  # diagram face index of corner(dart)
    vertex_darts: tuple[tuple[int, int, int], ...]
    n_side_dart: tuple[int, ...]  # per vertex: the end dart on the N side

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Orbits of y -> alpha(sigma(y)); corner(y) lies in the face of y."""
        seen = set()
        out = []
        for y in range(len(self.sigma)):
            if y in seen:
                continue
            orbit = []
            while y not in seen:
                seen.add(y)
                orbit.append(y)
                y = self.alpha[self.sigma[y]]
            out.append(tuple(orbit))
        return tuple(out)


def circle_graph(d: Diagram) -> CircleGraph:
    regions = d.twist_regions
    if len(regions) < 2:
        raise DecompositionError("decomposition needs at least 2 twist regions")
    if any(r.cyclic for r in regions):
        raise DecompositionError("a twist region closes up on itself")
    cf = d.corner_face
    comp_of = {e: ci for ci, comp in enumerate(d.components) for e in comp}

    dart_vertex, dart_edge, corner_region = [], [], []
    sigma: list[int] = []
    vertex_info, vertex_darts, n_side = [], [], []
    slot_dart: dict[tuple[int, int], int] = {}
    circle_darts: dict[int, list[int]] = {}

    for r in regions:
        chain = r.crossings
        ends = []
        if r.n == 1:
            ends = [(chain[0], 2), (chain[0], 0)]
        else:
            for c, nb in ((chain[0], chain[1]), (chain[-1], chain[-2])):
                k = next(j for j in range(4)
                         if d.faces[cf[(c, j)]].is_bigon and nb in d.faces[cf[(c, j)]].crossings)
                ends.append((c, k))
        north = cf[(ends[0][0], (ends[0][1] + 1) % 4)]
        for side, (c, k) in zip("uw", ends):
            v = len(vertex_info)
            vertex_info.append((r.index, side))
            ds = []
            for role in ("circle", k + 2, k + 3):
                y = len(dart_vertex)
                dart_vertex.append(v)
                dart_edge.append(-1)
                ds.append(y)
                if role == "circle":
                    circle_darts.setdefault(r.index, []).append(y)
                    corner_region.append(cf[(c, (k + 1) % 4)])
                else:
                    slot_dart[(c, role % 4)] = y
                    corner_region.append(cf[(c, role % 4)])
            sigma.extend([ds[1], ds[2], ds[0]])
            vertex_darts.append(tuple(ds))
            # end dart adjacent to the north face
            n_side.append(ds[1] if cf[(c, (k + 1) % 4)] == north else ds[2])

    alpha = [-1] * len(dart_vertex)
    edge_info: list[IdealVertex] = []
    for r in regions:
        a, b = circle_darts[r.index]
        alpha[a], alpha[b] = b, a
        dart_edge[a] = dart_edge[b] = len(edge_info)
        edge_info.append(IdealVertex(CIRCLE, circle=r.index))
    for (c, s), y in sorted(slot_dart.items()):
        if alpha[y] != -1:
            continue
        far = d.other_end((c, s))
        z = slot_dart.get(far)
        if z is None:
            raise DecompositionError(f"strand from crossing {c} slot {s} enters a region interior")
        alpha[y], alpha[z] = z, y
        label = d.crossings[c][s]
        dart_edge[y] = dart_edge[z] = len(edge_info)
        edge_info.append(IdealVertex(KNOT, strand=label, component=comp_of.get(label)))

    return CircleGraph(tuple(dart_vertex), tuple(dart_edge), tuple(sigma), tuple(alpha),
                       tuple(edge_info), tuple(vertex_info), tuple(corner_region),
                       tuple(vertex_darts), tuple(n_side))


def medial_polyhedron(g: CircleGraph, name: str = "P") -> Polyhedron:
    corner_edge = {}
    edges = []
    for y in range(len(g.sigma)):
        corner_edge[y] = len(edges)
        edges.append((g.dart_edge[y], g.dart_edge[g.sigma[y]]))
    faces = []
    for v, ds in enumerate(g.vertex_darts):
        circle, side = g.vertex_info[v]
        faces.append(PolyFace(SHADED, tuple(g.dart_edge[y] for y in ds),
                              tuple(corner_edge[y] for y in ds), circle=circle, side=side))
    for orbit in g.faces:
        faces.append(PolyFace(WHITE, tuple(g.dart_edge[y] for y in orbit),
                              tuple(corner_edge[y] for y in orbit),
                              region=g.corner_region[orbit[0]]))
    return Polyhedron(g.edge_info, tuple(edges), tuple(faces), name)


# -- decomposition and gluings -----------------------------------------------

@dataclass(frozen=True)
class FaceGluing:
    """Face ``a`` of polyhedron ``pa`` glued to face ``b`` of ``pb``; ``vertex_map``
    sends the vertices of a to those of b."""

    pa: int
    a: int
    pb: int
    b: int
    vertex_map: tuple[tuple[int, int], ...]

    def as_dict(self):
        return {"from": [self.pa, self.a], "to": [self.pb, self.b],
                "vertex_map": [list(m) for m in self.vertex_map]}


@dataclass(frozen=True, eq=False)
class Decomposition:
    structure: AugmentedStructure
    graph: CircleGraph
    polyhedra: tuple[Polyhedron, Polyhedron]
    gluings: tuple[FaceGluing, ...]
    reports: tuple[dict, dict] = field(default=({}, {}))
    half_twist_convention: str = "odd parity: shaded faces glue across polyhedra with strands swapped"

    def glued_face(self, poly: int, face: int) -> tuple[int, int, dict[int, int]]:
        for g in self.gluings:
            if (g.pa, g.a) == (poly, face):
                return g.pb, g.b, dict(g.vertex_map)
            if (g.pb, g.b) == (poly, face):
                return g.pa, g.a, {b: a for a, b in g.vertex_map}
        raise KeyError((poly, face))

    @property
    def valid(self) -> bool:
        return all(all(r["checks"].values()) for r in self.reports)

    def as_dict(self):
        return {
            "polyhedra": [p.as_dict() for p in self.polyhedra],
            "gluings": [g.as_dict() for g in self.gluings],
            "validation": list(self.reports),
            "half_twist_convention": self.half_twist_convention,
            "isomorphic": isomorphic(*self.polyhedra),
        }


def decompose(a: AugmentedStructure, *, require_valid: bool = True) -> Decomposition:
    """Build P and P' for the flat augmented link of ``a``.

    With ``require_valid`` a complex failing validation (typically from a
    non-prime diagram) raises; otherwise it is returned with its reports.
    """
    a = flatten(a)
    g = circle_graph(a.base)
    p = medial_polyhedron(g, "P")
    q = medial_polyhedron(g, "P'")
    t = len(a.circles)
    reports = (validate(p, t), validate(q, t))
    if require_valid and not all(reports[0]["checks"].values()):
        failed = [k for k, ok in reports[0]["checks"].items() if not ok]
        raise DecompositionError(f"polyhedron fails validation: {failed}")

    gluings = [FaceGluing(0, f, 1, f, tuple((v, v) for v in p.faces[f].vertices))
               for f in p.white_faces]
    for c in a.circles:
        r = c.region.index
        fu = next(i for i, f in enumerate(p.faces) if f.circle == r and f.side == "u")
        fw = next(i for i, f in enumerate(p.faces) if f.circle == r and f.side == "w")
        vu, vw = 2 * r, 2 * r + 1
        cv = g.dart_edge[g.vertex_darts[vu][0]]
        nu, nw = g.dart_edge[g.n_side_dart[vu]], g.dart_edge[g.n_side_dart[vw]]
        su = next(x for x in p.faces[fu].vertices if x not in (cv, nu))
        sw = next(x for x in p.faces[fw].vertices if x not in (cv, nw))
        if c.parity == 0:
            vmap = ((cv, cv), (nu, nw), (su, sw))
            gluings.append(FaceGluing(0, fu, 0, fw, vmap))
            gluings.append(FaceGluing(1, fu, 1, fw, vmap))
        else:
            vmap = ((cv, cv), (nu, sw), (su, nw))
            gluings.append(FaceGluing(0, fu, 1, fw, vmap))
            gluings.append(FaceGluing(1, fu, 0, fw, vmap))
    return Decomposition(a, g, (p, q), tuple(gluings), reports)


# -- validation --------------------------------------------------------------

def validate(p: Polyhedron, t: int | None = None) -> dict:
    """Check the combinatorial properties required of each polyhedron.

    Computed from the face lists alone, independently of the constructor.
    """
    V, E, F = len(p.vertices), len(p.edges), len(p.faces)
    checks: dict[str, bool] = {}
    checks["four_valent"] = all(p.valence(v) == 4 for v in range(V))
    checks["shaded_triangles"] = all(len(f.vertices) == 3 for f in p.faces if f.color == SHADED)
    colors_ok = True
    for e, inc in p.edge_faces.items():
        cols = sorted(p.faces[fi].color for fi, _ in inc)
        if cols != [SHADED, WHITE]:
            colors_ok = False
    checks["checkerboard"] = colors_ok
    checks["euler"] = V - E + F == 2
    checks["edges_twice_vertices"] = E == 2 * V
    checks["faces_vertices_plus_two"] = F == V + 2
    if t is not None:
        checks["shaded_count_2t"] = len(p.shaded_faces) == 2 * t
    tri_ok = True
    for f in p.faces:
        if f.color != SHADED:
            continue
        circ = [k for k, v in enumerate(f.vertices) if p.vertices[v].kind == CIRCLE]
        if len(circ) != 1 or len(f.vertices) != 3:
            tri_ok = False
            continue
        k = circ[0]
        opposite = f.edges[(k + 1) % 3]
        a, b = p.edges[opposite]
        if f.vertices[k] in (a, b):
            tri_ok = False
    checks["shaded_circle_vertex"] = tri_ok
    quad_ok = True
    for v, x in enumerate(p.vertices):
        if x.kind != CIRCLE:
            continue
        cols = [p.faces[fi].color for fi, _ in p.vertex_corners[v]]
        if len(cols) != 4 or Counter(cols) != Counter({WHITE: 2, SHADED: 2}) \
                or any(cols[i] == cols[(i + 1) % 4] for i in range(4)):
            quad_ok = False
    checks["circle_boundary_quads"] = quad_ok
    checks["ideal_polygons"] = all(len(set(f.vertices)) == len(f.vertices) >= 3 for f in p.faces)
    shared = Counter()
    for inc in p.edge_faces.values():
        fs = sorted({fi for fi, _ in inc})
        if len(fs) == 2:
            shared[tuple(fs)] += 1
    checks["faces_meet_once"] = all(c <= 1 for c in shared.values())
    return {"name": p.name, "V": V, "E": E, "F": F,
            "shaded": len(p.shaded_faces), "white": len(p.white_faces), "checks": checks}


# -- isomorphism -------------------------------------------------------------

def canonical_form(p: Polyhedron) -> tuple:
    """Canonical colored face list, minimised over all starting flags."""
    best = None
    for f0 in range(len(p.faces)):
        n = len(p.faces[f0].vertices)
        for k0 in range(n):
            for direction in (1, -1):
                code = _relabel_from(p, f0, k0, direction)
                if code is not None and (best is None or code < best):
                    best = code
    return best


def _relabel_from(p, f0, k0, direction):
    vlabel: dict[int, int] = {}
    flabel: dict[int, int] = {}
    queue = [(f0, k0, direction)]
    code = []
    while queue:
        fi, k, dr = queue.pop(0)
        if fi in flabel:
            continue
        flabel[fi] = len(flabel)
        f = p.faces[fi]
        n = len(f.vertices)
        seq = [f.vertices[(k + dr * i) % n] for i in range(n)]
        for v in seq:
            vlabel.setdefault(v, len(vlabel))
        code.append((f.color, tuple(vlabel[v] for v in seq),
                     tuple((p.vertices[v].kind,) for v in seq)))
        for i in range(n):
            e = f.edges[(k + i) % n] if dr == 1 else f.edges[(k - i - 1) % n]
            for g, j in p.edge_faces[e]:
                if g != fi and g not in flabel:
                    # traverse the neighbour in the opposite direction
                    start_v = seq[(i + 1) % n]
                    gv = p.faces[g].vertices
                    pos = [m for m in range(len(gv)) if gv[m] == start_v and
                           p.faces[g].edges[m if dr == 1 else (m - 1) % len(gv)] == e]
                    if not pos:
                        pos = [m for m in range(len(gv)) if gv[m] == start_v]
                    if not pos:
                        return None
                    queue.append((g, pos[0], -dr))
    if len(flabel) != len(p.faces):
        return None
    return tuple(code)


def isomorphic(p: Polyhedron, q: Polyhedron) -> bool:
    return canonical_form(p) == canonical_form(q)


# -- truncated boundary --------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BoundaryComplex:
    """Cells of the truncated polyhedron boundary.

    2-cells: interior faces ("F", i) and boundary faces ("B", v).
    1-cells: interior edges ("E", e) and boundary sides ("S", s), where side s
    is the segment shared by boundary face ``side_vertex[s]`` and interior
    face ``side_face[s]``.
    """

    poly: Polyhedron
    side_vertex: tuple[int, ...]
    side_face: tuple[tuple[int, int], ...]  # (face, position of the vertex in that face)
    face_cells: tuple[tuple[tuple[str, int], ...], ...]  # cyclic boundary of each interior face
    vertex_sides: tuple[tuple[int, ...], ...]  # cyclic sides of each boundary face

    @cached_property
    def cell_sides(self) -> dict[tuple[str, int], tuple[tuple[str, int], ...]]:
        """1-cell -> the 2-cells on its two sides."""
        out: dict[tuple[str, int], list] = {}
        for fi, cells in enumerate(self.face_cells):
            for c in cells:
                out.setdefault(c, []).append(("F", fi))
        for s, v in enumerate(self.side_vertex):
            out.setdefault(("S", s), []).append(("B", v))
        return {k: tuple(v) for k, v in out.items()}

    def cells_of(self, two_cell: tuple[str, int]) -> tuple[tuple[str, int], ...]:
        kind, i = two_cell
        if kind == "F":
            return self.face_cells[i]
        return tuple(("S", s) for s in self.vertex_sides[i])

    def other_side(self, one_cell, two_cell):
        a, b = self.cell_sides[one_cell]
        return b if a == two_cell else a

    @property
    def num_boundary_faces(self) -> int:
        return len(self.vertex_sides)

    def vertex_kind(self, v: int) -> str:
        return self.poly.vertices[v].kind

    def face_color(self, f: int) -> str:
        return self.poly.faces[f].color

    def edge_touches_vertex(self, e: int, v: int) -> bool:
        return v in self.poly.edges[e]

    def side_color(self, s: int) -> str:
        return self.poly.faces[self.side_face[s][0]].color

    def as_dict(self):
        return {
            "sides": [{"vertex": v, "face": list(f)} for v, f in zip(self.side_vertex, self.side_face)],
            "face_cells": [[list(c) for c in cells] for cells in self.face_cells],
            "vertex_sides": [list(s) for s in self.vertex_sides],
        }


def boundary_complex(p: Polyhedron) -> BoundaryComplex:
    side_vertex, side_face = [], []
    side_id: dict[tuple[int, int], int] = {}
    for fi, f in enumerate(p.faces):
        for k, v in enumerate(f.vertices):
            side_id[(fi, k)] = len(side_vertex)
            side_vertex.append(v)
            side_face.append((fi, k))
    face_cells = []
    for fi, f in enumerate(p.faces):
        cells = []
        for k in range(len(f.vertices)):
            cells.append(("S", side_id[(fi, k)]))
            cells.append(("E", f.edges[k]))
        face_cells.append(tuple(cells))
    vertex_sides = tuple(tuple(side_id[o] for o in p.vertex_corners[v])
                         for v in range(len(p.vertices)))
    return BoundaryComplex(p, tuple(side_vertex), tuple(side_face), tuple(face_cells), vertex_sides)
