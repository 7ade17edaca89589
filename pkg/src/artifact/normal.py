"""Normal curves on truncated polyhedron boundaries.

A curve is a cyclic word of *flags* ``(two_cell, exit)``: the curve runs
through ``two_cell`` and leaves it across the 1-cell ``exit`` into the 2-cell
on the other side.  Two-cells are ``("F", face)`` or ``("B", vertex)`` and
1-cells ``("E", edge)`` or ``("S", side)``; see :class:`BoundaryComplex`.

Areas are integers in units of pi/2 and lengths are exact rationals times pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, total_ordering

from .polyhedral import CIRCLE, SHADED, WHITE, BoundaryComplex

S_PARALLEL, W_PARALLEL, DIAGONAL = "s-parallel", "w-parallel", "diagonal"
CONDITIONS = ("transverse", "not_in_face", "no_returning_arc", "edge_once", "boundary_once")


class CurveError(ValueError):
    pass


class GluingError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    vertex: int
    cusp: str  # CIRCLE or KNOT
    circle: int | None
    kind: str

    def as_dict(self):
        return {"vertex": self.vertex, "cusp": self.cusp, "circle": self.circle, "kind": self.kind}


@dataclass(frozen=True, eq=False)
class NormalCurve:
    complex: BoundaryComplex
    flags: tuple  # ((two_cell, exit_one_cell), ...)

    def __post_init__(self):
        if not self.flags:
            raise CurveError("empty word")
        if len(self.flags) == 1 and self.flags[0][1] is None:
            return  # curve inside a single 2-cell
        bc = self.complex
        for k, (cell, exit_) in enumerate(self.flags):
            if exit_ is None or exit_ not in bc.cells_of(cell):
                raise CurveError(f"flag {k}: {exit_} is not on the boundary of {cell}")
            nxt = self.flags[(k + 1) % len(self.flags)][0]
            if bc.other_side(exit_, cell) != nxt:
                raise CurveError("word is not closed" if k == len(self.flags) - 1
                                 else f"flag {k}: {exit_} does not lead to {nxt}")

    @classmethod
    def from_cells(cls, bc: BoundaryComplex, start, one_cells) -> "NormalCurve":
        """Walk from 2-cell ``start`` across ``one_cells`` in order."""
        flags = []
        cur = start
        for x in one_cells:
            if x not in bc.cells_of(cur):
                raise CurveError(f"{x} is not on the boundary of {cur}")
            flags.append((cur, x))
            cur = bc.other_side(x, cur)
        if cur != start:
            raise CurveError("word is not closed")
        return cls(bc, tuple(flags))

    def __eq__(self, other):
        return isinstance(other, NormalCurve) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    @property
    def trivial(self) -> bool:
        return self.flags[0][1] is None

    @cached_property
    def key(self) -> tuple:
        """Canonical word: minimal rotation over both orientations."""
        if self.trivial:
            return self.flags
        fw = list(self.flags)
        k = len(fw)
        bw = [(fw[i][0], fw[i - 1][1]) for i in range(k - 1, -1, -1)]
        return min(tuple(w[i:] + w[:i]) for w in (fw, bw) for i in range(k))

    def entries(self):
        """(two_cell, entered_through, exited_through) for each visit."""
        k = len(self.flags)
        return [(self.flags[i][0], self.flags[i - 1][1], self.flags[i][1]) for i in range(k)]

    @property
    def edge_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, x in self.flags:
            if x is not None and x[0] == "E":
                out[x[1]] = out.get(x[1], 0) + 1
        return out

    @property
    def boundary_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for cell, _ in self.flags:
            if cell[0] == "B":
                out[cell[1]] = out.get(cell[1], 0) + 1
        return out

    @property
    def n(self) -> int:
        """Interior edges crossed."""
        return sum(self.edge_counts.values())

    @property
    def m(self) -> int:
        """Boundary-face visits."""
        return sum(self.boundary_counts.values())

    @property
    def faces_visited(self) -> list[int]:
        return [cell[1] for cell, _ in self.flags if cell[0] == "F"]

    @property
    def segments(self) -> list[Segment]:
        bc = self.complex
        out = []
        for cell, s_in, s_out in self.entries():
            if cell[0] != "B" or self.trivial:
                continue
            cols = {bc.side_color(s_in[1]), bc.side_color(s_out[1])}
            kind = S_PARALLEL if cols == {WHITE} else W_PARALLEL if cols == {SHADED} else DIAGONAL
            vx = bc.poly.vertices[cell[1]]
            out.append(Segment(cell[1], vx.kind, vx.circle, kind))
        return out

    @property
    def circle_segments(self) -> list[Segment]:
        return [s for s in self.segments if s.cusp == CIRCLE]

    def meets_shaded(self) -> bool:
        bc = self.complex
        return any(c[0] == "F" and bc.face_color(c[1]) == SHADED for c, _ in self.flags)

    def word(self) -> list[list]:
        return [[list(c), list(x) if x else None] for c, x in self.flags]

    def as_dict(self):
        d = {"word": self.word(), "n": self.n, "m": self.m, "area_half_pi": area(self),
             "segments": [s.as_dict() for s in self.segments]}
        if self.circle_segments:
            d["length_over_pi"] = str(comb_length(self)[0][1])
        return d


# -- normality ---------------------------------------------------------------

def _returning(bc: BoundaryComplex, a, b) -> bool:
    """An arc in an interior face from ``a`` to ``b`` that leaves through the
    cell it entered by, or joins a side to an edge at the same vertex."""
    if a == b:
        return True
    kinds = {a[0], b[0]}
    if kinds == {"E", "S"}:
        e = a if a[0] == "E" else b
        s = b if a[0] == "E" else a
        return bc.edge_touches_vertex(e[1], bc.side_vertex[s[1]])
    return False


def check_normal(c: NormalCurve) -> dict:
    """Per-condition verdicts plus an embeddedness flag."""
    bc = c.complex
    verdict = {k: True for k in CONDITIONS}
    if c.trivial:
        verdict["not_in_face"] = False
    else:
        for cell, a, b in c.entries():
            if a == b or (cell[0] == "F" and _returning(bc, a, b)):
                verdict["no_returning_arc"] = False
        verdict["edge_once"] = all(v <= 1 for v in c.edge_counts.values())
        verdict["boundary_once"] = all(v <= 1 for v in c.boundary_counts.values())
    failed = [k for k in CONDITIONS if not verdict[k]]
    return {"normal": not failed, "conditions": verdict, "violated": failed,
            "embedded": is_embedded(c)}


def _interleave(p, q) -> bool:
    a, b = sorted(p)
    return (a < q[0] < b) != (a < q[1] < b)


def is_embedded(c: NormalCurve) -> bool:
    """No two arcs in a face cross and no 1-cell is crossed twice."""
    if c.trivial:
        return True
    crossed = [x for _, x in c.flags]
    if len(set(crossed)) != len(crossed):
        return False
    bc = c.complex
    chords: dict = {}
    for cell, a, b in c.entries():
        cells = bc.cells_of(cell)
        chords.setdefault(cell, []).append((cells.index(a), cells.index(b)))
    for arcs in chords.values():
        for i in range(len(arcs)):
            for j in range(i + 1, len(arcs)):
                if _interleave(arcs[i], arcs[j]):
                    return False
    return True


# -- enumeration ---------------------------------------------------------------

@dataclass(frozen=True)
class Constraints:
    max_boundary_visits: int | None = None
    allowed_cusps: frozenset = frozenset({"circle", "knot"})
    forbid_shaded: bool = False
    require_shaded: bool = False
    forbid_boundary: bool = False
    shaded_arcs_from_circle: bool = False  # shaded arcs must run circle vertex -> opposite edge
    max_interior_edges: int | None = None

    def as_dict(self):
        return {"max_boundary_visits": self.max_boundary_visits,
                "allowed_cusps": sorted(self.allowed_cusps),
                "forbid_shaded": self.forbid_shaded, "require_shaded": self.require_shaded,
                "forbid_boundary": self.forbid_boundary,
                "shaded_arcs_from_circle": self.shaded_arcs_from_circle,
                "max_interior_edges": self.max_interior_edges}


def _admissible_shaded_arc(bc: BoundaryComplex, face: int, a, b) -> bool:
    f = bc.poly.faces[face]
    circ = [k for k, v in enumerate(f.vertices) if bc.poly.vertices[v].kind == CIRCLE]
    if len(circ) != 1 or len(f.vertices) != 3:
        return False
    k = circ[0]
    side = bc.face_cells[face][2 * k]
    opposite = ("E", f.edges[(k + 1) % 3])
    return {a, b} == {side, opposite}


def enumerate_normal_curves(bc: BoundaryComplex, constraints: Constraints | None = None,
                            **kw) -> list[NormalCurve]:
    """All embedded normal curves satisfying ``constraints``, deduplicated and sorted.

    Depth-first search over cell words.  Each curve is grown from its
    smallest 1-cell.  Embeddedness and the arc, edge and boundary
    conditions hold for every prefix of a valid word, so they prune the
    search.
    """
    cons = constraints or Constraints(**kw)
    nb = bc.num_boundary_faces
    cap = nb if cons.max_boundary_visits is None else cons.max_boundary_visits
    if cap > nb:
        raise ValueError(f"max_boundary_visits {cap} exceeds {nb} boundary faces")
    if cons.forbid_boundary:
        cap = 0
    n_edges = len(bc.poly.edges)

    def order(x):
        return x[1] if x[0] == "E" else n_edges + x[1]

    def cell_ok(cell):
        if cell[0] == "F":
            return not (cons.forbid_shaded and bc.face_color(cell[1]) == SHADED)
        return bc.vertex_kind(cell[1]) in cons.allowed_cusps

    tab = _Tables(bc, cons, order, cell_ok)
    found: dict = {}
    for x0 in sorted(bc.cell_sides, key=order):
        for a0 in sorted(set(bc.cell_sides[x0])):
            if cell_ok(a0) and cell_ok(bc.other_side(x0, a0)):
                _dfs(bc, tab, cons, cap, x0, a0, found)
    out = [c for c in found.values() if _final_ok(c, cons)]
    return sorted(out, key=lambda c: c.key)


class _Tables:
    """Per-complex lookups for the search: exits of each 2-cell with their
    boundary position, rank and target, and the arcs allowed inside it."""

    def __init__(self, bc, cons, order, cell_ok):
        self.exits = {}
        self.pos = {}
        self.arcs = {}
        cells = [("F", i) for i in range(len(bc.face_cells))] + \
            [("B", v) for v in range(bc.num_boundary_faces)]
        for cell in cells:
            seq = bc.cells_of(cell)
            self.pos[cell] = {x: i for i, x in enumerate(seq)}
            self.exits[cell] = [(x, i, order(x), bc.other_side(x, cell)) for i, x in enumerate(seq)]
            ok = set()
            shaded = cell[0] == "F" and bc.face_color(cell[1]) == SHADED
            for p in seq:
                for q in seq:
                    if p == q:
                        continue
                    if cell[0] == "F":
                        if _returning(bc, p, q):
                            continue
                        if shaded and cons.shaded_arcs_from_circle and \
                                not _admissible_shaded_arc(bc, cell[1], p, q):
                            continue
                    ok.add((p, q))
            self.arcs[cell] = ok
        self.cell_ok = {c: cell_ok(c) for c in cells}


def _dfs(bc, tab, cons, cap, x0, a0, found):
    k0 = tab.exits[a0][tab.pos[a0][x0]][2]
    start = bc.other_side(x0, a0)
    if a0 == start:
        return
    flags = [(a0, x0)]
    used = {x0}
    n_edges = [1 if x0[0] == "E" else 0]
    used_b = {c[1] for c in (a0, start) if c[0] == "B"}
    if len(used_b) > cap:
        return
    max_e = cons.max_interior_edges
    chords: dict = {}  # 2-cell -> drawn chords as sorted position pairs

    def step(cell, entered):
        arcs = tab.arcs[cell]
        here = tab.pos[cell]
        pin = here[entered]
        drawn = chords.get(cell, ())
        for x, px, kx, nxt in tab.exits[cell]:
            if (entered, x) not in arcs:
                continue
            lo, hi = (pin, px) if pin < px else (px, pin)
            if any((lo < c < hi) != (lo < d < hi) for c, d in drawn):
                continue
            if x == x0:
                if cell == a0:  # flag 0 already exits a0 through x0
                    c = NormalCurve(bc, tuple(flags))
                    if is_embedded(c):
                        found.setdefault(c.key, c)
                continue
            if x in used or kx < k0 or not tab.cell_ok[nxt]:
                continue
            is_edge = x[0] == "E"
            if is_edge and max_e is not None and n_edges[0] >= max_e:
                continue
            to_b = nxt[0] == "B"
            if to_b and (nxt[1] in used_b or len(used_b) >= cap):
                continue
            flags.append((cell, x))
            used.add(x)
            chords.setdefault(cell, []).append((lo, hi))
            n_edges[0] += is_edge
            if to_b:
                used_b.add(nxt[1])
            step(nxt, x)
            if to_b:
                used_b.discard(nxt[1])
            n_edges[0] -= is_edge
            chords[cell].pop()
            used.discard(x)
            flags.pop()

    step(start, x0)


def _final_ok(c: NormalCurve, cons: Constraints) -> bool:
    if not check_normal(c)["normal"]:
        return False
    if cons.require_shaded and not c.meets_shaded():
        return False
    if cons.shaded_arcs_from_circle:
        bc = c.complex
        for cell, a, b in c.entries():
            if cell[0] == "F" and bc.face_color(cell[1]) == SHADED \
                    and not _admissible_shaded_arc(bc, cell[1], a, b):
                return False
    return True


# -- area and length -----------------------------------------------------------

def area(c: NormalCurve) -> int:
    """Combinatorial area of the disk bounded by ``c`` in half-pi units."""
    return c.n + 2 * c.m - 4


def comb_length(c: NormalCurve) -> list[tuple[Segment, Fraction]]:
    """Area shared evenly among the crossing-circle segments, as multiples of pi."""
    segs = c.circle_segments
    if not segs:
        raise CurveError("curve meets no crossing-circle cusp")
    ell = Fraction(area(c), 2 * len(segs))
    return [(s, ell) for s in segs]


# -- cusp pattern --------------------------------------------------------------

@dataclass(frozen=True)
class CuspPattern:
    n: int
    segments: tuple[tuple[str, tuple[Fraction, Fraction], tuple[Fraction, Fraction]], ...]
    squares: tuple[tuple[int, int, str], ...]  # (x, y, "P" or "P'") of each visited square

    @property
    def s_segments(self) -> int:
        return sum(k == S_PARALLEL for k, _, _ in self.segments)

    @property
    def diagonals(self) -> int:
        return sum(k == DIAGONAL for k, _, _ in self.segments)

    @property
    def total(self) -> int:
        return len(self.segments)

    @property
    def homology(self) -> tuple[int, int]:
        """(w, s) coefficients from the summed displacement."""
        dx = sum(b[0] - a[0] for _, a, b in self.segments)
        dy = sum(b[1] - a[1] for _, a, b in self.segments)
        return (int(dy), int(dx))

    @property
    def shaded_intersections(self) -> int:
        """Crossings with horizontal (shaded) lines; the closing point counts once."""
        pts = {a for _, a, _ in self.segments}
        return sum(p[1].denominator == 1 for p in pts)

    @property
    def white_intersections(self) -> int:
        pts = {a for _, a, _ in self.segments}
        return sum(p[0].denominator == 1 for p in pts)

    def lattice_consistent(self) -> bool:
        """Translation by the closing vector preserves the P/P' labelling of squares."""
        dx, dy = self.homology[1], self.homology[0]
        return all(_square_poly(self.n, x + dx, y + dy) == _square_poly(self.n, x, y)
                   for x, y, _ in self.squares)

    def as_dict(self):
        return {"n": self.n, "s_segments": self.s_segments, "diagonals": self.diagonals,
                "total": self.total, "homology_ws": list(self.homology),
                "shaded_intersections": self.shaded_intersections,
                "segments": [[k, [str(x) for x in a], [str(x) for x in b]]
                             for k, a, b in self.segments]}


def _square_poly(n: int, x: int, y: int) -> str:
    parity = x % 2 if n % 2 == 0 else (x + y) % 2
    return "P" if parity == 0 else "P'"


def cusp_pattern(n: int) -> CuspPattern:
    """Boundary curve of a normal surface on the cusp torus of a crossing
    circle with n crossings.

    The torus is tiled by unit squares (truncated boundary faces), vertical
    sides white and horizontal sides shaded.  The curve leaves a shaded side,
    runs diagonally to a white side, parallel to the shaded sides for n - 1
    squares, and diagonally back to the shaded side.
    """
    if n < 1:
        raise ValueError("crossing count must be at least 1")
    h = Fraction(1, 2)
    segs = [(DIAGONAL, (h, Fraction(0)), (Fraction(1), h))]
    for k in range(1, n):
        segs.append((S_PARALLEL, (Fraction(k), h), (Fraction(k + 1), h)))
    segs.append((DIAGONAL, (Fraction(n), h), (n + h, Fraction(1))))
    squares = tuple((int(min(a[0], b[0])), 0, _square_poly(n, int(min(a[0], b[0])), 0))
                    for _, a, b in segs)
    return CuspPattern(n, tuple(segs), squares)


# -- projection ------------------------------------------------------------------

def project_curve(c: NormalCurve) -> dict:
    """Describe a curve avoiding shaded faces as a curve in the projection plane."""
    if c.trivial:
        raise CurveError("trivial curve")
    if c.meets_shaded():
        raise CurveError("curve meets a shaded face")
    bc = c.complex
    passes, strands, regions = [], [], []
    for cell, _ in c.flags:
        if cell[0] == "F":
            regions.append(bc.poly.faces[cell[1]].region)
        else:
            vx = bc.poly.vertices[cell[1]]
            if vx.kind == CIRCLE:
                passes.append(vx.circle)
            else:
                strands.append(vx.strand)
    n = len(passes)
    k_points = 2 * n + len(strands)
    if k_points == 2:
        meaning = "meets K twice: primeness-violating loop"
    elif k_points == 4 and n == 2 and not strands:
        meaning = "meets K four times through two twist regions: twist-reduction witness"
    else:
        meaning = "plane curve"
    return {"twist_region_passes": n, "circles": passes, "knot_strands": strands,
            "k_points": k_points, "regions": regions, "interpretation": meaning}


# -- complexity ------------------------------------------------------------------

@total_ordering
@dataclass(frozen=True)
class ComplexityTuple:
    values: tuple[int, ...]

    def __le__(self, other):
        return len(self.values) == len(other.values) and \
            all(a <= b for a, b in zip(self.values, other.values))

    def __lt__(self, other):
        return self <= other and self.values != other.values

    def comparable(self, other) -> bool:
        return self <= other or other <= self


def complexity(system, n_faces: tuple[int, int]) -> ComplexityTuple:
    """Arc counts per interior face: faces of P first, then of P'.

    ``system`` is an iterable of (polyhedron index, NormalCurve).
    """
    vals = [0] * (n_faces[0] + n_faces[1])
    for p, c in system:
        if c.trivial:
            continue
        for f in c.faces_visited:
            vals[f + (n_faces[0] if p else 0)] += 1
    return ComplexityTuple(tuple(vals))


# -- Gauss-Bonnet ------------------------------------------------------------------

def double(c: NormalCurve):
    """A curve avoiding shaded faces together with its copy in the other
    polyhedron, glued along white-face arcs: returns (disks, gluing)."""
    if c.meets_shaded():
        raise CurveError("only curves avoiding shaded faces can be doubled")
    gluing = [((0, k), (1, k), 1) for k, (cell, _) in enumerate(c.flags) if cell[0] == "F"]
    return [c, c], gluing


def gauss_bonnet(disks, gluing=None) -> dict:
    """Total area and Euler characteristic -area/2pi of a union of normal disks.

    Each disk is a polygon whose sides are its arcs (one per flag).  ``gluing``
    pairs arcs as ((disk, arc), (disk, arc), orientation) with orientation +1
    when arc starts are identified.  When given, the cell-complex Euler
    characteristic V - E + F is computed and compared.
    """
    total = sum(area(d) for d in disks)
    chi = Fraction(-total, 4)
    out = {"area_half_pi": total, "chi": chi}
    if gluing is None:
        return out
    parent: dict = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    seen = set()
    for g in gluing:
        (i, a), (j, b) = g[0], g[1]
        orient = g[2] if len(g) > 2 else 1
        for d, arc in ((i, a), (j, b)):
            if not (0 <= d < len(disks)) or not (0 <= arc < len(disks[d].flags)):
                raise GluingError(f"no arc {arc} on disk {d}")
            if (d, arc) in seen:
                raise GluingError(f"arc {arc} of disk {d} glued twice")
            seen.add((d, arc))
        ka, kb = len(disks[i].flags), len(disks[j].flags)
        union(("e", i, a), ("e", j, b))
        sa, ta = ("v", i, a), ("v", i, (a + 1) % ka)
        sb, tb = ("v", j, b), ("v", j, (b + 1) % kb)
        if orient > 0:
            union(sa, sb)
            union(ta, tb)
        else:
            union(sa, tb)
            union(ta, sb)
    V = len({find(("v", i, k)) for i, d in enumerate(disks) for k in range(len(d.flags))})
    E = len({find(("e", i, k)) for i, d in enumerate(disks) for k in range(len(d.flags))})
    F = len(disks)
    out.update({"V": V, "E": E, "F": F, "euler": V - E + F,
                "consistent": chi == V - E + F})
    return out
