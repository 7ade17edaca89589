from collections import Counter
from dataclasses import replace

import pytest

from artifact.augmentation import augment
from artifact.diagram import parse_pd
from artifact.polyhedral import (CIRCLE, KNOT, SHADED, WHITE, DecompositionError, Polyhedron,
                                 boundary_complex, canonical_form, circle_graph, decompose,
                                 isomorphic, validate)

from conftest import GOOD, TREFOIL, decomposition, diagram

BORROMEAN = "X[1,10,2,9] X[3,11,4,12] X[5,4,6,1] X[12,5,9,8] X[7,3,8,2] X[10,6,11,7]"
SIZES = {"fig8": (6, 12, 8, 4), "knot_5_2": (6, 12, 8, 4), "knot_6_1": (6, 12, 8, 4),
         "dt67": (6, 12, 8, 4), "pretzel333": (9, 18, 11, 6), "pretzel223": (9, 18, 11, 6),
         "rational222": (9, 18, 11, 6)}


def _size(p):
    return len(p.vertices), len(p.edges), len(p.faces), len(p.shaded_faces)


def test_figure8_gives_octahedron():
    dec = decomposition("fig8")
    for p in dec.polyhedra:
        assert _size(p) == (6, 12, 8, 4)
        assert all(p.valence(v) == 4 for v in range(6))
        assert all(len(f.vertices) == 3 for f in p.faces)
    assert dec.valid


@pytest.mark.parametrize("name", sorted(GOOD))
def test_good_fixtures_validate(name):
    dec = decomposition(name)
    assert dec.valid, dec.reports
    assert _size(dec.polyhedra[0]) == SIZES[name]
    t = len(diagram(name).twist_regions)
    assert len(dec.polyhedra[0].shaded_faces) == 2 * t
    assert len(dec.polyhedra[0].white_faces) == len(diagram(name).faces) - sum(
        r.n - 1 for r in diagram(name).twist_regions)


def test_no_bigon_diagram():
    d = parse_pd(BORROMEAN)
    dec = decompose(augment(d))
    assert _size(dec.polyhedra[0]) == (18, 36, 20, 12)
    assert isomorphic(*dec.polyhedra)


@pytest.mark.parametrize("name", sorted(GOOD))
def test_halves_isomorphic(name):
    p, q = decomposition(name).polyhedra
    assert isomorphic(p, q)
    assert canonical_form(p) == canonical_form(q)


def test_single_region_rejected():
    with pytest.raises(DecompositionError):
        circle_graph(parse_pd(TREFOIL))
    with pytest.raises(DecompositionError):
        decompose(augment(parse_pd(TREFOIL)))


def test_connected_sum_fails_validation():
    with pytest.raises(DecompositionError, match="ideal_polygons"):
        decompose(augment(diagram("connect_sum")))
    dec = decompose(augment(diagram("connect_sum")), require_valid=False)
    assert not dec.valid
    assert not dec.reports[0]["checks"]["ideal_polygons"]


def test_shaded_triangle_has_one_circle_vertex():
    p = decomposition("pretzel333").polyhedra[0]
    for fi in p.shaded_faces:
        kinds = Counter(p.vertices[v].kind for v in p.faces[fi].vertices)
        assert kinds == Counter({CIRCLE: 1, KNOT: 2})


def test_circle_vertex_link_is_checkered_quad():
    p = decomposition("dt67").polyhedra[0]
    for i in range(2):
        v = p.circle_vertex(i)
        cols = [p.faces[f].color for f, _ in p.vertex_corners[v]]
        assert cols in ([WHITE, SHADED] * 2, [SHADED, WHITE] * 2)


# -- corrupted complexes -------------------------------------------------------

def _octa() -> Polyhedron:
    return decomposition("fig8").polyhedra[0]


def test_corrupt_valence():
    p = _octa()
    a, b = p.edges[0]
    others = [v for v in range(len(p.vertices)) if v not in (a, b)]
    edges = ((others[0], b),) + p.edges[1:]
    bad = Polyhedron(p.vertices, edges, p.faces, "bad")
    assert not validate(bad)["checks"]["four_valent"]


def test_corrupt_white_white_edge():
    p = _octa()
    fi = p.shaded_faces[0]
    faces = list(p.faces)
    faces[fi] = replace(faces[fi], color=WHITE, circle=None, side=None)
    bad = Polyhedron(p.vertices, p.edges, tuple(faces), "bad")
    r = validate(bad, t=2)
    assert not r["checks"]["checkerboard"]
    assert not r["checks"]["shaded_count_2t"]
    assert not isomorphic(bad, p)


def test_corrupt_extra_face_breaks_euler():
    p = _octa()
    bad = Polyhedron(p.vertices, p.edges, p.faces + (p.faces[0],), "bad")
    r = validate(bad)
    assert not r["checks"]["euler"]
    assert not r["checks"]["faces_vertices_plus_two"]


# -- truncation ----------------------------------------------------------------

def test_octahedron_boundary_complex(octa):
    assert octa.num_boundary_faces == 6
    assert all(len(s) == 4 for s in octa.vertex_sides)
    assert len(octa.side_vertex) == 4 * 6
    for s, v in enumerate(octa.side_vertex):
        assert s in octa.vertex_sides[v]


@pytest.mark.parametrize("name", ["pretzel333", "dt67"])
def test_every_one_cell_has_two_sides(name):
    bc = boundary_complex(decomposition(name).polyhedra[0])
    assert all(len(v) == 2 for v in bc.cell_sides.values())
    n_edges = sum(1 for c in bc.cell_sides if c[0] == "E")
    assert n_edges == len(bc.poly.edges)
    assert len(bc.side_vertex) == 4 * len(bc.poly.vertices)


def test_boundary_sides_alternate_color(octa):
    for sides in octa.vertex_sides:
        cols = [octa.side_color(s) for s in sides]
        assert all(cols[i] != cols[(i + 1) % 4] for i in range(4))


# -- gluings -------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(GOOD))
def test_every_face_glued_once(name):
    dec = decomposition(name)
    seen = Counter()
    for g in dec.gluings:
        seen[(g.pa, g.a)] += 1
        seen[(g.pb, g.b)] += 1
    nf = len(dec.polyhedra[0].faces)
    assert seen == Counter({(i, f): 1 for i in (0, 1) for f in range(nf)})


@pytest.mark.parametrize("name", sorted(GOOD))
def test_gluing_maps_are_bijections(name):
    dec = decomposition(name)
    for g in dec.gluings:
        fa = dec.polyhedra[g.pa].faces[g.a]
        fb = dec.polyhedra[g.pb].faces[g.b]
        src = [a for a, _ in g.vertex_map]
        dst = [b for _, b in g.vertex_map]
        assert sorted(src) == sorted(fa.vertices)
        assert sorted(dst) == sorted(fb.vertices)
        assert fa.color == fb.color
        for a, b in g.vertex_map:
            assert dec.polyhedra[g.pa].vertices[a].kind == dec.polyhedra[g.pb].vertices[b].kind


def test_white_faces_glued_by_identity():
    dec = decomposition("pretzel223")
    for g in dec.gluings:
        if dec.polyhedra[0].faces[g.a].color == WHITE:
            assert (g.pa, g.pb) == (0, 1) and g.a == g.b
            assert all(a == b for a, b in g.vertex_map)


@pytest.mark.parametrize("ns", [(2, 2), (3, 2), (3, 3), (6, 7)])
def test_shaded_gluing_depends_on_parity(ns):
    from artifact.tangles import double_twist
    dec = decompose(augment(double_twist(*ns)))
    p = dec.polyhedra[0]
    for c in dec.structure.circles:
        fu = next(i for i, f in enumerate(p.faces) if f.circle == c.region.index and f.side == "u")
        pb, b, vmap = dec.glued_face(0, fu)
        assert p.faces[b].circle == c.region.index and p.faces[b].side == "w"
        assert pb == (1 if c.parity else 0)
        cv = p.circle_vertex(c.region.index)
        assert vmap[cv] == cv
