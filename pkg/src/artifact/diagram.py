"""Link diagrams in planar-diagram (PD) notation.

A crossing is a 4-tuple of edge labels listed counterclockwise, starting
from the incoming under-strand.  Slots 0 and 2 are therefore the under
strand and slots 1 and 3 the over strand.  Everything downstream (faces,
bigons, twist regions, primeness) is read off this rotation system.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations


class DiagramError(ValueError):
    """Raised for malformed or invalid PD input."""


class NonAlternatingRegionError(DiagramError):
    """A twist region whose bigon chain is not alternating."""


Position = tuple[int, int]  # (crossing index, slot)


@dataclass(frozen=True)
class Face:
    """A complementary region of the projection.

    ``corners`` lists (crossing, j) pairs in traversal order, where corner j
    of a crossing is the angle between slots j and j+1.  ``boundary`` lists
    the matching (edge, side) incidences; side is the slot of the edge at the
    crossing the corner leaves from.
    """

    index: int
    corners: tuple[Position, ...]
    boundary: tuple[tuple[int, Position], ...]

    @property
    def degree(self) -> int:
        return len(self.corners)

    @property
    def crossings(self) -> frozenset[int]:
        return frozenset(c for c, _ in self.corners)

    @property
    def is_bigon(self) -> bool:
        return self.degree == 2 and len(self.crossings) == 2


@dataclass(frozen=True)
class TwistRegion:
    index: int
    crossings: tuple[int, ...]  # in chain order when the bigons form a path
    bigons: tuple[int, ...]  # face indices
    alternating: bool
    cyclic: bool = False  # bigons close up into a cycle (no free ends)
    handedness: int = 0  # common crossing sign, 0 if unknown or mixed

    @property
    def n(self) -> int:
        return len(self.crossings)


@dataclass(frozen=True)
class Witness:
    kind: str
    crossings: tuple[int, ...] = ()
    edges: tuple[int, ...] = ()
    faces: tuple[int, ...] = ()
    sides: tuple[tuple[int, ...], ...] = ()

    def as_dict(self):
        return {
            "kind": self.kind,
            "crossings": list(self.crossings),
            "edges": list(self.edges),
            "faces": list(self.faces),
            "sides": [list(s) for s in self.sides],
        }


@dataclass(frozen=True)
class HypothesisReport:
    connected: bool
    prime: bool
    twist_reduced: bool
    t: int
    h: int
    is_knot: bool
    alternating_regions: bool
    prime_witness: Witness | None = None
    twist_witness: Witness | None = None

    @property
    def hypotheses_met(self) -> bool:
        return (self.connected and self.prime and self.twist_reduced
                and self.alternating_regions and self.t >= 2 and self.h >= 6)

    def as_dict(self):
        return {
            "connected": self.connected,
            "prime": self.prime,
            "prime_witness": self.prime_witness.as_dict() if self.prime_witness else None,
            "twist_reduced": self.twist_reduced,
            "twist_witness": self.twist_witness.as_dict() if self.twist_witness else None,
            "alternating_regions": self.alternating_regions,
            "t": self.t,
            "h": self.h,
            "is_knot": self.is_knot,
            "hypotheses_met": self.hypotheses_met,
        }


@dataclass(frozen=True, eq=False)
class Diagram:
    crossings: tuple[tuple[int, int, int, int], ...]

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.crossings == other.crossings

    def __hash__(self):
        return hash(self.crossings)

    # -- basic combinatorics -------------------------------------------------

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def positions(self) -> dict[int, tuple[Position, Position]]:
        """Edge label -> its two (crossing, slot) occurrences."""
        occ: dict[int, list[Position]] = {}
        for i, x in enumerate(self.crossings):
            for j, e in enumerate(x):
                occ.setdefault(e, []).append((i, j))
        return {e: (p[0], p[1]) for e, p in occ.items()}

    @property
    def edges(self) -> list[int]:
        return sorted(self.positions)

    def other_end(self, pos: Position) -> Position:
        i, j = pos
        a, b = self.positions[self.crossings[i][j]]
        return b if a == pos else a

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        """Trace faces: corner (i, j) -> edge at slot j+1 -> corner at its far end."""
        seen: set[Position] = set()
        out = []
        for i in range(self.num_crossings):
            for j in range(4):
                if (i, j) in seen:
                    continue
                corners, boundary = [], []
                cur = (i, j)
                while cur not in seen:
                    seen.add(cur)
                    corners.append(cur)
                    ci, cj = cur
                    slot = (cj + 1) % 4
                    boundary.append((self.crossings[ci][slot], (ci, slot)))
                    cur = self.other_end((ci, slot))
                out.append(Face(len(out), tuple(corners), tuple(boundary)))
        return tuple(out)

    @cached_property
    def corner_face(self) -> dict[Position, int]:
        return {c: f.index for f in self.faces for c in f.corners}

    def edge_faces(self, e: int) -> tuple[int, int]:
        """Faces on the two sides of edge ``e``."""
        (i, j), (k, l) = self.positions[e]
        return (self.corner_face[(i, (j - 1) % 4)], self.corner_face[(k, (l - 1) % 4)])

    def neighbours(self, i: int) -> list[int]:
        return [self.other_end((i, j))[0] for j in range(4)]

    @cached_property
    def num_components_graph(self) -> int:
        return _count_components(range(self.num_crossings),
                                 [(p[0][0], p[1][0]) for p in self.positions.values()])

    @property
    def is_connected(self) -> bool:
        return self.num_components_graph <= 1

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Link components as cyclic edge sequences, following slot j -> j+2."""
        done: set[int] = set()
        comps = []
        for e in self.edges:
            if e in done:
                continue
            seq = []
            pos = self.positions[e][0]
            start = e
            cur_e = e
            # walk: arrive at pos, leave through the opposite slot
            while True:
                seq.append(cur_e)
                done.add(cur_e)
                i, j = pos
                exit_pos = (i, (j + 2) % 4)
                cur_e = self.crossings[i][exit_pos[1]]
                pos = self.other_end(exit_pos)
                if cur_e == start:
                    break
            comps.append(tuple(seq))
        return tuple(comps)

    @property
    def is_knot(self) -> bool:
        return len(self.components) == 1

    # -- orientation / signs -------------------------------------------------

    @cached_property
    def crossing_signs(self) -> tuple[int, ...]:
        """+1/-1 per crossing, 0 when labels do not encode a consistent orientation."""
        succ = {}
        for comp in self.components:
            labels = sorted(comp)
            if sorted(comp) != list(range(labels[0], labels[0] + len(labels))):
                return (0,) * self.num_crossings
            for k, e in enumerate(labels):
                succ[e] = labels[(k + 1) % len(labels)]
        signs = []
        for a, b, c, d in self.crossings:
            if succ.get(a) != c and not (a == c):
                return (0,) * self.num_crossings
            if succ.get(d) == b and d != b:
                signs.append(1)
            elif succ.get(b) == d and d != b:
                signs.append(-1)
            else:
                signs.append(0)
        return tuple(signs)

    # -- twist structure -----------------------------------------------------

    @cached_property
    def twist_regions(self) -> tuple[TwistRegion, ...]:
        return _twist_regions(self)

    @cached_property
    def region_of(self) -> dict[int, int]:
        return {c: r.index for r in self.twist_regions for c in r.crossings}

    @property
    def twist_number(self) -> int:
        return len(self.twist_regions)

    @property
    def height(self) -> int:
        return min((r.n for r in self.twist_regions), default=0)

    def serialize(self) -> str:
        return format_pd(self.crossings)


def _count_components(vertices, pairs) -> int:
    parent = {v: v for v in vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(v) for v in parent})


# -- parsing -----------------------------------------------------------------

_X_TOKEN = re.compile(r"X\s*[\[(]([^\])]*)[\])]")


def format_pd(crossings) -> str:
    return " ".join("X[" + ",".join(str(e) for e in x) + "]" for x in crossings)


def parse_pd(text: str, *, allow_disconnected: bool = True) -> Diagram:
    """Parse ``X[a,b,c,d] X[...] ...`` (optionally wrapped in ``PD[...]``).

    Raises DiagramError for malformed tokens, edges not occurring exactly
    twice, or a rotation system that is not planar.
    """
    body = text.strip()
    if body.startswith("PD"):
        body = body[2:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise DiagramError("PD wrapper must be PD[...]")
        body = body[1:-1]
    crossings = []
    pos = 0
    for m in _X_TOKEN.finditer(body):
        gap = body[pos:m.start()].strip(" ,\n\t")
        if gap:
            raise DiagramError(f"unexpected text {gap!r}")
        pos = m.end()
        fields_ = [f.strip() for f in m.group(1).split(",") if f.strip()]
        if len(fields_) != 4:
            raise DiagramError(f"crossing {m.group(0)!r} must have 4 entries, got {len(fields_)}")
        try:
            labels = tuple(int(f) for f in fields_)
        except ValueError as exc:
            raise DiagramError(f"non-integer label in {m.group(0)!r}") from exc
        if any(v < 1 for v in labels):
            raise DiagramError(f"labels must be positive in {m.group(0)!r}")
        crossings.append(labels)
    tail = body[pos:].strip(" ,\n\t")
    if tail:
        raise DiagramError(f"unexpected text {tail!r}")
    if not crossings:
        raise DiagramError("no crossings")
    d = Diagram(tuple(crossings))
    validate(d, allow_disconnected=allow_disconnected)
    return d


def validate(d: Diagram, *, allow_disconnected: bool = True) -> None:
    counts: dict[int, int] = {}
    for x in d.crossings:
        for e in x:
            counts[e] = counts.get(e, 0) + 1
    bad = sorted(e for e, c in counts.items() if c != 2)
    if bad:
        raise DiagramError(f"edges must occur exactly twice; offending labels {bad}")
    v, e, f = d.num_crossings, len(counts), len(d.faces)
    comps = d.num_components_graph
    if v - e + f != 2 * comps:
        raise DiagramError(f"rotation system is not planar (V-E+F={v - e + f}, components={comps})")
    if comps > 1 and not allow_disconnected:
        raise DiagramError("diagram is disconnected")


# -- twist regions -----------------------------------------------------------

def _twist_regions(d: Diagram) -> tuple[TwistRegion, ...]:
    n = d.num_crossings
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    bigons = [f for f in d.faces if f.is_bigon]
    for f in bigons:
        a, b = sorted(f.crossings)
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for c in range(n):
        groups.setdefault(find(c), []).append(c)

    signs = d.crossing_signs
    regions = []
    for members in sorted(groups.values(), key=min):
        mset = set(members)
        region_bigons = [f for f in bigons if f.crossings <= mset]
        alternating = all(_bigon_alternates(d, f) for f in region_bigons)
        chain, cyclic = _chain_order(members, region_bigons)
        s = {signs[c] for c in members}
        hand = s.pop() if len(s) == 1 else 0
        regions.append(TwistRegion(
            index=len(regions), crossings=tuple(chain),
            bigons=tuple(f.index for f in region_bigons),
            alternating=alternating, cyclic=cyclic, handedness=hand))
    return tuple(regions)


def _bigon_alternates(d: Diagram, f: Face) -> bool:
    # along each bigon edge the strand passes over at one end and under at the other
    for e, _ in f.boundary:
        (i, j), (k, l) = d.positions[e]
        if j % 2 == l % 2:
            return False
    return True


def _chain_order(members, bigons) -> tuple[list[int], bool]:
    if len(members) == 1:
        return list(members), False
    adj: dict[int, list[int]] = {c: [] for c in members}
    for f in bigons:
        a, b = sorted(f.crossings)
        adj[a].append(b)
        adj[b].append(a)
    ends = [c for c in members if len(adj[c]) == 1]
    is_path = len(ends) == 2 and all(len(adj[c]) <= 2 for c in members)
    if not is_path:
        return sorted(members), True
    order = [min(ends)]
    prev = None
    while len(order) < len(members):
        cur = order[-1]
        nxt = [c for c in adj[cur] if c != prev]
        prev = cur
        order.append(nxt[0])
    return order, False


def twist_regions(d: Diagram) -> tuple[TwistRegion, ...]:
    return d.twist_regions


def faces(d: Diagram) -> tuple[Face, ...]:
    return d.faces


# -- primeness ---------------------------------------------------------------

def is_prime(d: Diagram) -> tuple[bool, Witness | None]:
    """Search for a simple closed curve meeting the diagram in two edge points
    with crossings on both sides.  Nugatory crossings (a face occupying two
    opposite corners) also count as violations."""
    if not d.is_connected:
        raise DiagramError("primeness is only defined for connected diagrams")
    by_faces: dict[tuple[int, int], list[int]] = {}
    for e in d.edges:
        a, b = d.edge_faces(e)
        if a != b:
            by_faces.setdefault((min(a, b), max(a, b)), []).append(e)
    for (fa, fb), es in sorted(by_faces.items()):
        for e, f in combinations(es, 2):
            sides = _sides_after_cut(d, {e, f})
            if len(sides) == 2:
                return False, Witness("two-edge-cut", edges=(e, f), faces=(fa, fb),
                                      sides=tuple(tuple(s) for s in sides))
    cf = d.corner_face
    for i in range(d.num_crossings):
        for j in range(2):
            if cf[(i, j)] == cf[(i, j + 2)]:
                return False, Witness("nugatory-crossing", crossings=(i,), faces=(cf[(i, j)],))
    return True, None


def _sides_after_cut(d: Diagram, removed: set[int]) -> list[list[int]]:
    parent = {c: c for c in range(d.num_crossings)}

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for e, ((i, _), (k, _)) in d.positions.items():
        if e not in removed:
            parent[find(i)] = find(k)
    groups: dict[int, list[int]] = {}
    for c in range(d.num_crossings):
        groups.setdefault(find(c), []).append(c)
    return sorted(groups.values())


# -- twist-reducedness -------------------------------------------------------

def is_twist_reduced(d: Diagram) -> tuple[bool, Witness | None]:
    """A curve through exactly two crossings must stay within one twist region.

    Such a curve passes through opposite corners at each crossing, so it is
    realised by two distinct faces each holding one of those corners at both
    crossings.
    """
    if not d.is_connected:
        raise DiagramError("twist-reducedness is only defined for connected diagrams")
    cf = d.corner_face
    region = d.region_of
    for a, b in combinations(range(d.num_crossings), 2):
        if region[a] == region[b]:
            continue
        for j in range(2):
            f1, f2 = cf[(a, j)], cf[(a, j + 2)]
            if f1 == f2:
                continue
            for k in range(4):
                if cf[(b, k)] == f1 and cf[(b, (k + 2) % 4)] == f2:
                    return False, Witness("flype-curve", crossings=(a, b), faces=(f1, f2))
    return True, None


def check_hypotheses(d: Diagram) -> HypothesisReport:
    connected = d.is_connected
    if connected:
        prime, pw = is_prime(d)
        reduced, tw = is_twist_reduced(d)
    else:
        prime, pw, reduced, tw = False, None, False, None
    regions = d.twist_regions
    return HypothesisReport(
        connected=connected, prime=prime, twist_reduced=reduced,
        t=len(regions), h=d.height, is_knot=d.is_knot,
        alternating_regions=all(r.alternating for r in regions),
        prime_witness=pw, twist_witness=tw)
