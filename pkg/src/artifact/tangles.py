"""Small tangle algebra for building PD codes of algebraic diagrams.

Tangles have four ends NW, NE, SW, SE.  ``H(n)`` is a horizontal twist of
n crossings, ``V(n)`` a vertical one; ``+`` joins tangles side by side and
``*`` stacks the first above the second.  ``numerator``/``denominator``
close a tangle into a diagram.  Used to generate fixtures such as double
twist knots and pretzel diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count, product

from .diagram import Diagram, format_pd, validate

_ids = count(1)


@dataclass
class Tangle:
    crossings: list[list[int]]
    ends: dict[str, int]
    joins: list[tuple[int, int]]

    def __add__(self, other: "Tangle") -> "Tangle":
        return Tangle(self.crossings + other.crossings,
                      {"NW": self.ends["NW"], "SW": self.ends["SW"],
                       "NE": other.ends["NE"], "SE": other.ends["SE"]},
                      self.joins + other.joins
                      + [(self.ends["NE"], other.ends["NW"]), (self.ends["SE"], other.ends["SW"])])

    def __mul__(self, other: "Tangle") -> "Tangle":
        return Tangle(self.crossings + other.crossings,
                      {"NW": self.ends["NW"], "NE": self.ends["NE"],
                       "SW": other.ends["SW"], "SE": other.ends["SE"]},
                      self.joins + other.joins
                      + [(self.ends["SW"], other.ends["NW"]), (self.ends["SE"], other.ends["NE"])])


def crossing(sign: int = 1) -> Tangle:
    nw, sw, se, ne = (next(_ids) for _ in range(4))
    slots = [nw, sw, se, ne] if sign > 0 else [sw, se, ne, nw]
    return Tangle([slots], {"NW": nw, "SW": sw, "SE": se, "NE": ne}, [])


def H(n: int, sign: int = 1) -> Tangle:
    t = crossing(sign)
    for _ in range(n - 1):
        t = t + crossing(sign)
    return t


def V(n: int, sign: int = 1) -> Tangle:
    t = crossing(sign)
    for _ in range(n - 1):
        t = t * crossing(sign)
    return t


def numerator(t: Tangle) -> Diagram:
    return _close(t, [(t.ends["NW"], t.ends["NE"]), (t.ends["SW"], t.ends["SE"])])


def denominator(t: Tangle) -> Diagram:
    return _close(t, [(t.ends["NW"], t.ends["SW"]), (t.ends["NE"], t.ends["SE"])])


def _close(t: Tangle, extra) -> Diagram:
    parent: dict[int, int] = {}

    def find(v):
        parent.setdefault(v, v)
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in t.joins + extra:
        parent[find(a)] = find(b)
    names: dict[int, int] = {}
    raw = []
    for x in t.crossings:
        raw.append(tuple(names.setdefault(find(e), len(names) + 1) for e in x))
    return relabel(Diagram(tuple(raw)))


def relabel(d: Diagram) -> Diagram:
    """Renumber edges consecutively along components and rotate each crossing
    so that slot 0 is the incoming under-strand."""
    new: dict[int, int] = {}
    succ: dict[int, int] = {}
    for comp in d.components:
        base = len(new) + 1
        for k, e in enumerate(comp):
            new[e] = base + k
        for k, e in enumerate(comp):
            succ[new[e]] = new[comp[(k + 1) % len(comp)]]
    out = []
    for x in d.crossings:
        y = tuple(new[e] for e in x)
        if succ[y[2]] == y[0] and succ[y[0]] != y[2]:
            y = y[2:] + y[:2]
        out.append(y)
    result = Diagram(tuple(out))
    validate(result)
    return result


def is_alternating(d: Diagram) -> bool:
    return all(j % 2 != l % 2 for (_, j), (_, l) in d.positions.values())


def alternating_closure(blocks, combine, closure=numerator) -> Diagram:
    """Try every sign assignment of the twist blocks and return the first
    alternating diagram.  ``blocks`` is a list of (H or V, n); ``combine``
    folds the built block tangles into one."""
    for signs in product((1, -1), repeat=len(blocks)):
        parts = [kind(n, s) for (kind, n), s in zip(blocks, signs)]
        d = closure(combine(parts))
        if is_alternating(d):
            return d
    raise ValueError("no alternating sign assignment")


def summed(parts):
    t = parts[0]
    for p in parts[1:]:
        t = t + p
    return t


def double_twist(a: int, b: int) -> Diagram:
    """Numerator closure of H(a) + V(b)."""
    return alternating_closure([(H, a), (V, b)], summed)


def pretzel(*ns: int) -> Diagram:
    return alternating_closure([(V, n) for n in ns], summed)


def rational(a: int, b: int, c: int) -> Diagram:
    """N((H(a) * V(b)) + H(c)), a three-region 4-plat."""
    return alternating_closure([(H, a), (V, b), (H, c)],
                               lambda p: (p[0] * p[1]) + p[2])


def disjoint_union(d1: Diagram, d2: Diagram) -> Diagram:
    shift = max(d1.edges)
    return Diagram(d1.crossings + tuple(tuple(e + shift for e in x) for x in d2.crossings))


def pd_text(d: Diagram) -> str:
    return format_pd(d.crossings)
