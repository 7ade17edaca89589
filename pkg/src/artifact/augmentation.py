"""Augmented and flat augmented links built from a diagram's twist regions."""

from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import Diagram, DiagramError, NonAlternatingRegionError, TwistRegion


@dataclass(frozen=True)
class CrossingCircle:
    region: TwistRegion
    n: int
    handedness: int = 0

    @property
    def parity(self) -> int:
        return self.n % 2

    @property
    def full_twists(self) -> int:
        return self.n // 2

    @property
    def filling_slope(self) -> tuple[int, int]:
        return filling_slope(self)

    def as_dict(self):
        return {"region": self.region.index, "n": self.n, "handedness": self.handedness,
                "parity": self.parity, "filling_slope": list(self.filling_slope)}


@dataclass(frozen=True)
class AugmentedStructure:
    base: Diagram
    circles: tuple[CrossingCircle, ...]
    flat: bool = False
    removed_twists: tuple[int, ...] = ()  # signed full twists removed per circle

    @property
    def flat_parities(self) -> tuple[int, ...]:
        return tuple(c.parity for c in self.circles)

    @property
    def remaining_crossings(self) -> tuple[int, ...]:
        if self.flat:
            return self.flat_parities
        return tuple(c.n for c in self.circles)

    def as_dict(self):
        return {"flat": self.flat,
                "circles": [c.as_dict() for c in self.circles],
                "flat_parities": list(self.flat_parities),
                "removed_twists": list(self.removed_twists)}


def augment(d: Diagram) -> AugmentedStructure:
    """One crossing circle per twist region."""
    regions = d.twist_regions
    if not regions:
        raise DiagramError("diagram has no twist regions")
    if not d.is_connected:
        raise DiagramError("augmentation needs a connected diagram")
    bad = [r.index for r in regions if not r.alternating]
    if bad:
        raise NonAlternatingRegionError(f"twist regions {bad} are not alternating")
    circles = tuple(CrossingCircle(r, r.n, r.handedness) for r in regions)
    return AugmentedStructure(d, circles)


def flatten(a: AugmentedStructure) -> AugmentedStructure:
    """Remove all full twists; each region keeps n mod 2 crossings."""
    if a.flat:
        return a
    removed = tuple((c.handedness or 1) * c.full_twists for c in a.circles)
    return replace(a, flat=True, removed_twists=removed)


def reinsert_twists(a: AugmentedStructure) -> tuple[int, ...]:
    """Crossing counts recovered from a flat structure: parity + 2 * |twists|."""
    if not a.flat:
        raise ValueError("structure is not flat; nothing to reinsert")
    return tuple(p + 2 * abs(r) for p, r in zip(a.flat_parities, a.removed_twists))


def filling_slope(c: CrossingCircle) -> tuple[int, int]:
    """Dehn filling slope on the crossing-circle cusp as (w, s) coefficients."""
    return (1, c.n)
