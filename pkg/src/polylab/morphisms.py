"""Incidence-preserving maps between geometries and their basic checks."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import ContractViolation
from .incidence import Element, Flag, IncidenceGeometry, dual, line, point


@dataclass(frozen=True, eq=False)
class GeometryMorphism:
    """A point map and a line map from ``source`` to ``target``.

    Equality compares the maps and the geometries element-wise.
    """

    source: IncidenceGeometry
    target: IncidenceGeometry
    point_map: tuple
    line_map: tuple

    def __post_init__(self):
        object.__setattr__(self, "point_map", tuple(self.point_map))
        object.__setattr__(self, "line_map", tuple(self.line_map))

    def image(self, e: Element) -> Element:
        if e.kind == "point":
            return point(self.point_map[e.index])
        return line(self.line_map[e.index])

    def key(self) -> tuple:
        """Canonical sort key: lexicographic on the point map, then the line map."""
        return (self.point_map, self.line_map)

    def vertex_map(self) -> tuple:
        """The map on incidence-graph vertex ids (points first, then lines)."""
        P = self.target.num_points
        return self.point_map + tuple(P + j for j in self.line_map)

    def __eq__(self, other):
        if not isinstance(other, GeometryMorphism):
            return NotImplemented
        return (
            self.point_map == other.point_map
            and self.line_map == other.line_map
            and self.source == other.source
            and self.target == other.target
        )

    def __hash__(self):
        return hash((self.point_map, self.line_map))

    def __repr__(self):
        return f"GeometryMorphism(points={list(self.point_map)}, lines={list(self.line_map)})"


def identity(G: IncidenceGeometry) -> GeometryMorphism:
    return GeometryMorphism(G, G, tuple(range(G.num_points)), tuple(range(G.num_lines)))


def compose(second: GeometryMorphism, first: GeometryMorphism) -> GeometryMorphism:
    """``second o first``."""
    return GeometryMorphism(
        first.source,
        second.target,
        tuple(second.point_map[x] for x in first.point_map),
        tuple(second.line_map[x] for x in first.line_map),
    )


def dual_morphism(phi: GeometryMorphism) -> GeometryMorphism:
    """The same map read between the point-line duals."""
    return GeometryMorphism(dual(phi.source), dual(phi.target), phi.line_map, phi.point_map)


def from_vertex_map(source, target, vmap) -> GeometryMorphism:
    P, P2 = source.num_points, target.num_points
    return GeometryMorphism(source, target, tuple(vmap[:P]), tuple(v - P2 for v in vmap[P:]))


def _check_total(phi: GeometryMorphism):
    S, T = phi.source, phi.target
    if len(phi.point_map) != S.num_points or len(phi.line_map) != S.num_lines:
        raise ContractViolation("map is not total on the source")
    for x in phi.point_map:
        if not isinstance(x, int) or not 0 <= x < T.num_points:
            raise ContractViolation(f"point image {x!r} is not a target point")
    for x in phi.line_map:
        if not isinstance(x, int) or not 0 <= x < T.num_lines:
            raise ContractViolation(f"line image {x!r} is not a target line")


def verify_morphism(phi: GeometryMorphism) -> Optional[Flag]:
    """Return None if every flag maps to a flag, else the first violating source flag."""
    _check_total(phi)
    tflags = phi.target.flag_set
    pm, lm = phi.point_map, phi.line_map
    for f in phi.source.flags:
        if (pm[f.point], lm[f.line]) not in tflags:
            return f
    return None


def is_epimorphism(phi: GeometryMorphism) -> bool:
    if verify_morphism(phi) is not None:
        raise ContractViolation("not a morphism")
    return (
        len(set(phi.point_map)) == phi.target.num_points
        and len(set(phi.line_map)) == phi.target.num_lines
    )


def is_bijective(phi: GeometryMorphism) -> bool:
    return (
        phi.source.num_points == phi.target.num_points
        and phi.source.num_lines == phi.target.num_lines
        and len(set(phi.point_map)) == phi.target.num_points
        and len(set(phi.line_map)) == phi.target.num_lines
    )


def is_isomorphism(phi: GeometryMorphism) -> bool:
    """Bijective morphism whose inverse also preserves incidence."""
    return (
        verify_morphism(phi) is None
        and is_bijective(phi)
        and phi.source.num_flags == phi.target.num_flags
    )


def inverse(phi: GeometryMorphism) -> GeometryMorphism:
    if not is_isomorphism(phi):
        raise ContractViolation("only isomorphisms have inverses")
    pinv = [0] * phi.target.num_points
    linv = [0] * phi.target.num_lines
    for i, x in enumerate(phi.point_map):
        pinv[x] = i
    for i, x in enumerate(phi.line_map):
        linv[x] = i
    return GeometryMorphism(phi.target, phi.source, tuple(pinv), tuple(linv))


class Fibers(NamedTuple):
    points: dict  # target point -> frozenset of source points
    lines: dict  # target line -> frozenset of source lines

    def of(self, e: Element) -> frozenset:
        return (self.points if e.kind == "point" else self.lines).get(e.index, frozenset())


def fibers(phi: GeometryMorphism) -> Fibers:
    if verify_morphism(phi) is not None:
        raise ContractViolation("not a morphism")
    pts = defaultdict(set)
    lns = defaultdict(set)
    for i, x in enumerate(phi.point_map):
        pts[x].add(i)
    for i, x in enumerate(phi.line_map):
        lns[x].add(i)
    return Fibers(
        {x: frozenset(pts[x]) for x in range(phi.target.num_points) if x in pts},
        {x: frozenset(lns[x]) for x in range(phi.target.num_lines) if x in lns},
    )


def line_saturation(phi: GeometryMorphism):
    """Check that every line's point row maps onto the image line's row, and dually.

    Returns None when the property holds, otherwise ``(element, image_set,
    expected_set)`` for the first failure.
    """
    from .polygon import classify_polygon

    if not is_epimorphism(phi):
        raise ContractViolation("line saturation is only defined for epimorphisms")
    g1 = classify_polygon(phi.source).gonality
    g2 = classify_polygon(phi.target).gonality
    if g1 != g2:
        raise ContractViolation(f"gonalities differ ({g1} vs {g2})")
    S, T = phi.source, phi.target
    for L, pts in enumerate(S.line_points):
        got = frozenset(phi.point_map[p] for p in pts)
        want = frozenset(T.line_points[phi.line_map[L]])
        if got != want:
            return (line(L), got, want)
    for x, lns in enumerate(S.point_lines):
        got = frozenset(phi.line_map[L] for L in lns)
        want = frozenset(T.point_lines[phi.point_map[x]])
        if got != want:
            return (point(x), got, want)
    return None
