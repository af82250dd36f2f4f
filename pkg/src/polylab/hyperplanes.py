"""Geometric hyperplanes of finite thick generalized quadrangles.

A hyperplane is a proper nonempty point set meeting every line in one point
or in all of its points.  Three kinds occur: ovoids (A), point perps ``x^perp``
(B) and subquadrangles of order ``(s, t/s)`` (C).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ContractViolation, InternalError, NotPolygon, Truncated
from .incidence import IncidenceGeometry, induced_subgeometry
from .polygon import classify_polygon


@dataclass(frozen=True)
class HyperplaneVerdict:
    kind: str  # "A", "B", "C" or "NotHyperplane"
    center: Optional[int] = None
    suborder: Optional[tuple] = None
    witness: Optional[object] = None

    def __post_init__(self):
        if self.kind not in ("A", "B", "C", "NotHyperplane"):
            raise ValueError(f"unknown hyperplane kind {self.kind!r}")
        if (self.center is not None) != (self.kind == "B"):
            raise ValueError("center is set exactly for kind B")
        if (self.suborder is not None) != (self.kind == "C"):
            raise ValueError("suborder is set exactly for kind C")

    def describe(self) -> str:
        if self.kind == "B":
            return f"B center={self.center}"
        if self.kind == "C":
            return f"C suborder=({self.suborder[0]},{self.suborder[1]})"
        if self.kind == "NotHyperplane":
            where = f"line {self.witness}" if isinstance(self.witness, int) else self.witness
            return f"NotHyperplane witness={where}"
        return "A"


def _gq_order(S: IncidenceGeometry):
    try:
        verdict = classify_polygon(S)
    except NotPolygon as exc:
        raise ContractViolation(f"not a generalized quadrangle: {exc}") from exc
    if verdict.gonality != 4 or not verdict.is_thick or verdict.order is None:
        raise ContractViolation(f"need a thick GQ with an order, got {verdict.describe()}")
    return verdict.order


def _as_set(S: IncidenceGeometry, H) -> frozenset:
    pts = frozenset(int(p) for p in H)
    for p in pts:
        if not 0 <= p < S.num_points:
            raise IndexError(f"point {p} out of range")
    return pts


def is_geometric_hyperplane(S: IncidenceGeometry, H):
    """``(True, None)`` or ``(False, witness)``.

    The witness is the first line meeting ``H`` in neither one nor all of its
    points, or the string ``"empty"``/``"full"`` for the degenerate sets.
    """
    _gq_order(S)
    pts = _as_set(S, H)
    if not pts:
        return False, "empty"
    if len(pts) == S.num_points:
        return False, "full"
    for L, row in enumerate(S.line_points):
        k = sum(1 for p in row if p in pts)
        if k != 1 and k != len(row):
            return False, L
    return True, None


def perp(S: IncidenceGeometry, x: int) -> frozenset:
    out = {x}
    for L in S.point_lines[x]:
        out.update(S.line_points[L])
    return frozenset(out)


def classify_hyperplane(S: IncidenceGeometry, H) -> HyperplaneVerdict:
    s, t = _gq_order(S)
    ok, witness = is_geometric_hyperplane(S, H)
    if not ok:
        return HyperplaneVerdict("NotHyperplane", witness=witness)
    pts = _as_set(S, H)
    inside = [L for L, row in enumerate(S.line_points) if all(p in pts for p in row)]
    if not inside:
        return HyperplaneVerdict("A")
    for x in sorted(pts):
        if perp(S, x) == pts:
            return HyperplaneVerdict("B", center=x)
    sub, _ = induced_subgeometry(S, pts, inside)
    try:
        verdict = classify_polygon(sub)
    except NotPolygon as exc:
        raise InternalError(f"hyperplane of no known kind: {exc}") from exc
    if t % s or verdict.gonality != 4 or verdict.order != (s, t // s):
        raise InternalError(f"hyperplane of no known kind: induced {verdict.describe()}")
    return HyperplaneVerdict("C", suborder=verdict.order)


def enumerate_hyperplanes(S: IncidenceGeometry, max_points: int = 64, node_limit: int = 10**7):
    """All hyperplanes of ``S`` as ``(frozenset, verdict)`` sorted by point tuple.

    Backtracks over in/out decisions per point with line-intersection
    propagation: a line with two points in forces the rest in, a line with one
    point in and one out forces the rest out, a line with no point in and one
    undecided point forces it in.
    """
    _gq_order(S)
    n = S.num_points
    if n > max_points:
        raise Truncated(f"{n} points exceed the enumeration guard of {max_points}")
    rows = S.line_points
    plines = S.point_lines
    found = []
    nodes = 0

    def propagate(state, queue):
        while queue:
            p = queue.pop()
            for L in plines[p]:
                row = rows[L]
                ins = sum(1 for q in row if state[q] == 1)
                outs = sum(1 for q in row if state[q] == 0)
                free = [q for q in row if state[q] < 0]
                if ins >= 2 and outs:
                    return False
                if ins == 0 and not free:
                    return False
                if ins >= 2:
                    force = 1
                elif ins == 1 and outs:
                    force = 0
                elif ins == 0 and len(free) == 1:
                    force = 1
                else:
                    continue
                for q in free:
                    state[q] = force
                    queue.append(q)
        return True

    def search(state):
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise Truncated(f"hyperplane search exceeded {node_limit} nodes", partial=found, nodes=nodes)
        try:
            p = state.index(-1)
        except ValueError:
            found.append(frozenset(q for q in range(n) if state[q] == 1))
            return
        for choice in (1, 0):
            child = state[:]
            child[p] = choice
            if propagate(child, [p]):
                search(child)

    search([-1] * n)
    out = []
    for H in found:
        if 0 < len(H) < n:
            out.append((H, classify_hyperplane(S, H)))
    out.sort(key=lambda item: tuple(sorted(item[0])))
    return out


@dataclass(frozen=True)
class CorollaryTrace:
    order: tuple
    contradiction: bool
    flagged: bool
    steps: tuple

    def render(self) -> str:
        return "\n".join(self.steps) + "\n"


def thin_typeC_corollary_check(order) -> CorollaryTrace:
    """Symbolic argument that an epimorphism onto a thin type-C hyperplane cannot occur.

    For a target quadrangle of order ``(s', t')`` a thin type-C hyperplane has
    order ``(s', t'/s')`` with ``t'/s' = 1``, so ``s' = t'``; an epimorphism
    from a thick quadrangle onto a thin one of order ``(s', 1)`` forces
    ``s' = 1``, against thickness.
    """
    sp, tp = order
    steps = [f"target quadrangle order (s',t') = ({sp},{tp})"]
    if sp < 2 or tp < 2:
        steps.append("target is not thick: outside the hypothesis, no contradiction drawn")
        return CorollaryTrace((sp, tp), False, True, tuple(steps))
    if tp % sp:
        steps.append(f"s'={sp} does not divide t'={tp}: no subquadrangle of order (s',t'/s') exists")
        steps.append("a thin type-C hyperplane is impossible")
        return CorollaryTrace((sp, tp), True, False, tuple(steps))
    steps.append(f"a type-C hyperplane has order (s',t'/s') = ({sp},{tp // sp})")
    if tp != sp:
        steps.append(f"t'/s' = {tp // sp} > 1 and s' = {sp} > 1: the hyperplane is thick, not thin")
        steps.append("a thin type-C hyperplane is impossible")
        return CorollaryTrace((sp, tp), True, False, tuple(steps))
    steps.append(f"thin forces t'/s' = 1, hence s' = t' = {sp}")
    steps.append(f"the image is a thin quadrangle of order ({sp},1) covered by an epimorphism from a thick quadrangle")
    steps.append("the thick-to-thin quadrangle classification forces s' = 1")
    steps.append(f"contradiction: s' = {sp} > 1, so the map is surjective whenever the target hyperplane is not of type B")
    return CorollaryTrace((sp, tp), True, False, tuple(steps))
