"""Builders for the standard finite polygons and their thin relatives.

Projective points are tuples over :class:`~polylab.fields.FiniteField`
elements normalized so the first nonzero coordinate is 1.  All outputs list
points and lines in sorted coordinate order, so construction is
deterministic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import gcd

from .errors import ConstructionError, DomainError, NotPolygon
from .fields import GF, FiniteField, prime_power, subfield_map
from .incidence import IncidenceGeometry, dual, line_graph_distance
from .morphisms import GeometryMorphism
from .polygon import classify_polygon


def _gate(G, gonality, order=None, name="geometry"):
    try:
        verdict = classify_polygon(G)
    except NotPolygon as exc:
        raise ConstructionError(f"{name}: {exc}") from exc
    if verdict.gonality != gonality or (order is not None and verdict.order != order):
        raise ConstructionError(f"{name}: expected gonality {gonality} order {order}, got {verdict.describe()}")
    return G


# -- thin and combinatorial families ---------------------------------------

def ordinary_polygon(m: int) -> IncidenceGeometry:
    """Ordinary m-gon: points 0..m-1, line i joins points i and i+1."""
    if m < 2:
        raise DomainError("ordinary polygon needs m >= 2")
    return IncidenceGeometry(m, [(i, (i + 1) % m) for i in range(m)])


def digon(a: int, b: int) -> IncidenceGeometry:
    if a < 2 or b < 2:
        raise DomainError("digon needs a, b >= 2")
    return IncidenceGeometry(a, [range(a)] * b)


def grid(r: int, c: int) -> IncidenceGeometry:
    """r x c grid: point (i, j) has index i*c + j; rows are lines 0..r-1, columns r..r+c-1."""
    if r < 2 or c < 2:
        raise DomainError("grid needs r, c >= 2")
    rows = [[i * c + j for j in range(c)] for i in range(r)]
    cols = [[i * c + j for i in range(r)] for j in range(c)]
    return IncidenceGeometry(r * c, rows + cols)


def dual_grid(r: int, c: int) -> IncidenceGeometry:
    return dual(grid(r, c))


def double(G: IncidenceGeometry) -> IncidenceGeometry:
    """Points: the points then the lines of ``G``; lines: the flags of ``G``."""
    verdict = classify_polygon(G)
    if verdict.order is None or verdict.order[0] != verdict.order[1]:
        raise DomainError(f"doubling needs order (s,s), got {verdict.order}")
    P = G.num_points
    return IncidenceGeometry(P + G.num_lines, [(f.point, P + f.line) for f in G.flags])


def undouble(G: IncidenceGeometry):
    """Inverse of :func:`double` for a thin 2n-gon of order (1, s).

    Returns ``(H, classes)`` where ``classes[x]`` is the element of ``H``
    that point ``x`` of ``G`` stands for.
    """
    verdict = classify_polygon(G)
    if verdict.gonality % 2 or verdict.order is None or verdict.order[0] != 1:
        raise DomainError(f"undoubling needs a thin 2n-gon of order (1,s), got {verdict.describe()}")
    dist = G.bfs(0)
    side = [(dist[x] // 2) % 2 for x in range(G.num_points)]
    firsts = [x for x in range(G.num_points) if side[x] == 0]
    seconds = [x for x in range(G.num_points) if side[x] == 1]
    pidx = {x: i for i, x in enumerate(firsts)}
    records = []
    for y in seconds:
        nbrs = set()
        for L in G.point_lines[y]:
            nbrs.update(z for z in G.line_points[L] if z != y)
        if any(side[z] != 0 for z in nbrs):
            raise NotPolygon("collinear points in the same class", y)
        records.append([pidx[z] for z in nbrs])
    H = IncidenceGeometry(len(firsts), records)
    from .incidence import line as _line, point as _point

    classes = [None] * G.num_points
    for i, x in enumerate(firsts):
        classes[x] = _point(i)
    for j, y in enumerate(seconds):
        classes[y] = _line(j)
    return H, classes


def thin_hexagon_from_plane(P: IncidenceGeometry) -> IncidenceGeometry:
    """Thin hexagon of order (s, 1) from a projective plane of order s."""
    verdict = classify_polygon(P)
    if verdict.gonality != 3 or verdict.order is None or verdict.order[0] != verdict.order[1]:
        raise DomainError("input must be a projective plane with an order")
    return dual(double(P))


def plane_from_thin_hexagon(G: IncidenceGeometry) -> IncidenceGeometry:
    """Projective plane read off the two line classes of a thin hexagon of order (s, 1)."""
    verdict = classify_polygon(G)
    if verdict.gonality != 6 or verdict.order is None or verdict.order[1] != 1:
        raise DomainError(f"input must be a thin hexagon of order (s,1), got {verdict.describe()}")
    parity = [line_graph_distance(G, 0, L) % 2 for L in range(G.num_lines)]
    U = [L for L in range(G.num_lines) if parity[L] == 0]
    V = [L for L in range(G.num_lines) if parity[L] == 1]
    uidx = {L: i for i, L in enumerate(U)}
    records = []
    for M in V:
        meets = {L for p in G.line_points[M] for L in G.point_lines[p] if L != M}
        records.append(sorted(uidx[L] for L in meets))
    return IncidenceGeometry(len(U), records)


# -- projective coordinates ---------------------------------------------------

def normalize(F: FiniteField, v) -> tuple:
    for a in v:
        if a:
            if a == 1:
                return tuple(v)
            inv = F.inv(a)
            return tuple(F.mul(inv, x) for x in v)
    raise ValueError("zero vector has no projective point")


def projective_points(F: FiniteField, n: int) -> list[tuple]:
    """Normalized points of PG(n, q) in sorted order."""
    pts = []
    for lead in range(n + 1):
        for tail in product(range(F.q), repeat=n - lead):
            pts.append((0,) * lead + (1,) + tail)
    return sorted(pts)


def span_points(F: FiniteField, u, v) -> list[tuple]:
    """The q+1 normalized points of the line spanned by ``u`` and ``v``."""
    out = [normalize(F, u)]
    for t in range(F.q):
        out.append(normalize(F, [F.add(b, F.mul(t, a)) for a, b in zip(u, v)]))
    return out


def _kernel_basis(F: FiniteField, h):
    """Two vectors spanning the 2-space ``h . x = 0`` in GF(q)^3 (``h`` normalized)."""
    if h[0]:
        return (F.neg(h[1]), 1, 0), (F.neg(h[2]), 0, 1)
    if h[1]:
        return (1, 0, 0), (0, F.neg(h[2]), 1)
    return (1, 0, 0), (0, 1, 0)


class PlaneData:
    """PG(2, q) with its coordinate tables."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise DomainError(f"{q} is not a prime power")
        if q > 512:
            raise DomainError("projective planes limited to q <= 512")
        F = GF(q)
        self.field = F
        self.q = q
        self.points = projective_points(F, 2)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.lines = list(self.points)  # dual coordinates
        records = []
        for h in self.lines:
            u, v = _kernel_basis(F, h)
            records.append([self.index[p] for p in span_points(F, u, v)])
        self.geometry = IncidenceGeometry(len(self.points), records)

    def point_index(self, coords) -> int:
        return self.index[normalize(self.field, coords)]


@lru_cache(maxsize=None)
def plane_data(q: int) -> PlaneData:
    return PlaneData(q)


def projective_plane(q: int, validate: bool = False) -> IncidenceGeometry:
    """PG(2, q): 1-spaces as points, 2-spaces (dual coordinates) as lines."""
    G = plane_data(q).geometry
    if validate:
        _gate(G, 3, (q, q), f"PG(2,{q})")
    return G


def _quadric_lines(F, points, B, extra=None):
    """Lines of a quadric: spans of point pairs with zero polar form.

    ``extra(x, y)`` can impose further conditions on a spanning pair.
    """
    index = {p: i for i, p in enumerate(points)}
    seen = set()
    records = []
    n = len(points)
    for a in range(n):
        x = points[a]
        for b in range(a + 1, n):
            y = points[b]
            if B(x, y):
                continue
            if extra is not None and not extra(x, y):
                continue
            key = frozenset(index[p] for p in span_points(F, x, y))
            if key not in seen:
                seen.add(key)
                records.append(tuple(sorted(key)))
    records.sort()
    return records


def _check_field(q, bound):
    if prime_power(q) is None:
        raise DomainError(f"{q} is not a prime power")
    if q > bound:
        raise DomainError(f"q={q} exceeds the bound {bound}")
    return GF(q)


@lru_cache(maxsize=None)
def _q4_data(q: int):
    F = _check_field(q, 32)

    def Q(x):
        v = F.mul(x[0], x[0])
        v = F.add(v, F.mul(x[1], x[2]))
        return F.add(v, F.mul(x[3], x[4]))

    def B(x, y):
        v = F.mul(F.add(1, 1), F.mul(x[0], y[0]))
        for i, j in ((1, 2), (2, 1), (3, 4), (4, 3)):
            v = F.add(v, F.mul(x[i], y[j]))
        return v

    points = [x for x in projective_points(F, 4) if Q(x) == 0]
    G = IncidenceGeometry(len(points), _quadric_lines(F, points, B))
    return G, points


def q4(q: int, validate: bool = True) -> IncidenceGeometry:
    """Parabolic quadrangle Q(4, q) on X0^2 + X1 X2 + X3 X4 = 0."""
    G = _q4_data(q)[0]
    if validate:
        _gate(G, 4, (q, q), f"Q(4,{q})")
    return G


def q4_points(q: int) -> list[tuple]:
    return _q4_data(q)[1]


@lru_cache(maxsize=None)
def _w_data(q: int):
    F = _check_field(q, 32)

    def B(x, y):
        v = F.sub(F.mul(x[0], y[1]), F.mul(x[1], y[0]))
        return F.add(v, F.sub(F.mul(x[2], y[3]), F.mul(x[3], y[2])))

    points = projective_points(F, 3)
    return IncidenceGeometry(len(points), _quadric_lines(F, points, B)), points


def symplectic_quadrangle(q: int, validate: bool = True) -> IncidenceGeometry:
    """W(q): all points of PG(3, q), totally isotropic lines of a symplectic form."""
    G = _w_data(q)[0]
    if validate:
        _gate(G, 4, (q, q), f"W({q})")
    return G


def w2() -> IncidenceGeometry:
    return symplectic_quadrangle(2)


def subfield_embedding(q: int, k: int) -> GeometryMorphism:
    """Q(4, q) -> Q(4, q^k) induced by the inclusion GF(q) < GF(q^k)."""
    if k < 1:
        raise DomainError("extension degree must be >= 1")
    big_q = q**k
    small_F, big_F = _check_field(q, 32), _check_field(big_q, 32)
    table = subfield_map(small_F, big_F)
    S, T = q4(q), q4(big_q)
    spts = q4_points(q)
    tindex = {p: i for i, p in enumerate(q4_points(big_q))}
    pmap = tuple(tindex[tuple(table[a] for a in x)] for x in spts)
    lmap = []
    for pts in S.line_points:
        a, b = pmap[pts[0]], pmap[pts[1]]
        common = set(T.point_lines[a]) & set(T.point_lines[b])
        lmap.append(common.pop())
    return GeometryMorphism(S, T, pmap, tuple(lmap))


# -- ovals and T2(O) ----------------------------------------------------------

def segre_oval(i: int, h: int) -> frozenset:
    """Point indices of {(1 : t : t^(2^i))} u {(0 : 0 : 1)} in PG(2, 2^h)."""
    if i < 1 or h < 1:
        raise DomainError("segre_oval needs i, h >= 1")
    q = 2**h
    if q > 512:
        raise DomainError("field bound exceeded")
    data = plane_data(q)
    F = data.field
    e = 2**i
    pts = {data.point_index((1, t, F.pow(t, e))) for t in F.elements()}
    pts.add(data.point_index((0, 0, 1)))
    return frozenset(pts)


def conic(q: int) -> frozenset:
    """{(1 : t : t^2)} u {(0 : 0 : 1)} in PG(2, q)."""
    data = plane_data(q)
    F = data.field
    pts = {data.point_index((1, t, F.mul(t, t))) for t in F.elements()}
    pts.add(data.point_index((0, 0, 1)))
    return frozenset(pts)


def _plane_order(plane: IncidenceGeometry) -> int:
    return len(plane.line_points[0]) - 1


def is_arc(plane: IncidenceGeometry, S) -> bool:
    """No three points of ``S`` collinear."""
    S = set(S)
    return all(len(S.intersection(pts)) <= 2 for pts in plane.line_points)


def is_oval(plane: IncidenceGeometry, S) -> bool:
    return len(set(S)) == _plane_order(plane) + 1 and is_arc(plane, S)


def is_hyperoval(plane: IncidenceGeometry, S) -> bool:
    return len(set(S)) == _plane_order(plane) + 2 and is_arc(plane, S)


def tangent_lines(plane: IncidenceGeometry, S) -> list[int]:
    S = set(S)
    return [L for L, pts in enumerate(plane.line_points) if len(S.intersection(pts)) == 1]


def nucleus(plane: IncidenceGeometry, S):
    """Common point of all tangent lines of ``S``, or None."""
    tangents = tangent_lines(plane, S)
    if not tangents:
        return None
    common = set(plane.line_points[tangents[0]])
    for L in tangents[1:]:
        common &= set(plane.line_points[L])
    return min(common) if len(common) == 1 else None


def t2_of_oval(q: int, oval) -> IncidenceGeometry:
    """Tits quadrangle T2(O) for an oval ``O`` of PG(2, q) placed at infinity in PG(3, q).

    Points: affine points, then tangent planes (oval point, offset), then the
    symbol (infinity).  Lines: affine lines through an oval point, then the
    oval points themselves.
    """
    data = plane_data(q)
    plane, F = data.geometry, data.field
    oval = sorted(oval)
    if not is_oval(plane, oval):
        raise DomainError("input is not an oval")
    ovset = set(oval)
    affine = list(product(range(q), repeat=3))
    aidx = {p: i for i, p in enumerate(affine)}
    n_aff = len(affine)
    plane_base = {o: n_aff + k * q for k, o in enumerate(oval)}
    infinity = n_aff + len(oval) * q
    records = []
    type_b = {o: [] for o in oval}
    for o in oval:
        direction = data.points[o]
        tangent = next(L for L in plane.point_lines[o] if len(ovset.intersection(plane.line_points[L])) == 1)
        normal = data.lines[tangent]
        seen = set()
        for p in affine:
            if p in seen:
                continue
            cls = []
            for t in range(q):
                r = tuple(F.add(a, F.mul(t, d)) for a, d in zip(p, direction))
                cls.append(r)
            seen.update(cls)
            offset = F.dot(normal, p)
            records.append([aidx[r] for r in cls] + [plane_base[o] + offset])
        type_b[o] = [plane_base[o] + c for c in range(q)] + [infinity]
    for o in oval:
        records.append(type_b[o])
    G = IncidenceGeometry(infinity + 1, records)
    return _gate(G, 4, (q, q), f"T2(O) over GF({q})")


# -- split Cayley hexagon -------------------------------------------------------

def _grassmann_conditions(F):
    """Linear conditions on Grassmann coordinates p_ij = x_i y_j - x_j y_i
    selecting the hexagon lines among the lines of Q(6, q)."""
    pairs = [((1, 2), (3, 4)), ((5, 4), (3, 2)), ((2, 0), (3, 5)),
             ((6, 5), (3, 0)), ((0, 1), (3, 6)), ((4, 6), (3, 1))]

    def pl(x, y, i, j):
        return F.sub(F.mul(x[i], y[j]), F.mul(x[j], y[i]))

    def ok(x, y):
        return all(pl(x, y, *a) == pl(x, y, *b) for a, b in pairs)

    return ok


@lru_cache(maxsize=None)
def _hexagon_data(q: int):
    if prime_power(q) is None or q > 4:
        raise DomainError(f"split Cayley hexagon supported for q in {{2,3,4}}, got {q}")
    F = GF(q)

    def Q(x):
        v = F.add(F.mul(x[0], x[4]), F.mul(x[1], x[5]))
        v = F.add(v, F.mul(x[2], x[6]))
        return F.sub(v, F.mul(x[3], x[3]))

    two = F.add(1, 1)

    def B(x, y):
        v = 0
        for i, j in ((0, 4), (4, 0), (1, 5), (5, 1), (2, 6), (6, 2)):
            v = F.add(v, F.mul(x[i], y[j]))
        return F.sub(v, F.mul(two, F.mul(x[3], y[3])))

    points = [x for x in projective_points(F, 6) if Q(x) == 0]
    records = _quadric_lines(F, points, B, _grassmann_conditions(F))
    return IncidenceGeometry(len(points), records), points


def split_cayley_hexagon(q: int) -> IncidenceGeometry:
    """H(q) on the quadric X0 X4 + X1 X5 + X2 X6 = X3^2 in PG(6, q)."""
    G = _hexagon_data(q)[0]
    return _gate(G, 6, (q, q), f"H({q})")


def hexagon_points(q: int) -> list[tuple]:
    return _hexagon_data(q)[1]


def segre_gcd_ok(i: int, h: int) -> bool:
    return gcd(i, h) == 1
