"""Recognition of (weak) generalized polygons.

A connected firm geometry is a weak generalized m-gon exactly when its
incidence graph has girth 2m and diameter m, which is what
:func:`classify_polygon` checks.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import ContractViolation, EmptyGeometry, NotPolygon
from .incidence import INF, IncidenceGeometry


@dataclass(frozen=True)
class PolygonClass:
    gonality: int
    order: Optional[tuple[int, int]]
    is_firm: bool
    is_thick: bool
    is_thin: bool
    is_weak_generalized_polygon: bool = True

    @property
    def s(self):
        return None if self.order is None else self.order[0]

    @property
    def t(self):
        return None if self.order is None else self.order[1]

    def describe(self) -> str:
        kind = "thick" if self.is_thick else "thin"
        order = "none" if self.order is None else f"({self.order[0]},{self.order[1]})"
        return f"gonality={self.gonality} order={order} {kind} firm={str(self.is_firm).lower()}"


def order_of(G: IncidenceGeometry):
    """``(s, t)`` when every line has s+1 points and every point t+1 lines."""
    if G.num_points == 0 or G.num_lines == 0:
        return None
    ld = set(G.line_degrees())
    pd = set(G.point_degrees())
    if len(ld) != 1 or len(pd) != 1:
        return None
    s, t = ld.pop() - 1, pd.pop() - 1
    if s < 1 or t < 1:
        return None
    return (s, t)


def _shortest_cycle(G: IncidenceGeometry, limit=None):
    """Shortest cycle of the incidence graph as a vertex list, or None.

    With ``limit`` the search stops early once a cycle of length <= limit is seen.
    """
    adj = G.adjacency
    n = len(adj)
    best = None
    best_len = INF
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best_len:
                break
            for w in adj[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    length = dist[u] + dist[w] + 1
                    if length < best_len:
                        best_len = length
                        best = (root, u, w, parent[:])
        if limit is not None and best_len <= limit:
            break
    if best is None:
        return None
    root, u, w, par = best
    left = [u]
    while left[-1] != root:
        left.append(par[left[-1]])
    right = [w]
    while right[-1] != root:
        right.append(par[right[-1]])
    cycle = list(reversed(left)) + right[:-1]
    return cycle


def girth(G: IncidenceGeometry):
    cycle = _shortest_cycle(G)
    return INF if cycle is None else len(cycle)


def diameter(G: IncidenceGeometry):
    best = 0
    witness = None
    for v in range(G.num_elements):
        dist = G.bfs(v)
        d = max(dist)
        if d > best:
            best = d
            witness = (v, dist.index(d))
    return best, witness


def classify_polygon(G: IncidenceGeometry) -> PolygonClass:
    """Classify ``G`` as a weak generalized polygon or raise :class:`NotPolygon`."""
    cached = getattr(G, "_polygon_class", None)
    if cached is not None:
        return cached
    if G.num_points == 0 and G.num_lines == 0:
        raise EmptyGeometry("geometry has no elements")
    dist0 = G.bfs(0)
    if INF in dist0:
        far = dist0.index(INF)
        raise NotPolygon("disconnected", (G.element(0), G.element(far)))
    for v, nb in enumerate(G.adjacency):
        if len(nb) < 2:
            raise NotPolygon("not firm", (G.element(v), len(nb)))
    diam, far_pair = diameter(G)
    cycle = _shortest_cycle(G)
    if cycle is None:
        raise NotPolygon("incidence graph is a tree")
    g = len(cycle)
    if g != 2 * diam:
        if g < 2 * diam:
            u, w = far_pair
            raise NotPolygon(
                f"girth {g} but diameter {diam}",
                {"pair_too_far": (G.element(u), G.element(w)), "short_cycle": [G.element(v) for v in cycle]},
            )
        raise NotPolygon(f"girth {g} exceeds twice the diameter {diam}")
    thick = all(len(nb) >= 3 for nb in G.adjacency)
    verdict = PolygonClass(
        gonality=diam,
        order=order_of(G),
        is_firm=True,
        is_thick=thick,
        is_thin=not thick,
    )
    G._polygon_class = verdict
    return verdict


def gonality_witness(G: IncidenceGeometry, m: int):
    """An ordinary sub-m-gon as alternating point/line elements, starting at a point."""
    try:
        verdict = classify_polygon(G)
    except NotPolygon as exc:
        raise ContractViolation(f"not a polygon: {exc}") from exc
    if verdict.gonality != m:
        raise ContractViolation(f"gonality is {verdict.gonality}, not {m}")
    cycle = _shortest_cycle(G)
    start = next(i for i, v in enumerate(cycle) if v < G.num_points)
    cycle = cycle[start:] + cycle[:start]
    return [G.element(v) for v in cycle]


def count_shortest_paths(G: IncidenceGeometry, source: int) -> list:
    """Number of shortest paths from vertex ``source`` to every vertex."""
    dist = G.bfs(source)
    order = sorted(range(G.num_elements), key=lambda v: dist[v])
    count = [0] * G.num_elements
    count[source] = 1
    for v in order:
        if dist[v] in (0, INF):
            continue
        count[v] = sum(count[u] for u in G.adjacency[v] if dist[u] == dist[v] - 1)
    return count
