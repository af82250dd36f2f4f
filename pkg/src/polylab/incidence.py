"""Finite point-line geometries and their incidence-graph primitives.

A geometry has points ``0..P-1`` and lines ``0..L-1``.  The bipartite
incidence graph uses vertex ids ``0..P-1`` for points and ``P..P+L-1`` for
lines; most search code works on vertex ids, the public API on
:class:`Element` values.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

INF = float("inf")

#: all-pairs tables are only built up to this many elements
MATRIX_LIMIT = 10_000


class Element(NamedTuple):
    kind: str  # "point" or "line"
    index: int

    def __repr__(self):
        return f"{self.kind[0]}{self.index}"


def point(i: int) -> Element:
    return Element("point", i)


def line(j: int) -> Element:
    return Element("line", j)


class Flag(NamedTuple):
    point: int
    line: int


class IncidenceGeometry:
    """Immutable finite point-line geometry.

    ``lines`` lists, for each line, the indices of its points.  Labels are
    decorative and ignored by equality.
    """

    def __init__(self, num_points: int, lines: Iterable[Iterable[int]], labels=None):
        num_points = int(num_points)
        if num_points < 0:
            raise ValueError("negative point count")
        records = []
        for j, rec in enumerate(lines):
            pts = sorted(int(p) for p in rec)
            for p in pts:
                if not 0 <= p < num_points:
                    raise IndexError(f"line {j}: point index {p} out of range")
            if len(set(pts)) != len(pts):
                raise ValueError(f"line {j}: repeated flag")
            records.append(tuple(pts))
        self._num_points = num_points
        self._line_points = tuple(records)
        self.labels = labels
        self._bfs_cache: dict[int, list] = {}

    # -- basic shape -------------------------------------------------------
    @property
    def num_points(self) -> int:
        return self._num_points

    @property
    def num_lines(self) -> int:
        return len(self._line_points)

    @property
    def num_elements(self) -> int:
        return self._num_points + len(self._line_points)

    @property
    def line_points(self) -> tuple[tuple[int, ...], ...]:
        return self._line_points

    @cached_property
    def point_lines(self) -> tuple[tuple[int, ...], ...]:
        acc: list[list[int]] = [[] for _ in range(self._num_points)]
        for j, pts in enumerate(self._line_points):
            for p in pts:
                acc[p].append(j)
        return tuple(tuple(a) for a in acc)

    @cached_property
    def flags(self) -> tuple[Flag, ...]:
        return tuple(sorted(Flag(p, j) for j, pts in enumerate(self._line_points) for p in pts))

    @cached_property
    def flag_set(self) -> frozenset:
        return frozenset(self.flags)

    @property
    def num_flags(self) -> int:
        return sum(len(pts) for pts in self._line_points)

    def point_degrees(self) -> list[int]:
        return [len(ls) for ls in self.point_lines]

    def line_degrees(self) -> list[int]:
        return [len(ps) for ps in self._line_points]

    def is_incident(self, p: int, j: int) -> bool:
        return (p, j) in self.flag_set

    # -- incidence graph ---------------------------------------------------
    def vertex(self, e: Element) -> int:
        kind, i = e
        if kind == "point":
            if not 0 <= i < self._num_points:
                raise IndexError(f"point {i} out of range")
            return i
        if kind == "line":
            if not 0 <= i < self.num_lines:
                raise IndexError(f"line {i} out of range")
            return self._num_points + i
        raise ValueError(f"unknown element kind {kind!r}")

    def element(self, v: int) -> Element:
        if v < self._num_points:
            return point(v)
        return line(v - self._num_points)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        P = self._num_points
        adj = [tuple(P + j for j in ls) for ls in self.point_lines]
        adj.extend(pts for pts in self._line_points)
        return tuple(adj)

    def bfs(self, v: int) -> list:
        """Distances from vertex ``v``; unreachable vertices get ``INF``."""
        cached = self._bfs_cache.get(v)
        if cached is not None:
            return cached
        adj = self.adjacency
        dist: list = [INF] * len(adj)
        dist[v] = 0
        queue = deque([v])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for w in adj[u]:
                if dist[w] == INF:
                    dist[w] = du
                    queue.append(w)
        # racing writers store identical lists
        self._bfs_cache[v] = dist
        return dist

    @cached_property
    def _matrix(self) -> np.ndarray:
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import shortest_path

        n = self.num_elements
        rows, cols = [], []
        for u, nb in enumerate(self.adjacency):
            rows.extend([u] * len(nb))
            cols.extend(nb)
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
        return shortest_path(graph, method="D", unweighted=True, directed=False)

    def distance_matrix(self) -> np.ndarray:
        """All-pairs incidence-graph distances (float array, ``inf`` if disconnected)."""
        if self.num_elements > MATRIX_LIMIT:
            raise ValueError(f"distance matrix limited to {MATRIX_LIMIT} elements")
        return self._matrix

    def is_connected(self) -> bool:
        if self.num_elements == 0:
            return True
        return INF not in self.bfs(0)

    # -- comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, IncidenceGeometry):
            return NotImplemented
        return self._num_points == other._num_points and self._line_points == other._line_points

    def __hash__(self):
        return hash((self._num_points, self._line_points))

    def __repr__(self):
        return f"IncidenceGeometry(points={self.num_points}, lines={self.num_lines}, flags={self.num_flags})"


def distance(G: IncidenceGeometry, a: Element, b: Element):
    """Incidence-graph distance between two elements (``INF`` if disconnected)."""
    return G.bfs(G.vertex(a))[G.vertex(b)]


def line_graph_distance(G: IncidenceGeometry, L1: int, L2: int):
    """Distance in the graph on lines, two lines adjacent when concurrent."""
    for L in (L1, L2):
        if not 0 <= L < G.num_lines:
            raise IndexError(f"line {L} out of range")
    if L1 == L2:
        return 0
    dist = {L1: 0}
    queue = deque([L1])
    while queue:
        u = queue.popleft()
        for p in G.line_points[u]:
            for w in G.point_lines[p]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    if w == L2:
                        return dist[w]
                    queue.append(w)
    return INF


def dual(G: IncidenceGeometry) -> IncidenceGeometry:
    labels = None
    if G.labels is not None:
        labels = {"points": G.labels.get("lines"), "lines": G.labels.get("points")}
    return IncidenceGeometry(G.num_lines, G.point_lines, labels=labels)


def dual_element(e: Element) -> Element:
    return Element("line" if e.kind == "point" else "point", e.index)


def incident_points(G: IncidenceGeometry, L: int) -> frozenset:
    if not 0 <= L < G.num_lines:
        raise IndexError(f"line {L} out of range")
    return frozenset(G.line_points[L])


def pencil(G: IncidenceGeometry, x: int) -> frozenset:
    if not 0 <= x < G.num_points:
        raise IndexError(f"point {x} out of range")
    return frozenset(G.point_lines[x])


class Remap(NamedTuple):
    """Old indices of the kept points and lines, in new-index order."""

    points: tuple[int, ...]
    lines: tuple[int, ...]


def induced_subgeometry(G: IncidenceGeometry, points: Iterable[int], lines: Iterable[int]):
    """Restrict ``G`` to the given points and lines; returns ``(H, Remap)``."""
    pts = sorted(set(points))
    lns = sorted(set(lines))
    for p in pts:
        if not 0 <= p < G.num_points:
            raise IndexError(f"point {p} out of range")
    for L in lns:
        if not 0 <= L < G.num_lines:
            raise IndexError(f"line {L} out of range")
    new_index = {p: i for i, p in enumerate(pts)}
    records = [[new_index[p] for p in G.line_points[L] if p in new_index] for L in lns]
    return IncidenceGeometry(len(pts), records), Remap(tuple(pts), tuple(lns))
