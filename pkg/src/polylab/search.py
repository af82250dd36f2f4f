"""Exhaustive epimorphism enumeration by propagated backtracking.

Variables are the source elements (incidence-graph vertices); a domain is a
bitmask of admissible target vertices.  Propagation rules:

* adjacency: a vertex's domain lies inside the neighbourhood union of each
  neighbour's domain;
* distance: a morphism never increases incidence-graph distance, so once
  ``u`` is fixed to ``x`` every ``v`` is confined to the ball of radius
  ``d(u, v)`` around ``x``;
* surjectivity: every target vertex needs a candidate preimage; a target
  vertex with a single candidate forces it.

The root (source point 0) is split over orbit representatives of the target
automorphism group and results are closed under that group afterwards, so
the output is the full raw set in canonical order regardless of how work is
scheduled.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from .errors import Truncated
from .incidence import INF, IncidenceGeometry
from .morphisms import GeometryMorphism, compose, from_vertex_map

DEFAULT_NODE_LIMIT = 10**8


def node_limit_from_env() -> int:
    raw = os.environ.get("POLYLAB_LIMIT")
    if not raw:
        return DEFAULT_NODE_LIMIT
    return int(float(raw))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Engine:
    def __init__(self, src: IncidenceGeometry, tgt: IncidenceGeometry):
        self.src = src
        self.tgt = tgt
        n = src.num_elements
        m = tgt.num_elements
        self.n = n
        self.adj = src.adjacency
        if n <= 10_000:
            mat = src.distance_matrix()
            self.dist = [[int(d) if d != INF else -1 for d in row] for row in mat]
        else:
            self.dist = [[d if d != INF else -1 for d in src.bfs(v)] for v in range(n)]
        tadj = tgt.adjacency
        self.nbr = [sum(1 << w for w in tadj[x]) for x in range(m)]
        P2 = tgt.num_points
        self.tpoints = (1 << P2) - 1
        self.tlines = ((1 << m) - 1) ^ self.tpoints
        self.full = (1 << m) - 1
        # ball[x][k]: target vertices within distance k of x
        self.ball = []
        for x in range(m):
            d = tgt.bfs(x)
            finite = [v for v in d if v != INF]
            rad = int(max(finite))
            rows = []
            for k in range(rad + 1):
                rows.append(sum(1 << w for w in range(m) if d[w] <= k))
            self.ball.append(rows)
        self.ball_cap = [len(rows) - 1 for rows in self.ball]
        self._union_cache: dict[int, int] = {}
        P = src.num_points
        self.init = [self.tpoints] * P + [self.tlines] * src.num_lines
        # BFS order from the root breaks ties in variable selection
        d0 = src.bfs(0)
        self.rank = [0] * n
        for r, v in enumerate(sorted(range(n), key=lambda v: (d0[v], v))):
            self.rank[v] = r
        self.nodes = 0
        self.node_limit = DEFAULT_NODE_LIMIT

    def nbr_union(self, mask: int) -> int:
        got = self._union_cache.get(mask)
        if got is None:
            got = 0
            for x in _bits(mask):
                got |= self.nbr[x]
            self._union_cache[mask] = got
        return got

    def propagate(self, dom, dirty, fixed) -> bool:
        """Run all rules to a fixpoint; ``dirty`` lists vertices whose domain changed."""
        adj, dist, ball, cap = self.adj, self.dist, self.ball, self.ball_cap
        n = self.n
        while True:
            while dirty:
                v = dirty.pop()
                dv = dom[v]
                if dv & (dv - 1) == 0:
                    if not fixed[v]:
                        fixed[v] = True
                        x = dv.bit_length() - 1
                        bx = ball[x]
                        cx = cap[x]
                        row = dist[v]
                        for w in range(n):
                            if w == v:
                                continue
                            k = row[w]
                            if k < 0 or k >= cx:
                                continue
                            old = dom[w]
                            new = old & bx[k]
                            if new != old:
                                if not new:
                                    return False
                                dom[w] = new
                                dirty.append(w)
                    continue
                allowed = self.nbr_union(dv)
                for w in adj[v]:
                    old = dom[w]
                    new = old & allowed
                    if new != old:
                        if not new:
                            return False
                        dom[w] = new
                        dirty.append(w)
            # surjectivity
            once = twice = 0
            for d in dom:
                twice |= once & d
                once |= d
            if once != self.full:
                return False
            unique = once & ~twice
            if unique:
                for x in _bits(unique):
                    bit = 1 << x
                    for v in range(n):
                        if dom[v] & bit:
                            if dom[v] != bit:
                                dom[v] = bit
                                dirty.append(v)
                            break
                if not dirty:
                    return True
                continue
            return True

    def solve(self, dom, on_solution):
        fixed = [False] * self.n
        dirty = list(range(self.n))
        if not self.propagate(dom, dirty, fixed):
            return
        self._dfs(dom, fixed, on_solution)

    def _dfs(self, dom, fixed, on_solution):
        self.nodes += 1
        if self.nodes > self.node_limit:
            raise Truncated(f"node budget {self.node_limit} exhausted", nodes=self.nodes)
        best = -1
        best_key = None
        rank = self.rank
        for v in range(self.n):
            dv = dom[v]
            if dv & (dv - 1):
                key = (bin(dv).count("1"), rank[v])
                if best_key is None or key < best_key:
                    best_key = key
                    best = v
        if best < 0:
            on_solution([d.bit_length() - 1 for d in dom])
            return
        for x in _bits(dom[best]):
            child = dom[:]
            child[best] = 1 << x
            cfixed = fixed[:]
            if self.propagate(child, [best], cfixed):
                self._dfs(child, cfixed, on_solution)


class _Stop(Exception):
    pass


def _run_roots(src, tgt, roots, node_limit, stop_after=None):
    """Search every root assignment in ``roots``; returns (vertex maps, nodes)."""
    eng = _Engine(src, tgt)
    eng.node_limit = node_limit
    found = []

    def sink(vmap):
        found.append(tuple(vmap))
        if stop_after is not None and len(found) >= stop_after:
            raise _Stop

    try:
        for x in roots:
            dom = eng.init[:]
            dom[0] = dom[0] & (1 << x)
            if dom[0]:
                eng.solve(dom, sink)
    except _Stop:
        pass
    return found, eng.nodes


def _raw_search(src, tgt, roots, node_limit, jobs=1, stop_after=None):
    if src.num_points == 0:
        return [], 0
    if jobs is None:
        jobs = os.cpu_count() or 1
    if jobs <= 1 or len(roots) <= 1 or stop_after is not None:
        return _run_roots(src, tgt, roots, node_limit, stop_after)
    chunks = [[x] for x in roots]
    found, nodes = [], 0
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_run_roots, src, tgt, c, node_limit) for c in chunks]
        for fut in futures:
            f, k = fut.result()
            found.extend(f)
            nodes += k
    return found, nodes


def _bare_automorphisms(G: IncidenceGeometry, node_limit=DEFAULT_NODE_LIMIT):
    roots = list(range(G.num_points))
    vmaps, _ = _raw_search(G, G, roots, node_limit)
    return [from_vertex_map(G, G, v) for v in sorted(vmaps)]


def _point_orbit_reps(auts, num_points):
    seen = set()
    reps = []
    for x in range(num_points):
        if x in seen:
            continue
        reps.append(x)
        seen.update(a.point_map[x] for a in auts)
    return reps


def enumerate_epimorphisms(
    src: IncidenceGeometry,
    tgt: IncidenceGeometry,
    limit: Optional[int] = None,
    count_only: bool = False,
    up_to_target_automorphism: bool = False,
    node_limit: Optional[int] = None,
    jobs: int = 1,
):
    """All epimorphisms ``src -> tgt`` in canonical order.

    Raises :class:`Truncated` when more than ``limit`` maps exist or the
    node budget (``POLYLAB_LIMIT``, default 1e8) runs out.  With
    ``count_only`` the number of maps is returned instead of the list.
    """
    if node_limit is None:
        node_limit = node_limit_from_env()
    if src.num_points == 0 or tgt.num_points == 0:
        return 0 if count_only else []
    auts = _bare_automorphisms(tgt, node_limit)
    roots = _point_orbit_reps(auts, tgt.num_points)
    try:
        vmaps, nodes = _raw_search(src, tgt, roots, node_limit, jobs)
    except Truncated as exc:
        raise Truncated(str(exc), nodes=exc.nodes) from None
    base = [from_vertex_map(src, tgt, v) for v in vmaps]
    closed = {}
    for phi in base:
        for a in auts:
            psi = compose(a, phi)
            closed[psi.key()] = psi
    if up_to_target_automorphism:
        reps = {}
        for psi in closed.values():
            rep = min((compose(a, psi) for a in auts), key=lambda m: m.key())
            reps[rep.key()] = rep
        closed = reps
    result = [closed[k] for k in sorted(closed)]
    if limit is not None and len(result) > limit:
        raise Truncated(f"{len(result)} maps exceed limit {limit}", partial=result[:limit], nodes=nodes)
    if count_only:
        return len(result)
    return result


def enumerate_automorphisms(G: IncidenceGeometry, node_limit: Optional[int] = None, jobs: int = 1):
    """Self-epimorphisms of ``G`` (bijective for finite thick polygons)."""
    return enumerate_epimorphisms(G, G, node_limit=node_limit, jobs=jobs)


def find_isomorphism(A: IncidenceGeometry, B: IncidenceGeometry, node_limit: Optional[int] = None):
    """An isomorphism ``A -> B`` or None."""
    if (A.num_points, A.num_lines, A.num_flags) != (B.num_points, B.num_lines, B.num_flags):
        return None
    if sorted(A.point_degrees()) != sorted(B.point_degrees()) or sorted(A.line_degrees()) != sorted(B.line_degrees()):
        return None
    if A.num_points == 0:
        return GeometryMorphism(A, B, (), tuple(range(B.num_lines)))
    if node_limit is None:
        node_limit = node_limit_from_env()
    vmaps, _ = _raw_search(A, B, list(range(B.num_points)), node_limit, stop_after=1)
    if not vmaps:
        return None
    # a bijective morphism between geometries with equal flag counts is an isomorphism
    return from_vertex_map(A, B, vmaps[0])


def are_isomorphic(A, B) -> bool:
    return find_isomorphism(A, B) is not None
