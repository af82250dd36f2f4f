from collections import deque

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylab.incidence import (
    INF,
    Element,
    IncidenceGeometry,
    distance,
    dual,
    dual_element,
    incident_points,
    induced_subgeometry,
    line,
    line_graph_distance,
    pencil,
    point,
)


@st.composite
def geometries(draw, max_points=8, max_lines=8):
    n = draw(st.integers(1, max_points))
    m = draw(st.integers(0, max_lines))
    lines = [draw(st.sets(st.integers(0, n - 1), max_size=n)) for _ in range(m)]
    return IncidenceGeometry(n, lines)


def bfs_oracle(G, src):
    # plain adjacency built from flags, independent of the cached tables
    nbrs = {v: set() for v in range(G.num_points + G.num_lines)}
    for j, rec in enumerate(G.line_points):
        for p in rec:
            nbrs[p].add(G.num_points + j)
            nbrs[G.num_points + j].add(p)
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return [dist.get(v, INF) for v in range(len(nbrs))]


def test_basic_shape():
    G = IncidenceGeometry(3, [(1, 0), (1, 2), (0, 2)])
    assert G.line_points == ((0, 1), (1, 2), (0, 2))
    assert G.point_lines == ((0, 2), (0, 1), (1, 2))
    assert G.num_flags == 6
    assert G.is_incident(0, 0) and not G.is_incident(2, 0)
    assert G.vertex(line(1)) == 4 and G.element(4) == line(1)


def test_rejects_bad_records():
    with pytest.raises(IndexError):
        IncidenceGeometry(2, [(0, 2)])
    with pytest.raises(ValueError):
        IncidenceGeometry(2, [(0, 0)])
    with pytest.raises(ValueError):
        IncidenceGeometry(-1, [])


def test_labels_ignored_by_equality():
    a = IncidenceGeometry(2, [(0, 1)], labels={"points": ["x", "y"]})
    b = IncidenceGeometry(2, [(1, 0)])
    assert a == b and hash(a) == hash(b)


def test_element_helpers():
    assert point(3) == Element("point", 3)
    assert dual_element(point(3)) == line(3)
    assert repr(line(2)) == "l2"


def test_pencil_and_row(pg2):
    assert len(incident_points(pg2, 0)) == 3
    assert len(pencil(pg2, 0)) == 3
    with pytest.raises(IndexError):
        pencil(pg2, 7)


def test_distances_in_plane(pg2):
    # any two points of a projective plane are at distance 2
    for q in range(1, 7):
        assert distance(pg2, point(0), point(q)) == 2
    assert line_graph_distance(pg2, 0, 5) == 1


def test_disconnected_distance_is_inf():
    G = IncidenceGeometry(3, [(0, 1)])
    assert distance(G, point(0), point(2)) == INF
    assert not G.is_connected()
    assert line_graph_distance(IncidenceGeometry(4, [(0, 1), (2, 3)]), 0, 1) == INF


@settings(max_examples=60, deadline=None)
@given(geometries())
def test_bfs_matches_oracle(G):
    for v in range(G.num_elements):
        assert G.bfs(v) == bfs_oracle(G, v)


@settings(max_examples=60, deadline=None)
@given(geometries())
def test_distance_matrix_matches_bfs(G):
    mat = G.distance_matrix()
    for v in range(G.num_elements):
        assert list(mat[v]) == G.bfs(v)


@settings(max_examples=60, deadline=None)
@given(geometries())
def test_dual_is_involution(G):
    D = dual(G)
    assert D.num_points == G.num_lines and D.num_lines == G.num_points
    assert dual(D) == G
    assert D.num_flags == G.num_flags


@settings(max_examples=40, deadline=None)
@given(geometries(), st.data())
def test_induced_subgeometry_keeps_incidences(G, data):
    pts = data.draw(st.sets(st.integers(0, G.num_points - 1)))
    lns = data.draw(st.sets(st.integers(0, max(G.num_lines - 1, 0)))) if G.num_lines else set()
    H, remap = induced_subgeometry(G, pts, lns)
    for j, rec in enumerate(H.line_points):
        old = remap.lines[j]
        assert {remap.points[p] for p in rec} == set(G.line_points[old]) & set(pts)
