import itertools
import os

import pytest

from polylab import constructors as C
from polylab.errors import Truncated
from polylab.incidence import IncidenceGeometry
from polylab.morphisms import GeometryMorphism, is_bijective, is_epimorphism, verify_morphism
from polylab.search import (
    DEFAULT_NODE_LIMIT,
    are_isomorphic,
    enumerate_automorphisms,
    enumerate_epimorphisms,
    find_isomorphism,
    node_limit_from_env,
)


def brute_force_epis(S, T):
    """Every (point map, line map) pair, filtered; only for tiny geometries."""
    found = []
    for pm in itertools.product(range(T.num_points), repeat=S.num_points):
        if len(set(pm)) != T.num_points:
            continue
        for lm in itertools.product(range(T.num_lines), repeat=S.num_lines):
            if len(set(lm)) != T.num_lines:
                continue
            phi = GeometryMorphism(S, T, pm, lm)
            if verify_morphism(phi) is None:
                found.append(phi.key())
    return sorted(found)


SMALL = [
    ("triangle", C.ordinary_polygon(3), C.ordinary_polygon(3)),
    ("digon33-digon22", C.digon(3, 3), C.digon(2, 2)),
    ("grid22", C.grid(2, 2), C.grid(2, 2)),
    ("digon23-digon22", C.digon(2, 3), C.digon(2, 2)),
    ("hexagon-triangle", C.ordinary_polygon(6), C.ordinary_polygon(3)),
]


@pytest.mark.parametrize("name,S,T", SMALL, ids=[s[0] for s in SMALL])
def test_search_matches_brute_force(name, S, T):
    got = [phi.key() for phi in enumerate_epimorphisms(S, T)]
    assert got == brute_force_epis(S, T)


def test_triangle_symmetries(triangle):
    assert len(enumerate_epimorphisms(triangle, triangle)) == 6


def test_digon_surjection_count():
    assert len(enumerate_epimorphisms(C.digon(3, 3), C.digon(2, 2))) == 36


def test_plane_collineations(pg2):
    auts = enumerate_automorphisms(pg2)
    assert len(auts) == 168
    assert all(is_bijective(a) for a in auts)


def test_plane_onto_quadrangle_is_empty(pg2):
    assert enumerate_epimorphisms(pg2, C.grid(2, 2)) == []


def test_output_is_sorted_and_valid(pg2, triangle):
    maps = enumerate_epimorphisms(pg2, triangle)
    keys = [m.key() for m in maps]
    assert keys == sorted(keys) and len(set(keys)) == len(keys) == 126
    assert all(is_epimorphism(m) for m in maps)


def test_count_only(pg2, triangle):
    assert enumerate_epimorphisms(pg2, triangle, count_only=True) == 126


def test_up_to_target_automorphism(pg2, triangle):
    reps = enumerate_epimorphisms(pg2, triangle, up_to_target_automorphism=True)
    # the triangle's 6 symmetries act freely on epimorphisms
    assert len(reps) == 126 // 6


def test_limit_raises_with_partial(pg2, triangle):
    with pytest.raises(Truncated) as info:
        enumerate_epimorphisms(pg2, triangle, limit=10)
    assert len(info.value.partial) == 10


def test_node_budget(w2):
    with pytest.raises(Truncated):
        enumerate_epimorphisms(w2, C.grid(2, 2), node_limit=5)


def test_node_limit_from_env(monkeypatch):
    monkeypatch.delenv("POLYLAB_LIMIT", raising=False)
    assert node_limit_from_env() == DEFAULT_NODE_LIMIT
    monkeypatch.setenv("POLYLAB_LIMIT", "1e3")
    assert node_limit_from_env() == 1000


def test_parallel_matches_serial(w2):
    T = C.grid(2, 2)
    serial = [m.key() for m in enumerate_epimorphisms(w2, T, jobs=1)]
    parallel = [m.key() for m in enumerate_epimorphisms(w2, T, jobs=2)]
    assert serial == parallel


def test_isomorphism_search(w2):
    phi = find_isomorphism(w2, C.q4(2))
    assert phi is not None and verify_morphism(phi) is None and is_bijective(phi)
    assert not are_isomorphic(w2, C.projective_plane(2))
    assert find_isomorphism(C.grid(3, 3), C.dual_grid(3, 3)) is None


def test_empty_geometries():
    E = IncidenceGeometry(0, [])
    assert enumerate_epimorphisms(E, C.ordinary_polygon(3)) == []
