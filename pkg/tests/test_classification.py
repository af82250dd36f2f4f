import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polylab import constructors as C
from polylab.classification import (
    CanonicalEpiDescriptor,
    Unclassified,
    alternate_wordings_agree,
    all_descriptors,
    canonical_epimorphism,
    canonical_gq_epimorphism,
    canonical_hexagon_epimorphism,
    canonical_plane_epimorphism,
    classify_epimorphism,
    digon_epimorphism,
    double_epimorphism,
    fiber_mismatches,
    generate_canonical_epimorphisms,
    literal_fibers,
    make_descriptor,
    role_names,
    surjections,
    thin_polygon_theorem_check,
    undouble_epimorphism,
    verify_classification_theorem,
)
from polylab.errors import ContractViolation, DescriptorError, DomainError
from polylab.incidence import dual, line, point
from polylab.morphisms import (
    GeometryMorphism,
    compose,
    fibers,
    identity,
    is_epimorphism,
    is_isomorphism,
    line_saturation,
    verify_morphism,
)
from polylab.search import enumerate_epimorphisms, find_isomorphism


def gate(phi):
    return verify_morphism(phi) is None and is_epimorphism(phi)


def labeled_fibers(phi, d):
    fib = fibers(phi)
    return {name: fib.of(d.traversal[pos]) for pos, name in role_names(d.theorem).items()}


# -- role names -------------------------------------------------------------------

def test_role_names():
    assert role_names("GT") == {5: "a", 1: "b", 3: "c", 0: "ab", 2: "bc", 4: "ac"}
    hexa = role_names("JATGH")
    assert [hexa[i] for i in range(0, 12, 2)] == ["bc", "ab", "af", "ef", "de", "cd"]


# -- planes -----------------------------------------------------------------------

def test_plane_case_a(pg2, triangle):
    row = pg2.line_points[0]
    d = make_descriptor(pg2, "GT", "A", 0, [row[0]], triangle)
    phi = canonical_plane_epimorphism(pg2, d, triangle)
    assert gate(phi)
    fib = labeled_fibers(phi, d)
    assert fib["ab"] == {0}
    assert fib["a"] == {row[0]} and fib["b"] == set(row[1:])
    assert fib["c"] == set(range(7)) - set(row)


def test_plane_swapped_blocks_swap_roles(pg2, triangle):
    row = pg2.line_points[0]
    d1 = make_descriptor(pg2, "GT", "A", 0, [row[0]], triangle)
    d2 = make_descriptor(pg2, "GT", "A", 0, row[1:], triangle)
    f1 = labeled_fibers(canonical_plane_epimorphism(pg2, d1, triangle), d1)
    f2 = labeled_fibers(canonical_plane_epimorphism(pg2, d2, triangle), d2)
    assert f1["a"] == f2["b"] and f1["b"] == f2["a"]
    assert f1["ac"] == f2["bc"]


def test_plane_case_b(pg3, triangle):
    pen = pg3.point_lines[0]
    d = make_descriptor(pg3, "GT", "B", 0, [pen[0]], triangle)
    phi = canonical_plane_epimorphism(pg3, d, triangle)
    assert gate(phi)
    assert fibers(phi).of(d.traversal[0]) == {0}
    assert classify_epimorphism(phi).case in ("A", "B")


# -- quadrangles --------------------------------------------------------------------

def test_gq_case_a_fiber_sizes(w2):
    T = C.ordinary_polygon(4)
    row = w2.line_points[0]
    d = make_descriptor(w2, "JATGQ", "A", 0, [row[0]], T)
    phi = canonical_gq_epimorphism(w2, d, T)
    assert gate(phi)
    fib = labeled_fibers(phi, d)
    assert fib["ab"] == {0}
    assert (len(fib["a"]), len(fib["b"]), len(fib["c"]), len(fib["d"])) == (1, 2, 8, 4)


def test_gq_swapped_blocks(w2):
    T = C.ordinary_polygon(4)
    row = w2.line_points[0]
    d = make_descriptor(w2, "JATGQ", "A", 0, row[1:], T)
    fib = labeled_fibers(canonical_gq_epimorphism(w2, d, T), d)
    assert (len(fib["a"]), len(fib["b"]), len(fib["c"]), len(fib["d"])) == (2, 1, 4, 8)


def test_gq_case_b(w2):
    T = C.ordinary_polygon(4)
    pen = w2.point_lines[3]
    d = make_descriptor(w2, "JATGQ", "B", 3, [pen[0]], T)
    phi = canonical_gq_epimorphism(w2, d, T)
    assert gate(phi)
    assert fibers(phi).of(d.traversal[0]) == {3}


# -- hexagons ----------------------------------------------------------------------

def test_hexagon_cases(h2):
    T = C.ordinary_polygon(6)
    row = h2.line_points[0]
    for first in ([row[0]], row[1:]):
        d = make_descriptor(h2, "JATGH", "A", 0, first, T)
        phi = canonical_hexagon_epimorphism(h2, d, T)
        assert gate(phi) and line_saturation(phi) is None
        fib = labeled_fibers(phi, d)
        assert fib["bc"] == {0} and fib["c"] == set(first)
        # the six point fibers partition the points
        pts = [fib[x] for x in "abcdef"]
        assert sum(map(len, pts)) == 63 and set().union(*pts) == set(range(63))
    pen = h2.point_lines[5]
    d = make_descriptor(h2, "JATGH", "B", 5, [pen[0]], T)
    assert gate(canonical_hexagon_epimorphism(h2, d, T))


def test_hexagon_alternate_wordings(h2):
    for base in range(0, 63, 7):
        row = h2.line_points[base]
        assert alternate_wordings_agree(h2, base, row[:1], row[1:]) == []


def test_literal_fibers_detect_wrong_labels(pg2, triangle):
    row = pg2.line_points[0]
    d = make_descriptor(pg2, "GT", "A", 0, [row[0]], triangle)
    phi = canonical_plane_epimorphism(pg2, d, triangle)
    assert fiber_mismatches(phi, d) == []
    wrong = make_descriptor(pg2, "GT", "A", 0, row[1:], triangle)
    assert set(fiber_mismatches(phi, wrong)) >= {"a", "b"}


# -- descriptor validation -----------------------------------------------------------

def test_descriptor_errors(pg2, w2, triangle):
    row = pg2.line_points[0]
    trav = make_descriptor(pg2, "GT", "A", 0, [row[0]], triangle).traversal
    bad = [
        CanonicalEpiDescriptor("GT", "A", 0, (frozenset(), frozenset(row)), trav),
        CanonicalEpiDescriptor("GT", "A", 0, (frozenset(row[:2]), frozenset(row[1:])), trav),
        CanonicalEpiDescriptor("GT", "A", 0, (frozenset(row[:1]), frozenset(row[1:2])), trav),
        CanonicalEpiDescriptor("GT", "A", 9, (frozenset(row[:1]), frozenset(row[1:])), trav),
        CanonicalEpiDescriptor("GT", "C", 0, (frozenset(row[:1]), frozenset(row[1:])), trav),
        CanonicalEpiDescriptor("GT", "A", 0, (frozenset(row[:1]), frozenset(row[1:])), trav[::-1]),
        CanonicalEpiDescriptor("GT", "A", 0, (frozenset(row[:1]), frozenset(row[1:])), trav[1:] + trav[:1]),
    ]
    for d in bad:
        with pytest.raises(DescriptorError):
            canonical_epimorphism(pg2, d, triangle)
    good = CanonicalEpiDescriptor("GT", "A", 0, (frozenset(row[:1]), frozenset(row[1:])), trav)
    with pytest.raises(DescriptorError):
        canonical_gq_epimorphism(pg2, good, triangle)


def test_block_sizes_bounded_by_s(w2):
    T = C.ordinary_polygon(4)
    ds = list(all_descriptors(w2, T, "JATGQ"))
    s = 2
    assert all(1 <= len(b) <= s for d in ds for b in d.partition)


def test_shape_errors(pg2, w2, triangle):
    d = make_descriptor(pg2, "GT", "A", 0, [pg2.line_points[0][0]], triangle)
    with pytest.raises(ContractViolation):
        canonical_epimorphism(pg2, d, C.ordinary_polygon(4))
    with pytest.raises(ContractViolation):
        canonical_epimorphism(C.grid(3, 3), d, triangle)
    not_epi = GeometryMorphism(w2, C.ordinary_polygon(4), (0,) * 15, (0,) * 15)
    with pytest.raises(ContractViolation):
        classify_epimorphism(not_epi)
    with pytest.raises(ContractViolation):
        classify_epimorphism(identity(pg2))


# -- classification round trips -------------------------------------------------------------

@pytest.mark.parametrize("source", ["pg2", "w2"])
def test_classify_reproduces_every_canonical_map(source, request):
    S = request.getfixturevalue(source)
    m = {"pg2": 3, "w2": 4}[source]
    theorem = {3: "GT", 4: "JATGQ"}[m]
    T = C.ordinary_polygon(m)
    for d in itertools.islice(all_descriptors(S, T, theorem), 0, None, 7):
        phi = canonical_epimorphism(S, d, T)
        back = classify_epimorphism(phi)
        assert not isinstance(back, Unclassified)
        assert canonical_epimorphism(S, back, T) == phi


def test_classify_case_b_descriptor(pg2, triangle):
    # a non-singleton split of a pencil that no base line reproduces
    pen = pg2.point_lines[0]
    d = make_descriptor(pg2, "GT", "B", 0, [pen[0]], triangle)
    back = classify_epimorphism(canonical_plane_epimorphism(pg2, d, triangle))
    assert canonical_plane_epimorphism(pg2, back, triangle) == canonical_plane_epimorphism(pg2, d, triangle)


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_random_descriptors_are_sound(data):
    S = C.projective_plane(3)
    T = C.ordinary_polygon(3)
    case = data.draw(st.sampled_from("AB"))
    W = S if case == "A" else dual(S)
    base = data.draw(st.integers(0, W.num_lines - 1))
    row = W.line_points[base]
    k = data.draw(st.integers(1, len(row) - 1))
    first = data.draw(st.permutations(row))[:k]
    trav_index = data.draw(st.integers(0, 5))
    from polylab.classification import traversals

    trav = traversals(T, "line" if case == "A" else "point")[trav_index]
    d = make_descriptor(S, "GT", case, base, first, T, trav)
    phi = canonical_epimorphism(S, d, T)
    assert gate(phi) and line_saturation(phi) is None
    assert fiber_mismatches(phi, d) == []
    assert canonical_epimorphism(S, classify_epimorphism(phi), T) == phi


def test_generator_equals_search_on_pg2(pg2, triangle):
    gen = {g.key() for g in generate_canonical_epimorphisms(pg2, triangle)}
    found = {f.key() for f in enumerate_epimorphisms(pg2, triangle)}
    assert gen == found


def test_report_for_plane(pg2):
    rep = verify_classification_theorem(pg2, 3)
    assert rep.ok
    assert rep.check("count-match").passed
    assert "CHECK classified PASS" in rep.render()


def test_report_rejects_thin_source():
    rep = verify_classification_theorem(C.grid(3, 3), 4)
    assert not rep.ok and not rep.check("source").passed


def test_report_needs_known_gonality(pg2):
    with pytest.raises(DomainError):
        verify_classification_theorem(pg2, 5)


# -- doubling ---------------------------------------------------------------------------

def test_double_identity_is_automorphism(pg2):
    phi = double_epimorphism(identity(pg2))
    assert is_isomorphism(phi) and phi.source == phi.target == C.double(pg2)


def test_double_gt_map_onto_hexagon(pg2, triangle):
    d = make_descriptor(pg2, "GT", "A", 0, [pg2.line_points[0][0]], triangle)
    gamma = canonical_plane_epimorphism(pg2, d, triangle)
    phi = double_epimorphism(gamma)
    assert gate(phi)
    assert find_isomorphism(phi.target, C.ordinary_polygon(6)) is not None
    assert undouble_epimorphism(phi) == (gamma, False)


def test_double_digon_map():
    gamma = digon_epimorphism((0, 0, 1), (1, 0, 0))
    phi = double_epimorphism(gamma)
    assert gate(phi)
    assert undouble_epimorphism(phi) == (gamma, False)


def test_duality_flips_flag(pg2):
    delta = find_isomorphism(pg2, dual(pg2))
    phi = double_epimorphism(delta, duality=True)
    assert is_isomorphism(phi) and phi.target == C.double(pg2)
    back, swapped = undouble_epimorphism(phi)
    assert swapped and back == delta
    # composing a straight automorphism with the swap also flips the flag
    straight = double_epimorphism(identity(pg2))
    assert undouble_epimorphism(compose(phi, straight))[1] is True


def test_undouble_hexagon_isomorphism():
    hexagon = C.double(C.ordinary_polygon(3))
    for a in enumerate_epimorphisms(hexagon, hexagon):
        delta, _ = undouble_epimorphism(a)
        assert is_isomorphism(delta)


def test_double_rejects_unequal_orders():
    with pytest.raises(DomainError):
        double_epimorphism(identity(C.grid(3, 3)))


def test_undouble_dualizes_order_s1(pg2):
    S = C.thin_hexagon_from_plane(pg2)
    delta, swapped = undouble_epimorphism(identity(S))
    assert is_isomorphism(delta) and not swapped


# -- digons ------------------------------------------------------------------------

def test_digon_epimorphisms():
    assert is_isomorphism(digon_epimorphism((0, 1, 2), (0, 1)))
    assert gate(digon_epimorphism((0, 1, 1), (0, 1, 0)))
    with pytest.raises(DomainError):
        digon_epimorphism((0, 2), (0,))
    pairs = [digon_epimorphism(p, l) for p in surjections(3, 2) for l in surjections(3, 2)]
    assert len(pairs) == 36
    assert {p.key() for p in pairs} == {e.key() for e in enumerate_epimorphisms(C.digon(3, 3), C.digon(2, 2))}


def test_thin_theorem_hexagon_automorphisms():
    rep = thin_polygon_theorem_check(6, 1, 1)
    assert rep.ok and rep.check("search").details == "count=12"


def test_thin_theorem_quadrangle():
    rep = thin_polygon_theorem_check(4, 2, 1)
    assert rep.ok and rep.check("search").details == "count=72"


def test_thin_theorem_domain():
    with pytest.raises(DomainError):
        thin_polygon_theorem_check(3, 2, 1)


@pytest.mark.slow
def test_hexagon_report_with_larger_thin_target(h2):
    rep = verify_classification_theorem(h2, 6, include_large=True)
    assert rep.ok, rep.render()
    assert rep.check("empty-onto-thin_hexagon(3,1)").details == "count=0"
