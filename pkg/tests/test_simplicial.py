from itertools import combinations

from hypothesis import given, strategies as st

from schubert_blowup.simplicial import (
    BALL, NEITHER, SPHERE, SimplicialComplexData, classify_ball_sphere,
    is_gorenstein_by_links, mask, members, popcount, reduced_homology,
)


def cx_from(n, facets):
    return SimplicialComplexData.from_vertex_lists(n, facets)


def boundary_of_simplex(k):
    """Boundary of the k-simplex on k+1 vertices: a (k−1)-sphere."""
    return cx_from(k + 1, [c for c in combinations(range(k + 1), k)])


def test_simplex_is_acyclic():
    assert not any(reduced_homology(cx_from(4, [(0, 1, 2, 3)]), from_degree=-1))


def test_triangle_boundary_is_a_circle():
    assert reduced_homology(boundary_of_simplex(2)) == (0, 1)


def test_void_and_empty_face_complexes():
    assert reduced_homology(SimplicialComplexData(3, frozenset())) == ()
    assert reduced_homology(SimplicialComplexData(3, frozenset({0})), from_degree=-1) == (1,)


def test_classification_examples():
    assert classify_ball_sphere(cx_from(3, [(0, 1, 2)])) == BALL
    assert classify_ball_sphere(boundary_of_simplex(3)) == SPHERE
    bowtie = cx_from(5, [(0, 1, 2), (2, 3, 4)])
    assert classify_ball_sphere(bowtie) == NEITHER
    # a triangulated annulus: pseudomanifold with boundary, but not acyclic
    annulus = cx_from(6, [(0, 1, 3), (1, 3, 4), (1, 2, 4), (2, 4, 5), (2, 0, 5), (0, 5, 3)])
    assert classify_ball_sphere(annulus) == NEITHER


def test_gf2_sees_the_projective_plane_but_rationals_do_not():
    rp2 = cx_from(6, [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
                      (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)])
    assert reduced_homology(rp2, "Q") == (0, 0, 0)
    assert reduced_homology(rp2, "GF2") == (0, 1, 1)
    assert classify_ball_sphere(rp2, "Q") == NEITHER


def test_links_and_cone_points():
    C = cx_from(4, [(0, 1, 3), (1, 2, 3)])
    assert C.cone_points() == mask([1, 3])
    assert C.link(mask([1])).facets == frozenset({mask([0, 3]), mask([2, 3])})
    assert is_gorenstein_by_links(C)      # core is two points: a 0-sphere
    path = cx_from(4, [(0, 1), (1, 2), (2, 3)])
    assert not is_gorenstein_by_links(path)


@st.composite
def random_complexes(draw):
    n = draw(st.integers(1, 6))
    facets = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=6))
    return SimplicialComplexData(n, frozenset(facets))


@given(random_complexes())
def test_euler_characteristic_matches_betti_numbers(C):
    chi = sum((-1) ** (popcount(f) - 1) for f in C.faces)   # ∅ counts as −1
    betti = reduced_homology(C, from_degree=-1)
    assert chi == sum((-1) ** (k - 1) * b for k, b in enumerate(betti))


@given(random_complexes())
def test_faces_are_closed_under_subsets(C):
    for f in C.faces:
        for v in members(f):
            assert f & ~(1 << v) in C.faces
    assert all(popcount(f) <= C.dimension + 1 for f in C.faces)
