import pytest
from hypothesis import given, settings, strategies as st

import oracles
from schubert_blowup import coxeter as cx
from schubert_blowup.gorenstein import longest_word
from schubert_blowup.simplicial import BALL, SPHERE, mask, members
from schubert_blowup.subword import (
    EmptyComplexError, Face, SubwordComplex, dash_notation, is_ball_or_sphere,
    parse_dash_notation,
)

perm = cx.parse_permutation


def test_face_demazure_examples():
    K = SubwordComplex((1, 2, 1), cx.identity(3))
    assert K.face_demazure(Face(frozenset({1, 2, 3}))) == cx.identity(3)
    K = SubwordComplex((2, 1, 3, 2, 4, 3), perm("13425"))
    kept = Face(frozenset({2, 5}))          # complement 2-32-3 at positions 1,3,4,6
    assert K.face_demazure(kept) == perm("14325")
    assert cx.reduced_words(perm("14325")) == {(2, 3, 2), (3, 2, 3)}


def test_is_face_examples():
    K = SubwordComplex((3, 2, 3, 2, 3), perm("1432"))
    assert K.is_face(Face(frozenset()))
    assert K.is_face(Face(frozenset({1, 2})))
    assert not K.is_face(Face(frozenset(range(1, 6))))


def test_facets_of_the_pentagon():
    K = SubwordComplex((3, 2, 3, 2, 3), perm("1432"))
    comps = {frozenset(i + 1 for i in members(m)) for m in K.facet_complements()}
    assert comps == {frozenset(s) for s in ({1, 2, 3}, {1, 2, 5}, {1, 4, 5}, {3, 4, 5}, {2, 3, 4})}
    assert is_ball_or_sphere(K) == SPHERE


def test_three_tetrahedra():
    K = SubwordComplex((2, 1, 3, 2, 4, 3), perm("13425"))
    assert len(K.facets()) == 3
    assert all(len(F.kept) == 4 for F in K.facets())


def test_identity_complex_is_one_simplex():
    K = SubwordComplex((1, 2, 1), cx.identity(3))
    assert K.facet_masks() == frozenset({0b111})
    assert K.stanley_reisner_ideal().is_zero()
    assert K.boundary_facet_masks() == frozenset(mask(set(range(3)) - {v}) for v in range(3))


def test_empty_complex_is_signalled():
    K = SubwordComplex((1,), perm("321"), 3)
    assert not K.is_nonempty()
    with pytest.raises(EmptyComplexError):
        K.facet_masks()


def test_dash_notation_round_trip():
    Q = (2, 1, 3, 2, 4, 3)
    assert dash_notation(Q, 0b101101) == "2-32-3"
    assert parse_dash_notation(Q, "2-32-3") == 0b101101


def test_53241_boundary_is_the_two_end_edges():
    K = SubwordComplex(longest_word(5), perm("13425"))
    cone = K.complex.cone_points()
    core = sorted(members(f & ~cone) for f in K.facet_masks())
    assert core == [(1, 3), (3, 4), (4, 7)]          # a path on four vertices
    ends = sorted(members(m & ~cone) for m in K.boundary_facet_masks() if m & cone == cone)
    assert ends == [(1,), (7,)]


def test_sr_ideal_of_53241_in_the_variables_of_its_minors():
    K = SubwordComplex(longest_word(5), perm("13425"))
    gens = sorted(members(g) for g in K.stanley_reisner_ideal().generators)
    assert gens == [(1, 4), (1, 7), (3, 7)]


def test_json_export_is_one_based():
    doc = SubwordComplex((3, 2, 3, 2, 3), perm("1432")).to_json()
    assert doc["pi"] == "1432" and [1, 2] in doc["facets"] and doc["boundary_facets"] == []


ALL_S4 = cx.all_permutations(4)
Q4 = (1, 2, 1, 3, 2, 1)


@pytest.mark.parametrize("w", ALL_S4, ids=cx.format_permutation)
def test_s4_complexes_against_brute_force(w):
    K = SubwordComplex(Q4, w)
    assert K.facet_complements() == frozenset(mask(P) for P in oracles.facet_complements_brute(Q4, w))
    assert K.complex.faces == frozenset(mask(F) for F in oracles.faces_brute(Q4, w))
    assert K.complex.is_pure() and K.complex.dimension == K.expected_dimension
    assert is_ball_or_sphere(K) in (BALL, SPHERE)
    assert K.boundary_facet_masks() == K.boundary_from_covers()


@st.composite
def word_and_perm(draw):
    n = draw(st.integers(2, 4))
    Q = tuple(draw(st.lists(st.integers(1, n - 1), min_size=1, max_size=7)))
    dem = cx.demazure_product(Q, n)
    below = [u for u in cx.all_permutations(n) if cx.bruhat_leq(u, dem)]
    return Q, draw(st.sampled_from(below)), n


@settings(max_examples=60, deadline=None)
@given(word_and_perm())
def test_random_complexes_are_balls_or_spheres_with_consistent_boundary(case):
    Q, pi, n = case
    K = SubwordComplex(Q, pi, n)
    assert K.complex.faces == frozenset(mask(F) for F in oracles.faces_brute(Q, pi))
    assert all(len(members(f)) == len(Q) - cx.length(pi) for f in K.facet_masks())
    assert is_ball_or_sphere(K) in (BALL, SPHERE)
    assert K.boundary_facet_masks() == K.boundary_from_covers()
    sr = K.stanley_reisner_ideal()
    for f in range(1 << len(Q)):
        assert sr.contains(f) == (f not in K.complex.faces)


@settings(max_examples=60, deadline=None)
@given(word_and_perm(), st.data())
def test_face_demazure_is_antitone(case, data):
    Q, pi, n = case
    K = SubwordComplex(Q, pi, n)
    small = data.draw(st.integers(0, (1 << len(Q)) - 1))
    big = small | data.draw(st.integers(0, (1 << len(Q)) - 1))
    assert cx.bruhat_leq(K.face_demazure_mask(big), K.face_demazure_mask(small))
    rest = [Q[i] for i in range(len(Q)) if not small >> i & 1]
    assert K.face_demazure_mask(small) == oracles.demazure_brute(rest, n)
