import pytest
from hypothesis import given, settings, strategies as st

from schubert_blowup import coxeter as cx
from schubert_blowup.gorenstein import (
    all_gorenstein_witnesses, hilbert_numerator, is_gorenstein_homology,
    is_gorenstein_principal, is_gorenstein_subword, is_gorenstein_variety,
    longest_word, minimal_demazure_covers, new_facets, new_facets_of,
    schubert_complex, schubert_gorenstein_scan, subword_criterion_scan,
)
from schubert_blowup.simplicial import mask, members, popcount
from schubert_blowup.subword import SubwordComplex, dash_notation, parse_dash_notation

perm = cx.parse_permutation
Q10 = longest_word(5)


def test_longest_word_layout():
    assert Q10 == (1, 2, 1, 3, 2, 1, 4, 3, 2, 1)
    assert cx.word_product(Q10, 5) == cx.longest(5)


def test_minimal_covers_of_the_three_tetrahedra():
    Q = (2, 1, 3, 2, 4, 3)
    K = SubwordComplex(Q, perm("13425"))
    P1 = parse_dash_notation(Q, "2----3")
    covers = minimal_demazure_covers(K, P1)
    assert parse_dash_notation(Q, "2-32-3") in covers
    assert parse_dash_notation(Q, "21---3") in covers
    assert parse_dash_notation(Q, "213--3") not in covers


def test_minimal_covers_trivial_case():
    K = SubwordComplex((1,), cx.identity(2))
    assert minimal_demazure_covers(K, 0) == frozenset({0b1})


def test_minimal_covers_rejects_a_non_facet():
    K = SubwordComplex((2, 1, 3, 2, 4, 3), perm("13425"))
    with pytest.raises(ValueError):
        minimal_demazure_covers(K, 0b1)


def test_new_facet_edge_of_the_three_tetrahedra():
    Q = (2, 1, 3, 2, 4, 3)
    K = SubwordComplex(Q, perm("13425"))
    (face,) = new_facets(K)
    assert dash_notation(Q, K.full & ~face.mask) == "2-32-3"
    assert K.face_demazure(face) == cx.word_product((2, 3, 2), 5)


def test_new_facets_toy_tetrahedra():
    T = mask(range(4))
    three_edges = [mask([0, 1]), mask([0, 2]), mask([0, 3])]
    assert len(new_facets_of([T], three_edges)) == 4
    assert len(new_facets_of([T], [mask([0, 1])])) == 1
    assert new_facets_of([T], [mask([0, 1, 2]), mask([1, 2, 3])]) == set()


def test_new_facets_do_not_depend_on_facet_order():
    K = SubwordComplex(Q10, perm("31524"))
    facets = list(K.facet_masks())
    assert new_facets_of(facets, K.boundary_facet_masks()) == \
        new_facets_of(reversed(facets), reversed(list(K.boundary_facet_masks())))


def test_witness_for_31524():
    K = SubwordComplex(Q10, perm("31524"))
    verdict = is_gorenstein_subword(K)
    assert not verdict.gorenstein
    assert verdict.witness.dash(Q10) == "-21-2143--"


def test_134526_is_not_gorenstein():
    K = SubwordComplex((2, 1, 3, 2, 4, 3, 5, 4), perm("134526"))
    assert not is_gorenstein_subword(K).gorenstein


def test_reduced_word_for_pi_itself_is_gorenstein():
    for w in cx.all_permutations(4):
        for word in list(cx.reduced_words(w))[:2]:
            if word:
                assert is_gorenstein_subword(SubwordComplex(word, w, 4)).gorenstein


def _check_witness(K, wit):
    assert wit.cover & wit.facet_complement == wit.facet_complement
    assert popcount(wit.cover & ~wit.facet_complement) >= 2
    dem = cx.demazure_product([K.Q[i] for i in members(wit.cover)], K.n)
    assert dem == wit.demazure
    assert cx.length(dem) == cx.length(K.pi) + 1 and cx.bruhat_leq(K.pi, dem)
    for v in members(wit.cover & ~wit.facet_complement):
        smaller = wit.cover & ~(1 << v)
        assert K.demazure_of_positions(smaller) == K.pi


@pytest.mark.parametrize("w", cx.all_permutations(4), ids=cx.format_permutation)
def test_three_oracles_agree_on_s4(w):
    K = SubwordComplex((1, 2, 1, 3, 2, 1), w)
    verdict = is_gorenstein_subword(K)
    assert verdict.gorenstein == is_gorenstein_principal(K) == is_gorenstein_homology(K)
    assert is_gorenstein_homology(K, "GF2") == verdict.gorenstein
    for wit in all_gorenstein_witnesses(K):
        _check_witness(K, wit)


def test_gorenstein_complex_is_stricter_than_gorenstein_variety():
    """X^{2431} is smooth at the identity, but its initial complex is a path
    on four vertices and not Gorenstein.  The Hilbert-series test sees the
    variety; the three complex-level oracles see the degeneration."""
    K = schubert_complex(perm("2431"))
    assert not is_gorenstein_subword(K).gorenstein
    assert not is_gorenstein_principal(K) and not is_gorenstein_homology(K)
    assert is_gorenstein_variety(K)
    assert subword_criterion_scan(4) == {perm("2431"), perm("3241")}


def test_hilbert_numerators_for_smooth_and_singular_patches():
    # numerator over ∏(1 − t^deg v) taken over all ten vertices
    assert hilbert_numerator(schubert_complex(perm("2431"))) == [1, 0, -1, -1, 0, 1]
    assert hilbert_numerator(schubert_complex(perm("4321"))) == [1]
    N = hilbert_numerator(schubert_complex(perm("53241")))
    assert N == [1, 0, 0, 0, -1, -1, -1, 1, 1]
    assert N != N[::-1] and N != [-c for c in N[::-1]]


def test_scan_small_ranks():
    assert schubert_gorenstein_scan(3) == set()
    assert schubert_gorenstein_scan(4) == set()
    with pytest.raises(ValueError):
        schubert_gorenstein_scan(7)


@st.composite
def s5_complexes(draw):
    w = draw(st.permutations(range(1, 6)).map(tuple))
    return SubwordComplex(Q10, w)


@settings(max_examples=25, deadline=None)
@given(s5_complexes())
def test_witnesses_satisfy_their_invariants(K):
    verdict = is_gorenstein_subword(K)
    if verdict.witness is not None:
        _check_witness(K, verdict.witness)
        assert verdict.witness == all_gorenstein_witnesses(K)[0] or not verdict.gorenstein


def _series_by_counting(K, weights, top):
    """Coefficients of the Hilbert series up to ``top`` by enumerating
    monomials whose support is a face."""
    faces = K.complex.faces
    counts = [0] * (top + 1)

    def walk(v, degree, support):
        if v == len(weights):
            if support in faces:
                counts[degree] += 1
            return
        e = 0
        while degree + e * weights[v] <= top:
            walk(v + 1, degree + e * weights[v], support | (1 << v) if e else support)
            e += 1
    walk(0, 0, 0)
    return counts


def _series_from_numerator(N, weights, top):
    series = N[:top + 1] + [0] * max(0, top + 1 - len(N))
    for d in weights:           # divide by (1 − t^d)
        for k in range(d, top + 1):
            series[k] += series[k - d]
    return series


@pytest.mark.parametrize("w", ["2431", "53241", "35142", "13452"])
def test_hilbert_numerator_matches_monomial_count(w):
    from schubert_blowup.gorenstein import root_height_weights
    K = schubert_complex(perm(w))
    weights = root_height_weights(K)
    N = hilbert_numerator(K, weights)
    assert _series_from_numerator(N, weights, 7) == _series_by_counting(K, weights, 7)
