from hypothesis import given, strategies as st

import oracles
from schubert_blowup import coxeter as cx

perm = lambda s: cx.parse_permutation(s)


def permutations_of(max_n=5):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(range(1, n + 1)).map(tuple))


def test_compose_examples():
    assert cx.compose(cx.identity(5), perm("31524")) == perm("31524")
    assert cx.compose(cx.longest(5), perm("31524")) == perm("35142")
    s1 = cx.simple(1, 3)
    assert cx.compose(s1, s1) == cx.identity(3)


def test_compose_rejects_rank_mismatch():
    import pytest
    with pytest.raises(ValueError):
        cx.compose(cx.identity(3), cx.identity(4))


def test_length_examples():
    assert cx.length(perm("4231")) == 5
    assert cx.length(cx.identity(4)) == 0
    assert cx.length(cx.longest(5)) == 10


def test_covers_below_4231():
    assert cx.covers_below(perm("4231")) == {perm(s) for s in ("4213", "4132", "3241", "2431")}
    assert cx.covers_below(cx.identity(4)) == set()
    for i in range(1, 4):
        assert cx.covers_below(cx.simple(i, 4)) == {cx.identity(4)}


def test_bruhat_examples():
    assert cx.bruhat_leq(perm("4213"), perm("4231"))
    assert all(cx.bruhat_leq(cx.identity(4), w) for w in cx.all_permutations(4))


def test_bruhat_matches_subword_oracle_exhaustively():
    for n in range(1, 5):
        perms = cx.all_permutations(n)
        for u in perms:
            for w in perms:
                assert cx.bruhat_leq(u, w) == oracles.bruhat_by_subwords(u, w)


def test_bruhat_is_a_partial_order_on_s4():
    perms = cx.all_permutations(4)
    leq = {(u, w): cx.bruhat_leq(u, w) for u in perms for w in perms}
    for u in perms:
        assert leq[u, u]
        for w in perms:
            if u != w and leq[u, w]:
                assert not leq[w, u]
                for x in perms:
                    if leq[w, x]:
                        assert leq[u, x]


def test_covers_have_length_gap_one():
    for w in cx.all_permutations(4):
        for u in cx.covers_below(w):
            assert cx.bruhat_leq(u, w) and cx.length(u) == cx.length(w) - 1
        assert cx.covers_below(w) == {u for u in cx.all_permutations(4)
                                      if cx.length(u) == cx.length(w) - 1 and cx.bruhat_leq(u, w)}


def test_reduced_words_examples():
    assert cx.reduced_words(perm("1432")) == {(3, 2, 3), (2, 3, 2)}
    assert cx.reduced_words(cx.identity(3)) == {()}
    assert cx.reduced_words(perm("13425")) == {(2, 3)}
    assert len(cx.reduced_words(cx.longest(4))) == 16


def test_reduced_words_match_brute_force_on_s4():
    for w in cx.all_permutations(4):
        assert cx.reduced_words(w) == oracles.reduced_words_brute(w)


def test_demazure_examples():
    assert cx.demazure_product((), 4) == cx.identity(4)
    assert cx.demazure_product((2, 3, 2, 3), 4) == perm("1432")
    assert cx.demazure_product((1, 1), 3) == cx.simple(1, 3)


@given(permutations_of(), st.data())
def test_length_changes_by_one_under_simple_reflections(w, data):
    if len(w) < 2:
        return
    i = data.draw(st.integers(1, len(w) - 1))
    assert abs(cx.length(cx.times_simple(w, i)) - cx.length(w)) == 1
    assert cx.length(w) == oracles.inversions(w)


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.integers(1, n - 1), max_size=12))))
def test_demazure_matches_oracle_and_is_monotone(case):
    n, word = case
    dem = cx.demazure_product(word, n)
    assert dem == oracles.demazure_brute(word, n)
    for k in range(len(word)):
        assert cx.length(cx.demazure_product(word[:k], n)) <= cx.length(cx.demazure_product(word[:k + 1], n))


@given(permutations_of())
def test_demazure_of_reduced_word_is_the_product(w):
    for word in list(cx.reduced_words(w))[:5]:
        assert cx.demazure_product(word, len(w)) == cx.word_product(word, len(w)) == w


@given(permutations_of(9))
def test_permutation_text_round_trip(w):
    assert cx.parse_permutation(cx.format_permutation(w)) == w
