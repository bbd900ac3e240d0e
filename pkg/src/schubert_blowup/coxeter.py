"""
Type A Weyl group combinatorics.

Permutations are tuples in one-line notation with values ``1..n``, so
``w[i - 1]`` is w(i).  Words are tuples of simple reflection indices, letter
``i`` standing for s_i, the transposition of i and i+1.

Composition is ``compose(p, q)(i) == p(q(i))``.  Multiplying by s_i on the
right swaps the entries in positions i and i+1, so the permutation of a word
``(i1, ..., il)`` is obtained by applying those position swaps, left to right,
to the identity.

>>> word_product((3, 2, 3), 4)
(1, 4, 3, 2)
>>> demazure_product((2, 3, 2, 3), 4)
(1, 4, 3, 2)
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

__all__ = [
    "Permutation", "Word",
    "identity", "simple", "longest", "compose", "inverse", "length",
    "times_simple", "has_right_ascent", "word_product", "demazure_product",
    "bruhat_leq", "covers_below", "covers_above", "reduced_words",
    "all_permutations", "check_permutation", "inversion_roots",
    "format_permutation", "parse_permutation", "format_word", "parse_word",
]

Permutation = tuple[int, ...]
Word = tuple[int, ...]


def check_permutation(w) -> Permutation:
    w = tuple(int(x) for x in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def simple(i: int, n: int) -> Permutation:
    if not 1 <= i < n:
        raise ValueError(f"s_{i} is not a simple reflection of S_{n}")
    return times_simple(identity(n), i)


def longest(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return p∘q, i.e. i ↦ p(q(i))."""
    if len(p) != len(q):
        raise ValueError(f"rank mismatch: S_{len(p)} vs S_{len(q)}")
    return tuple(p[x - 1] for x in q)


def inverse(w: Permutation) -> Permutation:
    inv = [0] * len(w)
    for i, x in enumerate(w, start=1):
        inv[x - 1] = i
    return tuple(inv)


def length(w: Permutation) -> int:
    """Number of inversions."""
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def times_simple(w: Permutation, i: int) -> Permutation:
    """Return w·s_i (swap positions i and i+1)."""
    if not 1 <= i < len(w):
        raise ValueError(f"letter {i} out of range for S_{len(w)}")
    lst = list(w)
    lst[i - 1], lst[i] = lst[i], lst[i - 1]
    return tuple(lst)


def has_right_ascent(w: Permutation, i: int) -> bool:
    """True iff length(w·s_i) > length(w)."""
    return w[i - 1] < w[i]


def word_product(word, n: int) -> Permutation:
    w = identity(n)
    for i in word:
        w = times_simple(w, i)
    return w


def demazure_product(word, n: int, start: Permutation | None = None) -> Permutation:
    """Fold the word left to right, multiplying only when the length goes up."""
    w = identity(n) if start is None else start
    for i in word:
        if not 1 <= i < n:
            raise ValueError(f"letter {i} out of range for S_{n}")
        if w[i - 1] < w[i]:
            w = times_simple(w, i)
    return w


def _rank_table(w: Permutation) -> list[list[int]]:
    # r[i][j] = #{a <= i : w(a) >= j},  1 <= i, j <= n
    n = len(w)
    r = [[0] * (n + 2) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r[i][j] = r[i - 1][j] + (1 if w[i - 1] >= j else 0)
    return r


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """Strong Bruhat order via the rank-matrix (tableau) criterion."""
    if len(u) != len(w):
        raise ValueError(f"rank mismatch: S_{len(u)} vs S_{len(w)}")
    return _bruhat_leq(u, w)


@lru_cache(maxsize=1 << 16)
def _bruhat_leq(u: Permutation, w: Permutation) -> bool:
    if u == w:
        return True
    ru, rw = _rank_table(u), _rank_table(w)
    n = len(u)
    return all(ru[i][j] <= rw[i][j] for i in range(1, n) for j in range(2, n + 1))


def covers_below(w: Permutation) -> set[Permutation]:
    """All u with u ⋖ w: u = w·t for a transposition t, length dropping by one."""
    n, lw = len(w), length(w)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] > w[j]:
                lst = list(w)
                lst[i], lst[j] = lst[j], lst[i]
                u = tuple(lst)
                if length(u) == lw - 1:
                    out.add(u)
    return out


def covers_above(u: Permutation) -> set[Permutation]:
    n, lu = len(u), length(u)
    out = set()
    for i in range(n):
        for j in range(i + 1, n):
            if u[i] < u[j]:
                lst = list(u)
                lst[i], lst[j] = lst[j], lst[i]
                w = tuple(lst)
                if length(w) == lu + 1:
                    out.add(w)
    return out


@lru_cache(maxsize=4096)
def _reduced_words(w: Permutation) -> frozenset[Word]:
    n = len(w)
    if all(w[i] < w[i + 1] for i in range(n - 1)):
        return frozenset({()})
    words = set()
    for i in range(1, n):
        if w[i - 1] > w[i]:  # right descent: w = (w s_i) s_i
            for prefix in _reduced_words(times_simple(w, i)):
                words.add(prefix + (i,))
    return frozenset(words)


def reduced_words(w: Permutation) -> set[Word]:
    return set(_reduced_words(tuple(w)))


def inversion_roots(word, n: int) -> list[tuple[int, int]]:
    """For each position p of the word, the root s_{a_1}⋯s_{a_{p−1}}(α_{a_p})
    as a pair (i, j) meaning e_i − e_j.

    For a reduced word these are exactly the inversions of its product, each
    once, with i < j.
    """
    u = identity(n)
    out = []
    for a in word:
        out.append((u[a - 1], u[a]))
        u = times_simple(u, a)
    return out


def all_permutations(n: int) -> list[Permutation]:
    """S_n sorted by (length, one-line notation)."""
    return sorted(permutations(range(1, n + 1)), key=lambda p: (length(p), p))


def format_permutation(w: Permutation) -> str:
    if len(w) <= 9:
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def parse_permutation(text: str) -> Permutation:
    text = text.strip()
    if "," in text:
        return check_permutation(int(t) for t in text.split(",") if t.strip())
    return check_permutation(int(ch) for ch in text)


def format_word(word: Word) -> str:
    return ",".join(str(i) for i in word)


def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(t) for t in text.split(","))
