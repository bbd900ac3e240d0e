"""
Gorenstein tests for subword complexes and the Schubert-variety scan.

Three independent routes are provided:

* ``is_gorenstein_subword``: search for a reduced subword P_w of Q and a
  superset P, at least two letters larger, inclusion-minimal with
  Dem(P) covering π;
* ``is_gorenstein_principal``: the boundary ideal becomes principal modulo
  the Stanley–Reisner ideal;
* ``is_gorenstein_homology``: the core of Δ is a homology sphere (link
  homology over the rationals).

These three decide whether the Stanley–Reisner ring of Δ is Gorenstein.
That is a property of the Gröbner degeneration and can fail for a
Gorenstein (even smooth) Kazhdan–Lusztig variety: X^{2431} is smooth at
the identity yet its complex is not Gorenstein.  The variety itself is a
Cohen–Macaulay domain whose Hilbert series equals that of the degenerate
ring under the torus grading, so ``is_gorenstein_variety`` applies
Stanley's palindromic-numerator criterion to that series; this is what the
Schubert scan uses.

Codimension of P₁ ⊆ P₂ is |P₂| − |P₁| throughout.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import coxeter as cx
from .coxeter import Permutation, Word
from .monomial import boundary_ideal, is_principal_modulo
from .simplicial import is_gorenstein_by_links, members, popcount
from .subword import Face, SubwordComplex, dash_notation

__all__ = [
    "GorensteinWitness", "GorensteinVerdict", "minimal_demazure_covers",
    "new_facets", "new_facets_by_facet", "new_facets_of", "is_gorenstein_subword",
    "is_gorenstein_principal", "is_gorenstein_homology",
    "longest_word", "schubert_gorenstein_scan", "schubert_complex",
    "all_gorenstein_witnesses", "root_height_weights", "hilbert_numerator",
    "is_gorenstein_variety", "subword_criterion_scan",
]


@dataclass(frozen=True)
class GorensteinWitness:
    facet_complement: int   # bitmask of P_w, a reduced subword for π
    cover: int              # bitmask of P ⊇ P_w with Dem(P) ⋗ π
    demazure: Permutation   # Dem(P)

    def dash(self, Q: Word) -> str:
        return dash_notation(Q, self.cover)

    def to_json(self, Q: Word) -> dict:
        return {
            "facet_complement": dash_notation(Q, self.facet_complement),
            "cover": dash_notation(Q, self.cover),
            "cover_positions": [i + 1 for i in members(self.cover)],
            "demazure": cx.format_permutation(self.demazure),
        }


@dataclass(frozen=True)
class GorensteinVerdict:
    gorenstein: bool
    witness: GorensteinWitness | None = None

    def to_json(self, Q: Word) -> dict:
        return {"gorenstein": self.gorenstein,
                "witness": None if self.witness is None else self.witness.to_json(Q)}


def _covers_pi(K: SubwordComplex, dem: Permutation) -> bool:
    return (cx.length(dem) == cx.length(K.pi) + 1 and cx.bruhat_leq(K.pi, dem))


def minimal_demazure_covers(K: SubwordComplex, P1: int) -> frozenset[int]:
    """All P ⊇ P1, inclusion-minimal with Dem(P) ⋗ π (bitmasks).

    Breadth-first by |P ∖ P1|.  Only sets with Dem = π are extended: by
    monotonicity of Dem every minimal cover is reachable through them.
    """
    if P1 not in K.facet_complements():
        raise ValueError(f"{dash_notation(K.Q, P1)} is not a reduced subword for π")
    target_len = cx.length(K.pi) + 1
    found: list[int] = []
    level = {P1}
    while level:
        nxt: set[int] = set()
        for P in level:
            for pos in members(((1 << K.size) - 1) & ~P):
                cand = P | (1 << pos)
                if cand in nxt:
                    continue
                dem = K.demazure_of_positions(cand)
                if dem == K.pi:
                    nxt.add(cand)
                elif cx.length(dem) == target_len and cx.bruhat_leq(K.pi, dem):
                    if not any(f & cand == f for f in found):
                        found.append(cand)
        level = nxt
    return frozenset(found)


def is_gorenstein_subword(K: SubwordComplex) -> GorensteinVerdict:
    """Gorenstein unless some P_w has a minimal cover superset of
    codimension at least two.  The witness is the first such pair in the
    order (P_w as a sorted position list, then P likewise)."""
    def key(m: int):
        return [i for i in members(m)]

    witnesses = []
    for Pw in sorted(K.facet_complements(), key=key):
        for P in sorted(minimal_demazure_covers(K, Pw), key=key):
            if popcount(P & ~Pw) >= 2:
                witnesses.append(GorensteinWitness(Pw, P, K.demazure_of_positions(P)))
        if witnesses:
            return GorensteinVerdict(False, witnesses[0])
    return GorensteinVerdict(True)


def all_gorenstein_witnesses(K: SubwordComplex) -> list[GorensteinWitness]:
    out = []
    for Pw in sorted(K.facet_complements()):
        for P in sorted(minimal_demazure_covers(K, Pw)):
            if popcount(P & ~Pw) >= 2:
                out.append(GorensteinWitness(Pw, P, K.demazure_of_positions(P)))
    return out


def is_gorenstein_principal(K: SubwordComplex) -> bool:
    J = boundary_ideal(K.complex, K.boundary_facet_masks())
    return is_principal_modulo(J, K.stanley_reisner_ideal()) is not None


def is_gorenstein_homology(K: SubwordComplex, field: str = "Q") -> bool:
    return is_gorenstein_by_links(K.complex, field)


# -- new facets of the blown-up complex ---------------------------------------

def new_facets_of(facets, boundary_facets) -> set[tuple[int, int]]:
    """Pairs (facet σ, face φ), as bitmasks, with φ a new boundary facet
    created inside σ by blowing up along the boundary generated by
    ``boundary_facets``.

    σ ∩ ∂Δ is reduced to τ by discarding every face that lies in a
    codimension-one boundary face of σ.  The new facets are the nonempty
    maximal faces of τ, together with each face of codimension k > 2 in σ
    all of whose k codimension-(k−1) super-faces in σ belong to τ.
    """
    boundary = list(boundary_facets)
    out: set[tuple[int, int]] = set()
    for sigma in sorted(facets):
        size = popcount(sigma)
        whole = [mu for mu in boundary if mu & sigma == mu and popcount(mu) == size - 1]
        tau: set[int] = set()
        for mu in boundary:
            meet = mu & sigma
            sub = meet
            while True:          # every nonempty subset of σ ∩ μ
                if sub and not any(sub & w == sub for w in whole):
                    tau.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & meet
        for face in tau:
            if not any(other != face and other & face == face for other in tau):
                out.add((sigma, face))
        for face in tau:
            k = size - popcount(face)
            if k <= 2:
                continue
            supers = [face | (1 << v) for v in members(sigma & ~face)]
            if all(s in tau for s in supers):
                out.add((sigma, face))
    return out


def new_facets_by_facet(K: SubwordComplex) -> set[tuple[int, int]]:
    return new_facets_of(K.facet_masks(), K.boundary_facet_masks())


def new_facets(K: SubwordComplex) -> set[Face]:
    return {Face.from_mask(face) for _, face in new_facets_by_facet(K)}


# -- Hilbert series under the torus grading -----------------------------------

def root_height_weights(K: SubwordComplex) -> list[int]:
    """Degree of each vertex: height j − i of the inversion root e_i − e_j
    attached to its position.  Q must be a reduced word."""
    roots = cx.inversion_roots(K.Q, K.n)
    if any(i > j for i, j in roots):
        raise ValueError("root heights need a reduced word")
    return [j - i for i, j in roots]


def _polymul(p: list[int], q: list[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def hilbert_numerator(K: SubwordComplex, weights: list[int] | None = None) -> list[int]:
    """Coefficients of N(t) in H(t) = N(t) / ∏_v (1 − t^{deg v}) for the
    Stanley–Reisner ring of Δ, stripped of leading and trailing zeros."""
    if weights is None:
        weights = root_height_weights(K)
    if len(weights) != K.size or min(weights, default=1) < 1:
        raise ValueError("need one positive weight per vertex")
    N: list[int] = []
    for face in K.complex.faces:
        term = [1]
        for v, d in enumerate(weights):
            if face >> v & 1:
                term = _polymul(term, [0] * d + [1])
            else:
                term = _polymul(term, [1] + [0] * (d - 1) + [-1])
        if len(term) > len(N):
            N.extend([0] * (len(term) - len(N)))
        for i, c in enumerate(term):
            N[i] += c
    while N and N[-1] == 0:
        N.pop()
    start = 0
    while start < len(N) and N[start] == 0:
        start += 1
    return N[start:]


def is_gorenstein_variety(K: SubwordComplex, weights: list[int] | None = None) -> bool:
    """Stanley's criterion for a graded Cohen–Macaulay domain with this
    Hilbert series: Gorenstein iff the numerator is palindromic up to sign."""
    N = hilbert_numerator(K, weights)
    return N == N[::-1] or N == [-c for c in N[::-1]]


# -- Schubert scan ------------------------------------------------------------

def longest_word(n: int) -> Word:
    """The reduced word (1, 2,1, 3,2,1, ..., n−1,...,1) for w₀ in S_n."""
    return tuple(a for k in range(1, n) for a in range(k, 0, -1))


def schubert_complex(w: Permutation) -> SubwordComplex:
    """Δ(Q₀, w₀∘w), the subword complex of the Kazhdan–Lusztig variety of
    X^w at the patch of the most singular fixed point."""
    n = len(w)
    return SubwordComplex(longest_word(n), cx.compose(cx.longest(n), w), n)


def _variety_not_gorenstein(w: Permutation) -> bool:
    return not is_gorenstein_variety(schubert_complex(w))


def _complex_not_gorenstein(w: Permutation) -> bool:
    return not is_gorenstein_subword(schubert_complex(w)).gorenstein


def _scan(n: int, test, workers: int) -> set[Permutation]:
    if not 1 <= n <= 6:
        raise ValueError("the scan is meant for 1 ≤ n ≤ 6")
    perms = cx.all_permutations(n)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flags = list(pool.map(test, perms, chunksize=8))
    else:
        flags = [test(w) for w in perms]
    return {w for w, bad in zip(perms, flags) if bad}


def schubert_gorenstein_scan(n: int, workers: int = 1) -> set[Permutation]:
    """All w ∈ S_n whose Schubert variety X^w is not Gorenstein, decided at
    the patch of the most singular fixed point by ``is_gorenstein_variety``."""
    return _scan(n, _variety_not_gorenstein, workers)


def subword_criterion_scan(n: int, workers: int = 1) -> set[Permutation]:
    """All w ∈ S_n whose degenerate complex Δ(Q₀, w₀∘w) fails the subword
    Gorenstein criterion.  Strictly larger than the true list from n = 4."""
    return _scan(n, _complex_not_gorenstein, workers)
