"""
Subword complexes Δ(Q, π).

Positions of Q are 1-based in the public API (``Face.kept``) and 0-based in
bitmasks.  A face is a set of kept positions F; it belongs to Δ(Q, π) when
the Demazure product of the complementary subword Q∖F is at least π.

>>> K = SubwordComplex((3, 2, 3, 2, 3), (1, 4, 3, 2))
>>> len(K.facets())
5
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from . import coxeter as cx
from .coxeter import Permutation, Word
from .simplicial import (
    BALL, NEITHER, SPHERE, SimplicialComplexData, classify_ball_sphere,
    mask, members, popcount, reduced_homology,
)

__all__ = [
    "SubwordComplex", "Face", "EmptyComplexError",
    "is_ball_or_sphere", "reduced_homology", "SimplicialComplexData",
    "BALL", "SPHERE", "NEITHER", "dash_notation", "parse_dash_notation",
]


class EmptyComplexError(ValueError):
    """Raised when Dem(Q) is not above π, so Δ(Q, π) is void."""


@dataclass(frozen=True, order=True)
class Face:
    """Kept positions (1-based) of a face of a subword complex."""
    kept: frozenset[int]

    @classmethod
    def from_mask(cls, m: int) -> Face:
        return cls(frozenset(i + 1 for i in members(m)))

    @property
    def mask(self) -> int:
        return mask(i - 1 for i in self.kept)


class SubwordComplex:
    """Δ(Q, π) for a word Q in S_n."""

    def __init__(self, Q: Word, pi: Permutation, n: int | None = None):
        pi = cx.check_permutation(pi)
        self.Q: Word = tuple(int(a) for a in Q)
        self.pi: Permutation = pi
        self.n: int = len(pi) if n is None else n
        if self.n != len(pi):
            raise ValueError(f"π has rank {len(pi)}, expected {self.n}")
        for a in self.Q:
            if not 1 <= a < self.n:
                raise ValueError(f"letter {a} out of range for S_{self.n}")
        self.size = len(self.Q)
        self.full = (1 << self.size) - 1
        self._dem_cache: dict[int, Permutation] = {}

    def __repr__(self) -> str:
        return f"SubwordComplex(Q={self.Q}, pi={cx.format_permutation(self.pi)})"

    # -- Demazure products of subwords -----------------------------------

    def demazure_of_positions(self, positions: int) -> Permutation:
        """Demazure product of the subword of Q at the positions in the
        bitmask, letters taken in Q-order."""
        cached = self._dem_cache.get(positions)
        if cached is None:
            cached = cx.demazure_product(
                (self.Q[i] for i in members(positions)), self.n)
            self._dem_cache[positions] = cached
        return cached

    def face_demazure_mask(self, kept: int) -> Permutation:
        return self.demazure_of_positions(self.full & ~kept)

    def face_demazure(self, F: Face) -> Permutation:
        self._check_face(F)
        return self.face_demazure_mask(F.mask)

    def is_face_mask(self, kept: int) -> bool:
        return cx.bruhat_leq(self.pi, self.face_demazure_mask(kept))

    def is_face(self, F: Face) -> bool:
        self._check_face(F)
        return self.is_face_mask(F.mask)

    def _check_face(self, F: Face) -> None:
        if any(not 1 <= i <= self.size for i in F.kept):
            raise ValueError(f"face {sorted(F.kept)} not inside positions 1..{self.size}")

    def is_nonempty(self) -> bool:
        return cx.bruhat_leq(self.pi, self.demazure_of_positions(self.full))

    @property
    def expected_dimension(self) -> int:
        return self.size - cx.length(self.pi) - 1

    # -- facets ----------------------------------------------------------

    @cached_property
    def _reduced_subwords(self) -> frozenset[int]:
        """Bitmasks of positions P such that Q|_P is a reduced word for π."""
        target = self.pi
        need = cx.length(target)
        found: set[int] = set()
        # Extend a current prefix u (a right-weak prefix of π) left to right.
        # u·s is still a prefix of π iff ℓ(u^{-1}π) drops, i.e. the letter is
        # a left descent of u^{-1}π.
        inv = cx.inverse

        def extend(start: int, chosen: int, remaining: Permutation, used: int):
            if used == need:
                found.add(chosen)
                return
            if self.size - start < need - used:
                return
            for pos in range(start, self.size):
                a = self.Q[pos]
                # left descent of `remaining` at a: remaining^{-1}(a) > remaining^{-1}(a+1)
                r_inv = inv(remaining)
                if r_inv[a - 1] > r_inv[a]:
                    nxt = cx.compose(cx.simple(a, self.n), remaining)
                    extend(pos + 1, chosen | (1 << pos), nxt, used + 1)

        extend(0, 0, target, 0)
        return frozenset(found)

    def facet_masks(self) -> frozenset[int]:
        if not self.is_nonempty():
            raise EmptyComplexError(f"{self!r} is empty: Dem(Q) is not ≥ π")
        return frozenset(self.full & ~p for p in self._reduced_subwords)

    def facets(self) -> set[Face]:
        return {Face.from_mask(m) for m in self.facet_masks()}

    def facet_complements(self) -> frozenset[int]:
        """Bitmasks P of reduced subwords for π (the complements of facets)."""
        self.facet_masks()
        return self._reduced_subwords

    @cached_property
    def complex(self) -> SimplicialComplexData:
        return SimplicialComplexData(self.size, self.facet_masks())

    # -- boundary --------------------------------------------------------

    def boundary_facet_masks(self) -> frozenset[int]:
        """Codimension-one faces whose Demazure product differs from π."""
        out = set()
        for f in self.facet_masks():
            for v in members(f):
                ridge = f & ~(1 << v)
                if self.face_demazure_mask(ridge) != self.pi:
                    out.add(ridge)
        return frozenset(out)

    def boundary_facets(self) -> set[Face]:
        return {Face.from_mask(m) for m in self.boundary_facet_masks()}

    def boundary_complex(self) -> SimplicialComplexData:
        return SimplicialComplexData(self.size, self.boundary_facet_masks())

    def boundary_from_covers(self) -> frozenset[int]:
        """Facets of the union of Δ(Q, π') over covers π' ⋗ π that are
        nonempty; independent of the Dem ≠ π test."""
        masks: set[int] = set()
        for up in cx.covers_above(self.pi):
            K = SubwordComplex(self.Q, up, self.n)
            if K.is_nonempty():
                masks |= K.facet_masks()
        return SimplicialComplexData(self.size, frozenset(masks)).facets

    # -- Stanley–Reisner ideal -------------------------------------------

    def minimal_nonfaces(self) -> frozenset[int]:
        """Minimal non-faces of Δ as position bitmasks (0-based)."""
        facets = self.facet_masks()
        # A minimal non-face N has N∖{v} a face for every v ∈ N; its size is
        # bounded by 1 + max facet size, and every proper subset lies in a facet.
        out: set[int] = set()

        def is_face(m: int) -> bool:
            return any(m & f == m for f in facets)

        frontier = [0]
        seen = {0}
        while frontier:
            nxt = []
            for face in frontier:
                for v in range(self.size):
                    bit = 1 << v
                    if face & bit or (face >> v):
                        continue  # extend with vertices above the maximum only
                    cand = face | bit
                    if cand in seen:
                        continue
                    seen.add(cand)
                    if is_face(cand):
                        nxt.append(cand)
                    elif all(is_face(cand & ~(1 << u)) for u in members(cand)):
                        out.add(cand)
            frontier = nxt
        return frozenset(out)

    def stanley_reisner_ideal(self):
        from .monomial import SquarefreeMonomialIdeal
        return SquarefreeMonomialIdeal(self.size, self.minimal_nonfaces())

    # -- export ----------------------------------------------------------

    def to_json(self) -> dict:
        def as_lists(masks):
            return sorted([i + 1 for i in members(m)] for m in masks)
        return {
            "Q": list(self.Q),
            "pi": cx.format_permutation(self.pi),
            "facets": as_lists(self.facet_masks()),
            "boundary_facets": as_lists(self.boundary_facet_masks()),
        }

    def to_off(self, drop_cone_points: bool = True) -> str:
        return complex_to_off(self.complex, drop_cone_points)


def is_ball_or_sphere(C: SimplicialComplexData | SubwordComplex, field: str = "Q") -> str:
    if isinstance(C, SubwordComplex):
        C = C.complex
    return classify_ball_sphere(C, field)


def dash_notation(Q: Word, positions: int) -> str:
    """Render a subword of Q: letters at kept positions, '-' elsewhere.

    >>> dash_notation((2, 1, 3, 2, 4, 3), 0b101101)
    '2-32-3'
    """
    return "".join(str(a) if positions >> i & 1 else "-" for i, a in enumerate(Q))


def parse_dash_notation(Q: Word, text: str) -> int:
    if len(text) != len(Q):
        raise ValueError(f"{text!r} has length {len(text)}, word has {len(Q)}")
    m = 0
    for i, (ch, a) in enumerate(zip(text, Q)):
        if ch == "-":
            continue
        if int(ch) != a:
            raise ValueError(f"position {i + 1}: {ch!r} does not match letter {a}")
        m |= 1 << i
    return m


def complex_to_off(C: SimplicialComplexData, drop_cone_points: bool = True) -> str:
    """OFF text for complexes of geometric dimension at most 3.

    Vertices sit on the moment curve t ↦ (t, t², t³), which places any four
    of them in general position, so simplices of dimension ≤ 3 embed.
    """
    cone = C.cone_points() if drop_cone_points else 0
    facets = sorted({f & ~cone for f in C.facets})
    if max((popcount(f) for f in facets), default=0) > 4:
        raise ValueError("OFF export is limited to geometric dimension ≤ 3")
    used = sorted({v for f in facets for v in members(f)})
    index = {v: k for k, v in enumerate(used)}
    polys: list[tuple[int, ...]] = []
    for f in facets:
        vs = members(f)
        if len(vs) == 4:  # tetrahedron: emit its four triangles
            for drop in vs:
                polys.append(tuple(index[v] for v in vs if v != drop))
        elif vs:
            polys.append(tuple(index[v] for v in vs))
    lines = ["OFF", f"{len(used)} {len(polys)} 0"]
    for v in used:
        t = v + 1
        lines.append(f"{t} {t * t} {t ** 3}")
    for p in polys:
        lines.append(" ".join([str(len(p)), *map(str, p)]))
    return "\n".join(lines) + "\n"
