"""
Finite simplicial complexes given by facets, with faces stored as bitmasks
over a vertex set ``0..n_vertices-1``.

Reduced homology is computed from boundary-matrix ranks, over the rationals
(exact) or over GF(2).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

__all__ = [
    "SimplicialComplexData", "mask", "members", "popcount",
    "reduced_homology", "classify_ball_sphere", "is_gorenstein_by_links",
    "BALL", "SPHERE", "NEITHER",
]

BALL, SPHERE, NEITHER = "ball", "sphere", "neither"


def mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(m: int) -> tuple[int, ...]:
    out = []
    i = 0
    while m:
        if m & 1:
            out.append(i)
        m >>= 1
        i += 1
    return tuple(out)


def popcount(m: int) -> int:
    return bin(m).count("1")


def _maximal(masks) -> frozenset[int]:
    ms = sorted(set(masks), key=popcount, reverse=True)
    keep: list[int] = []
    for m in ms:
        if not any(m & k == m for k in keep):
            keep.append(m)
    return frozenset(keep)


@dataclass(frozen=True)
class SimplicialComplexData:
    """A complex on ``n_vertices`` vertices, given by its facets (bitmasks).

    The void complex has no facets; ``{∅}`` has the single facet 0.
    """
    n_vertices: int
    facets: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "facets", _maximal(self.facets))

    @classmethod
    def from_vertex_lists(cls, n_vertices: int, facets) -> SimplicialComplexData:
        return cls(n_vertices, frozenset(mask(f) for f in facets))

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            sub = f
            while True:  # all submasks of f
                out.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & f
        return frozenset(out)

    @property
    def dimension(self) -> int:
        return max((popcount(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1

    def contains(self, face: int) -> bool:
        return any(face & f == face for f in self.facets)

    def ridge_counts(self) -> dict[int, int]:
        """Codimension-one faces of facets and how many facets contain each."""
        counts: dict[int, int] = {}
        for f in self.facets:
            for v in members(f):
                r = f & ~(1 << v)
                counts[r] = counts.get(r, 0) + 1
        return counts

    def boundary(self) -> SimplicialComplexData:
        """Complex generated by ridges lying in exactly one facet."""
        return SimplicialComplexData(
            self.n_vertices,
            frozenset(r for r, c in self.ridge_counts().items() if c == 1))

    def link(self, face: int) -> SimplicialComplexData:
        return SimplicialComplexData(
            self.n_vertices,
            frozenset(f & ~face for f in self.facets if f & face == face))

    def cone_points(self) -> int:
        """Vertices lying in every facet, as a mask."""
        if not self.facets:
            return 0
        common = ~0
        for f in self.facets:
            common &= f
        return common

    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    def to_json(self) -> dict:
        return {"n_vertices": self.n_vertices,
                "facets": sorted(list(members(f)) for f in self.facets)}


def _rank_rational(rows: list[dict[int, int]]) -> int:
    # sparse Gaussian elimination, exact
    pivots: dict[int, dict[int, Fraction]] = {}
    rank = 0
    for row in rows:
        r = {c: Fraction(v) for c, v in row.items() if v}
        while r:
            c = max(r)
            if c not in pivots:
                pivots[c] = r
                rank += 1
                break
            p = pivots[c]
            factor = r[c] / p[c]
            for k, v in p.items():
                nv = r.get(k, 0) - factor * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
    return rank


def _rank_gf2(rows: list[dict[int, int]]) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        r = 0
        for c, v in row.items():
            if v % 2:
                r |= 1 << c
        while r:
            c = r.bit_length() - 1
            if c not in pivots:
                pivots[c] = r
                rank += 1
                break
            r ^= pivots[c]
    return rank


def reduced_homology(complex_: SimplicialComplexData, field: str = "Q",
                     from_degree: int = 0) -> tuple[int, ...]:
    """Reduced Betti numbers in degrees ``from_degree .. dim``.

    Pass ``from_degree=-1`` to include degree -1, which is nonzero only for
    the complex ``{∅}``.  The void complex returns ``()``.  ``field`` is
    ``"Q"`` or ``"GF2"``.
    """
    if not complex_.facets:
        return ()
    rank_fn = {"Q": _rank_rational, "GF2": _rank_gf2}[field]
    by_dim: dict[int, list[int]] = {}
    for f in complex_.faces:
        by_dim.setdefault(popcount(f) - 1, []).append(f)
    top = complex_.dimension
    index = {d: {f: k for k, f in enumerate(sorted(fs))} for d, fs in by_dim.items()}
    # rank of ∂_d : C_d -> C_{d-1}, for d = 0..top (C_{-1} = span{∅})
    ranks = {}
    for d in range(0, top + 1):
        rows = []
        lower = index.get(d - 1, {})
        for f in by_dim.get(d, []):
            row = {}
            for sign_pos, v in enumerate(members(f)):
                row[lower[f & ~(1 << v)]] = -1 if sign_pos % 2 else 1
            rows.append(row)
        ranks[d] = rank_fn(rows) if rows else 0
    betti = []
    for d in range(from_degree, top + 1):
        dim_c = len(by_dim.get(d, []))
        betti.append(dim_c - ranks.get(d, 0) - ranks.get(d + 1, 0))
    return tuple(betti)


def _has_sphere_homology(c: SimplicialComplexData, dim: int, field: str) -> bool:
    betti = reduced_homology(c, field, from_degree=-1)
    if not betti:
        return False
    return all(b == (1 if k - 1 == dim else 0) for k, b in enumerate(betti))


def classify_ball_sphere(complex_: SimplicialComplexData, field: str = "Q") -> str:
    """Homology-manifold style classification: ball, sphere or neither.

    Sphere: pure, every ridge in exactly two facets, sphere homology.
    Ball: pure, every ridge in at most two facets, some ridge in one,
    acyclic, and the boundary has sphere homology one dimension down.
    """
    if not complex_.facets or not complex_.is_pure():
        return NEITHER
    counts = complex_.ridge_counts()
    if any(c > 2 for c in counts.values()):
        return NEITHER
    dim = complex_.dimension
    if all(c == 2 for c in counts.values()):
        return SPHERE if _has_sphere_homology(complex_, dim, field) else NEITHER
    if any(reduced_homology(complex_, field, from_degree=-1)):
        return NEITHER
    if not _has_sphere_homology(complex_.boundary(), dim - 1, field):
        return NEITHER
    return BALL


def is_gorenstein_by_links(complex_: SimplicialComplexData, field: str = "Q") -> bool:
    """Stanley's criterion: the core (cone points removed) must be a homology
    sphere, i.e. every link of a core face has the homology of a sphere of
    its own dimension."""
    core_facets = frozenset(f & ~complex_.cone_points() for f in complex_.facets)
    core = SimplicialComplexData(complex_.n_vertices, core_facets)
    for face in core.faces:
        lk = core.link(face)
        if not _has_sphere_homology(lk, lk.dimension, field):
            return False
    return True
