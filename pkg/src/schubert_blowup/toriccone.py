"""
Lattice pictures of Stanley–Reisner schemes and of their boundary blow-ups.

The cone C(Δ) is a union of orthants, one per facet σ, living in the
coordinates of the vertices of σ and glued along shared coordinate faces.
Blowing up a torus-invariant union of coordinate subspaces planes each
orthant: the center {x_i = 0, i ∈ S} is replaced by the half-space
Σ_{i∈S} x_i ≥ 1, and a further blow-up along the new wall pushes it one
lattice step inward (level 2, and so on).

Affine charts of a planed cell sit at the vertices of its polyhedron.  When
every tangent cone there is unimodular and simplicial, the chart of the
whole complex is again a Stanley–Reisner ring (on the glued rays), so
Cartier questions reduce to ``monomial.is_principal_modulo``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .monomial import boundary_ideal, is_principal_modulo, stanley_reisner_ideal
from .simplicial import SimplicialComplexData, mask, members

__all__ = [
    "Planing", "Cell", "ConeComplex", "ChartError", "cone_on_complex",
    "boundary_centers", "blow_up_boundary", "exceptional_walls",
    "cell_vertices", "is_blowup_isomorphism", "frobenius_split_check",
    "frobenius_counterexample", "lattice_points", "chart_points", "cone_to_off",
]


class ChartError(ValueError):
    """A chart falls outside what the face-ring reduction handles."""


@dataclass(frozen=True, order=True)
class Planing:
    """The half-space Σ_{v ∈ support} x_v ≥ level (support = global vertex ids)."""
    support: frozenset[int]
    level: int

    def value(self, point: dict[int, Fraction]) -> Fraction:
        return sum((point.get(v, 0) for v in self.support), Fraction(0))


@dataclass(frozen=True)
class Cell:
    """A planed orthant over the global vertices ``vertices``."""
    vertices: tuple[int, ...]
    planings: tuple[Planing, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.vertices)

    @property
    def vertex_mask(self) -> int:
        return mask(self.vertices)

    def level_on(self, support: frozenset[int]) -> int:
        return max((p.level for p in self.planings if p.support == support), default=0)

    def contains(self, point: dict[int, Fraction]) -> bool:
        if any(c < 0 or (c and v not in self.vertices) for v, c in point.items()):
            return False
        return all(p.value(point) >= p.level for p in self.planings)


def _sort_planings(planings) -> tuple[Planing, ...]:
    return tuple(sorted(planings, key=lambda p: (sorted(p.support), p.level)))


@dataclass(frozen=True)
class ConeComplex:
    n_vertices: int
    cells: tuple[Cell, ...]

    def gluings(self) -> list[tuple[int, int, dict[int, int]]]:
        """(a, b, local position map) for every pair of cells sharing a
        nonempty face; positions are 0-based local coordinates."""
        out = []
        for a, b in combinations(range(len(self.cells)), 2):
            ca, cb = self.cells[a], self.cells[b]
            shared = set(ca.vertices) & set(cb.vertices)
            if shared:
                out.append((a, b, {ca.vertices.index(v): cb.vertices.index(v)
                                   for v in sorted(shared)}))
        return out

    def check_gluings(self) -> None:
        """Planings of two cells must cut the same region of their shared
        face; tested on the restricted constraint systems."""
        for a, b, _ in self.gluings():
            face = set(self.cells[a].vertices) & set(self.cells[b].vertices)
            ra = _restricted_constraints(self.cells[a], face)
            rb = _restricted_constraints(self.cells[b], face)
            if ra != rb:
                raise ValueError(f"cells {a} and {b} disagree on their shared face")

    def to_json(self) -> dict:
        cells = []
        for c in self.cells:
            pos = {v: k + 1 for k, v in enumerate(c.vertices)}
            cells.append({
                "dim": c.dim,
                "vertices": [v + 1 for v in c.vertices],
                "planings": [[sorted(pos[v] for v in p.support), p.level] for p in c.planings],
            })
        gl = [{"cells": [a, b], "positions": [[i + 1, j + 1] for i, j in sorted(m.items())]}
              for a, b, m in self.gluings()]
        return {"n_vertices": self.n_vertices, "cells": cells, "gluings": gl}

    @classmethod
    def from_json(cls, doc: dict) -> ConeComplex:
        cells = []
        for c in doc["cells"]:
            verts = tuple(v - 1 for v in c["vertices"])
            pls = [Planing(frozenset(verts[k - 1] for k in S), lvl) for S, lvl in c["planings"]]
            cells.append(Cell(verts, _sort_planings(pls)))
        return cls(doc["n_vertices"], tuple(cells))


def _restricted_constraints(cell: Cell, face: set[int]) -> frozenset[Planing]:
    """Irredundant planings of ``cell`` restricted to the coordinate face."""
    out = {Planing(frozenset(p.support & face), p.level) for p in cell.planings}
    if any(not p.support and p.level > 0 for p in out):
        return frozenset({Planing(frozenset(), 1)})
    return frozenset(p for p in out
                     if not any(q != p and q.support <= p.support and q.level >= p.level
                                for q in out))


def cone_on_complex(C: SimplicialComplexData) -> ConeComplex:
    """One unplaned orthant per facet of C."""
    cells = tuple(Cell(tuple(members(f))) for f in sorted(C.facets, key=members))
    return ConeComplex(C.n_vertices, cells)


# -- blowing up -----------------------------------------------------------------

def boundary_centers(cone: ConeComplex, boundary_facets) -> list[list[frozenset[int]]]:
    """Per cell σ, the supports σ ∖ M for the maximal faces M of σ ∩ ∂Δ,
    where ∂Δ is generated by ``boundary_facets`` (vertex bitmasks)."""
    out = []
    for cell in cone.cells:
        sigma = cell.vertex_mask
        meet = {g & sigma for g in boundary_facets}
        maximal = [m for m in meet if not any(o != m and o & m == m for o in meet)]
        out.append(sorted((frozenset(members(sigma & ~m)) for m in maximal), key=sorted))
    return out


def blow_up_boundary(cone: ConeComplex, centers) -> ConeComplex:
    """Plane cell k along each support S in ``centers[k]``: the wall
    Σ_S x = c (c the current level on S, 0 for a coordinate face) moves to
    level c + 1.  The result does not depend on the order of the supports."""
    centers = list(centers)
    if len(centers) != len(cone.cells):
        raise ValueError("need one list of centers per cell")
    cells = []
    for k, (cell, supports) in enumerate(zip(cone.cells, centers)):
        planings = {p.support: p.level for p in cell.planings}
        for S in {frozenset(S) for S in supports}:
            if not S or not S <= set(cell.vertices):
                raise ValueError(f"center {sorted(S)} is not a face of cell {k}")
            planings[S] = planings.get(S, 0) + 1
        cells.append(Cell(cell.vertices, _sort_planings(Planing(S, c) for S, c in planings.items())))
    return ConeComplex(cone.n_vertices, tuple(cells))


# -- vertices and tangent cones ---------------------------------------------------

def _constraints(cell: Cell) -> list[Planing]:
    """x_v ≥ 0 for every coordinate, then the planings."""
    return [Planing(frozenset({v}), 0) for v in cell.vertices] + list(cell.planings)


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Unique solution of a square system, or None when it is singular."""
    d = len(rows)
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(d):
        piv = next((r for r in range(col, d) if m[r][col]), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(d):
            if r != col and m[r][col]:
                f = m[r][col] / m[col][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][d] / m[r][r] for r in range(d)]


def _row(cell: Cell, p: Planing) -> list[Fraction]:
    return [Fraction(1 if v in p.support else 0) for v in cell.vertices]


def cell_vertices(cell: Cell) -> list[dict[int, Fraction]]:
    """Vertices of the cell's polyhedron as {global vertex: coordinate}
    (zero coordinates omitted), sorted."""
    cons = _constraints(cell)
    found: dict[tuple, dict[int, Fraction]] = {}
    for chosen in combinations(cons, cell.dim):
        sol = _solve([_row(cell, p) for p in chosen], [Fraction(p.level) for p in chosen])
        if sol is None:
            continue
        point = {v: c for v, c in zip(cell.vertices, sol) if c}
        if cell.contains(point):
            found[tuple(sorted(point.items()))] = point
    return [found[k] for k in sorted(found)]


def _tangent_rays(cell: Cell, point: dict[int, Fraction]) -> list[tuple[Planing, tuple[int, ...]]]:
    """(tight constraint, opposite ray) pairs of the tangent cone at a vertex.

    Rays are written in the coordinates of ``cell.vertices``.  Raises
    ChartError unless the cone is simplicial and unimodular."""
    tight = [p for p in _constraints(cell) if p.value(point) == p.level]
    if len(tight) != cell.dim:
        raise ChartError(f"tangent cone at {_fmt(point)} is not simplicial")
    rows = [_row(cell, p) for p in tight]
    rays = []
    for k in range(cell.dim):
        col = _solve(rows, [Fraction(int(j == k)) for j in range(cell.dim)])
        if col is None or any(c.denominator != 1 for c in col):
            raise ChartError(f"tangent cone at {_fmt(point)} is not unimodular")
        rays.append((tight[k], tuple(int(c) for c in col)))
    return rays


def _fmt(point: dict[int, Fraction]) -> str:
    return "{" + ", ".join(f"x{v + 1}={c}" for v, c in sorted(point.items())) + "}"


# -- charts and Cartier divisors ------------------------------------------------

def exceptional_walls(cone: ConeComplex) -> list[list[frozenset[int]]]:
    """Per cell, the supports of planings that are facets of its polyhedron
    (some vertex makes them tight with a full-dimensional tangent cone)."""
    out = []
    for cell in cone.cells:
        used = set()
        for point in cell_vertices(cell):
            for p in cell.planings:
                if p.value(point) == p.level:
                    used.add(p.support)
        out.append(sorted(used, key=sorted))
    return out


def _chart(cone: ConeComplex, point: dict[int, Fraction], divisor):
    """Stanley–Reisner data of the chart at a vertex: ray labels, facets
    (one per cell through the point) and divisor faces, as bitmasks."""
    support = set(point)
    ray_index: dict[tuple[int, ...], int] = {}
    facets, faces = [], []
    for k, cell in enumerate(cone.cells):
        if not support <= set(cell.vertices):
            continue
        rays = []
        for _, local in _tangent_rays(cell, point):
            glob = [0] * cone.n_vertices
            for v, c in zip(cell.vertices, local):
                glob[v] = c
            rays.append(ray_index.setdefault(tuple(glob), len(ray_index)))
        facets.append(mask(rays))
        for S in divisor[k]:
            wall = Planing(frozenset(S), cell.level_on(frozenset(S)))
            if wall.value(point) != wall.level:
                continue
            in_wall = [rays[j] for j, (_, local) in enumerate(_tangent_rays(cell, point))
                       if sum(c for v, c in zip(cell.vertices, local) if v in wall.support) == 0]
            faces.append(mask(in_wall))
    return len(ray_index), facets, faces


def chart_points(cone: ConeComplex) -> list[dict[int, Fraction]]:
    """Torus-fixed points of the planed complex: all cell vertices, once each."""
    seen: dict[tuple, dict[int, Fraction]] = {}
    for cell in cone.cells:
        for point in cell_vertices(cell):
            seen.setdefault(tuple(sorted(point.items())), point)
    return [seen[k] for k in sorted(seen)]


def _least_squares_exact(rows, rhs) -> list[Fraction] | None:
    """The unique solution of a consistent full-column-rank system, or None
    when the system is inconsistent."""
    m = [list(r) + [b] for r, b in zip(rows, rhs)]
    d = len(rows[0]) if rows else 0
    rank = 0
    for col in range(d):
        piv = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if piv is None:
            raise ChartError("tight walls do not pin down a vertex")
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / m[rank][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    if any(row[d] for row in m[rank:]):
        return None
    return [m[r][d] / m[r][r] for r in range(d)]


def _cartier_at(cone: ConeComplex, point: dict[int, Fraction], divisor) -> bool:
    """Direct test at one vertex: a single lattice point m₀, lying in every
    cell through the vertex, with a·m₀ = 1 on each tight divisor wall and
    a·m₀ = 0 on every other tight wall."""
    support = set(point)
    generator = None
    for k, cell in enumerate(cone.cells):
        if not support <= set(cell.vertices):
            continue
        walls = {frozenset(S) for S in divisor[k]}
        rows, rhs = [], []
        for c in _constraints(cell):
            if c.value(point) == c.level:
                rows.append(_row(cell, c))
                rhs.append(Fraction(int(c.support in walls and c.level == cell.level_on(c.support))))
        sol = _least_squares_exact(rows, rhs)
        if sol is None or any(c.denominator != 1 for c in sol):
            return False
        local = [0] * cone.n_vertices
        for v, c in zip(cell.vertices, sol):
            local[v] = int(c)
        if generator is None:
            generator = local
        elif generator != local:
            return False
    return True


def is_blowup_isomorphism(cone: ConeComplex, divisor) -> bool:
    """True iff the reduced divisor cut out by the walls ``divisor[k]`` (walls
    Σ_S x = current level on S, per cell) is principal in every affine chart,
    i.e. blowing up along it changes nothing.

    Charts whose tangent cones are simplicial and unimodular are Stanley–
    Reisner rings on the glued rays and go through ``is_principal_modulo``;
    any other chart uses the direct lattice-point test."""
    divisor = [list(d) for d in divisor]
    if len(divisor) != len(cone.cells):
        raise ValueError("need one wall list per cell")
    for point in chart_points(cone):
        try:
            n_rays, facets, faces = _chart(cone, point, divisor)
        except ChartError:
            if not _cartier_at(cone, point, divisor):
                return False
            continue
        L = SimplicialComplexData(n_rays, frozenset(facets))
        J = boundary_ideal(L, faces)
        if is_principal_modulo(J, stanley_reisner_ideal(L)) is None:
            return False
    return True


# -- Frobenius --------------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def frobenius_counterexample(cone: ConeComplex, p: int):
    """A lattice point a with p·a in some cell but a outside it, or None.

    Only a planing of level c ≥ 2 can fail, and then a violating a may be
    taken with Σ_S a = c − 1 on that planing's support and every other
    coordinate large, because all constraints are monotone."""
    for k, cell in enumerate(cone.cells):
        big = max((q.level for q in cell.planings), default=0) + 1
        for q in cell.planings:
            if q.level < 2:
                continue
            support = sorted(q.support)
            for comp in _compositions(q.level - 1, len(support)):
                a = {v: Fraction(big) for v in cell.vertices if v not in q.support}
                a.update({v: Fraction(c) for v, c in zip(support, comp) if c})
                a = {v: c for v, c in a.items() if c}
                if cell.contains({v: p * c for v, c in a.items()}) and not cell.contains(a):
                    return k, a
    return None


def frobenius_split_check(cone: ConeComplex, p: int) -> bool:
    """Does division by p preserve the lattice points of every cell?"""
    if p not in (2, 3, 5, 7):
        raise ValueError("p must be one of 2, 3, 5, 7")
    return frobenius_counterexample(cone, p) is None


def lattice_points(cell: Cell, bound: int = 6) -> list[dict[int, int]]:
    """Lattice points of the cell with every coordinate at most ``bound``."""
    out = []
    for coords in product(range(bound + 1), repeat=cell.dim):
        point = {v: c for v, c in zip(cell.vertices, coords) if c}
        if cell.contains(point):
            out.append(point)
    return out


# -- OFF export -------------------------------------------------------------------

def _box_vertices(cell: Cell, bound: int):
    """Vertices and tight-constraint sets of the cell cut by x_v ≤ bound."""
    rows = [(_row(cell, p), Fraction(p.level)) for p in _constraints(cell)]
    rows += [([Fraction(-int(j == k)) for j in range(cell.dim)], Fraction(-bound))
             for k in range(cell.dim)]
    found = {}
    for chosen in combinations(range(len(rows)), cell.dim):
        sol = _solve([rows[i][0] for i in chosen], [rows[i][1] for i in chosen])
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(r, sol)) >= b for r, b in rows):
            tight = frozenset(i for i, (r, b) in enumerate(rows)
                              if sum(a * x for a, x in zip(r, sol)) == b)
            found[tuple(sol)] = tight
    return sorted(found.items()), len(rows)


def _cyclic(points: list[tuple[float, ...]], idx: list[int]) -> list[int]:
    """Order coplanar points around their centroid."""
    import math
    pts = [points[i] for i in idx]
    c = [sum(p[k] for p in pts) / len(pts) for k in range(3)]
    u = [a - b for a, b in zip(pts[0], c)]
    # normal from the first two non-parallel edges through the centroid
    for q in pts[1:]:
        v = [a - b for a, b in zip(q, c)]
        nrm = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
        if any(abs(x) > 1e-12 for x in nrm):
            break
    w = [nrm[1] * u[2] - nrm[2] * u[1], nrm[2] * u[0] - nrm[0] * u[2], nrm[0] * u[1] - nrm[1] * u[0]]

    def angle(p):
        d = [a - b for a, b in zip(p, c)]
        return math.atan2(sum(x * y for x, y in zip(d, w)), sum(x * y for x, y in zip(d, u)))
    return [i for _, i in sorted(zip((angle(p) for p in pts), idx))]


def cone_to_off(cone: ConeComplex, bound: int = 3) -> str:
    """OFF text for the planed cells cut by the box x ≤ bound.

    Global vertex v points along (t, t², t³) with t = v + 1; cells of
    dimension above 3 are refused."""
    if any(c.dim > 3 for c in cone.cells):
        raise ValueError("OFF export is limited to cells of dimension ≤ 3")
    coords: dict[tuple, int] = {}
    embedded: list[tuple[float, ...]] = []
    polys: list[list[int]] = []

    def place(cell: Cell, sol) -> int:
        pt = [Fraction(0)] * 3
        for v, x in zip(cell.vertices, sol):
            t = v + 1
            for k, d in enumerate((t, t * t, t ** 3)):
                pt[k] += x * d
        key = tuple(pt)
        if key not in coords:
            coords[key] = len(coords)
            embedded.append(tuple(float(x) for x in key))
        return coords[key]

    for cell in cone.cells:
        if cell.dim == 0:
            continue
        verts, n_rows = _box_vertices(cell, bound)
        ids = [place(cell, sol) for sol, _ in verts]
        if cell.dim <= 2:
            face = _cyclic(embedded, ids) if len(ids) > 2 else ids
            polys.append(face)
            continue
        for r in range(n_rows):
            on = sorted({ids[k] for k, (_, tight) in enumerate(verts) if r in tight})
            if len(on) >= 3:
                polys.append(_cyclic(embedded, on))
    unique = []
    for p in polys:
        if sorted(p) not in [sorted(q) for q in unique]:
            unique.append(p)
    lines = ["OFF", f"{len(coords)} {len(unique)} 0"]
    order = sorted(coords.items(), key=lambda kv: kv[1])
    for key, _ in order:
        lines.append(" ".join(str(x) if x.denominator == 1 else f"{float(x):.6g}" for x in key))
    for p in unique:
        lines.append(" ".join([str(len(p)), *map(str, p)]))
    return "\n".join(lines) + "\n"
