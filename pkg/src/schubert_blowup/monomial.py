"""
Squarefree monomial ideals with generators stored as variable bitmasks.

A squarefree monomial is identified with its support, so membership in an
ideal is support containment against some generator, and the intersection
of two ideals is generated by pairwise unions (least common multiples).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product

from .linalg import RowSpace, intersect_spaces
from .simplicial import SimplicialComplexData, mask, members, popcount

__all__ = [
    "SquarefreeMonomialIdeal", "minimalize", "intersect", "coordinate_ideal",
    "boundary_ideal", "stanley_reisner_ideal", "is_principal_modulo", "principal_witness_exhaustive",
    "product_syzygy_check", "DegreeBoundExceeded",
]


def minimalize(masks) -> frozenset[int]:
    """Drop every support that contains another one."""
    ms = sorted(set(masks), key=lambda m: (popcount(m), m))
    keep: list[int] = []
    for m in ms:
        if not any(k & m == k for k in keep):
            keep.append(m)
    return frozenset(keep)


@dataclass(frozen=True)
class SquarefreeMonomialIdeal:
    """Ideal in ``n_vars`` variables; ``generators`` are support bitmasks.

    No generators means the zero ideal; the generator ``0`` (empty support)
    is the unit ideal.
    """
    n_vars: int
    generators: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "generators", minimalize(self.generators))

    @classmethod
    def unit(cls, n_vars: int) -> SquarefreeMonomialIdeal:
        return cls(n_vars, frozenset({0}))

    @classmethod
    def from_lists(cls, n_vars: int, gens) -> SquarefreeMonomialIdeal:
        return cls(n_vars, frozenset(mask(g) for g in gens))

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return 0 in self.generators

    def contains(self, monomial: int) -> bool:
        return any(g & monomial == g for g in self.generators)

    def contains_ideal(self, other: SquarefreeMonomialIdeal) -> bool:
        return all(self.contains(g) for g in other.generators)

    def __add__(self, other: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
        self._same_ring(other)
        return SquarefreeMonomialIdeal(self.n_vars, self.generators | other.generators)

    def __and__(self, other: SquarefreeMonomialIdeal) -> SquarefreeMonomialIdeal:
        self._same_ring(other)
        return SquarefreeMonomialIdeal(
            self.n_vars,
            frozenset(a | b for a in self.generators for b in other.generators))

    def _same_ring(self, other):
        if self.n_vars != other.n_vars:
            raise ValueError(f"ambient mismatch: {self.n_vars} vs {other.n_vars} variables")

    def as_lists(self) -> list[list[int]]:
        return sorted(list(members(g)) for g in self.generators)

    def to_json(self, names: list[str] | None = None) -> dict:
        doc = {"n_vars": self.n_vars, "generators": self.as_lists()}
        if names is not None:
            doc["variables"] = list(names)
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> SquarefreeMonomialIdeal:
        return cls.from_lists(doc["n_vars"], doc["generators"])

    def format(self, names: list[str]) -> list[str]:
        return sorted("".join(names[i] for i in members(g)) or "1"
                      for g in self.generators)

    def stanley_reisner_complex(self) -> SimplicialComplexData:
        """Facets are the maximal supports avoiding every generator."""
        full = (1 << self.n_vars) - 1
        # complements of minimal transversals of the generators
        covers = minimal_transversals(self.generators, self.n_vars)
        return SimplicialComplexData(self.n_vars, frozenset(full & ~t for t in covers))


def minimal_transversals(gens, n_vars: int) -> frozenset[int]:
    """Minimal vertex sets meeting every generator support: these are the
    supports of the minimal primes."""
    result = frozenset({0})
    for g in gens:
        nxt = set()
        for t in result:
            if t & g:
                nxt.add(t)
            else:
                for v in members(g):
                    nxt.add(t | (1 << v))
        result = minimalize(nxt)
    return result


def coordinate_ideal(n_vars: int, variables) -> SquarefreeMonomialIdeal:
    return SquarefreeMonomialIdeal(n_vars, frozenset(1 << v for v in variables))


def intersect(ideals) -> SquarefreeMonomialIdeal:
    ideals = list(ideals)
    if not ideals:
        raise ValueError("intersect needs at least one ideal to fix the ambient ring")
    out = ideals[0]
    for nxt in ideals[1:]:
        out = out & nxt
    return out


def stanley_reisner_ideal(C: SimplicialComplexData) -> SquarefreeMonomialIdeal:
    """Minimal non-faces of C: the minimal sets meeting every facet complement."""
    full = (1 << C.n_vertices) - 1
    return SquarefreeMonomialIdeal(
        C.n_vertices, minimal_transversals([full & ~F for F in C.facets], C.n_vertices))


def boundary_ideal(C: SimplicialComplexData, boundary_facets) -> SquarefreeMonomialIdeal:
    """∩ over boundary facets G of ⟨x_i : i ∉ G⟩; the unit ideal when there
    are none."""
    n = C.n_vertices
    full = (1 << n) - 1
    out = SquarefreeMonomialIdeal.unit(n)
    for G in boundary_facets:
        if not C.contains(G):
            raise ValueError(f"{members(G)} is not a face of the complex")
        out = out & coordinate_ideal(n, members(full & ~G))
    return out


def is_principal_modulo(J: SquarefreeMonomialIdeal,
                        I_delta: SquarefreeMonomialIdeal) -> int | None:
    """A squarefree m ∉ IΔ with J + IΔ = ⟨m⟩ + IΔ, or None.

    Such an m must itself be a minimal generator of J dividing every other
    generator of J outside IΔ, so the generators of J not in IΔ are the
    only candidates.
    """
    J._same_ring(I_delta)
    outside = [g for g in J.generators if not I_delta.contains(g)]
    if not outside:
        raise ValueError("J is contained in IΔ")
    for m in outside:
        if _generates_mod(m, J, I_delta):
            return m
    return None


def _generates_mod(m: int, J: SquarefreeMonomialIdeal, I_delta: SquarefreeMonomialIdeal) -> bool:
    if I_delta.contains(m) or not (J.contains(m)):
        return False
    return all(I_delta.contains(g) or g & m == m for g in J.generators)


def principal_witness_exhaustive(J: SquarefreeMonomialIdeal,
                                 I_delta: SquarefreeMonomialIdeal) -> int | None:
    """Reference search over all 2^n squarefree supports (exponential)."""
    for m in sorted(range(1 << J.n_vars), key=lambda x: (popcount(x), x)):
        if _generates_mod(m, J, I_delta):
            return m
    return None


# -- syzygies of products ---------------------------------------------------

class DegreeBoundExceeded(RuntimeError):
    """The requested degree bound is too small to certify the identity."""


Exponent = tuple[int, ...]


def _add(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Exponent, b: Exponent) -> Exponent | None:
    d = tuple(x - y for x, y in zip(a, b))
    return d if min(d, default=0) >= 0 else None


def _exponents_of_degree_at_most(n: int, bound: Exponent | int):
    if isinstance(bound, int):
        for total in range(bound + 1):
            yield from _compositions(n, total)
    else:
        yield from product(*(range(b + 1) for b in bound))


def _compositions(n: int, total: int):
    if n == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _compositions(n - 1, total - first):
            yield (first,) + rest


def _y_monomials(n_y: int, degree: int):
    """Sorted index tuples (multisets) of the given size."""
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(n_y), degree)


class _SyzygyContext:
    """Fine-graded pieces of S = k[x][y], with y_j standing for the j-th
    distinct generator g_j and weighted by its exponent."""

    def __init__(self, n_vars: int, ideals: list[SquarefreeMonomialIdeal]):
        self.n = n_vars
        distinct = sorted({g for I in ideals for g in I.generators})
        self.y_support = distinct
        self.y_exp = [tuple(1 if g >> i & 1 else 0 for i in range(n_vars)) for g in distinct]
        index = {g: j for j, g in enumerate(distinct)}
        self.factor_ys = [sorted(index[g] for g in I.generators) for I in ideals]
        self.r = len(ideals)
        self._syz_cache: dict = {}
        self._inter_cache: dict = {}

    def y_weight(self, ys) -> Exponent:
        w = (0,) * self.n
        for j in ys:
            w = _add(w, self.y_exp[j])
        return w

    def koszul(self, k: int) -> list[dict]:
        """σ_ij = (lcm/g_i) y_i − (lcm/g_j) y_j for factor k; keys are
        (x-exponent, y-multiset)."""
        out = []
        for i, j in combinations(self.factor_ys[k], 2):
            gi, gj = self.y_exp[i], self.y_exp[j]
            lcm = tuple(max(a, b) for a, b in zip(gi, gj))
            out.append({(_sub(lcm, gi), (i,)): 1, (_sub(lcm, gj), (j,)): -1})
        return out

    def _shift(self, vec: dict, x: Exponent, ys: tuple[int, ...]) -> dict:
        return {(_add(a, x), tuple(sorted(b + ys))): c for (a, b), c in vec.items()}

    def syzygy_piece(self, k: int, target: Exponent, ydeg: int) -> list[dict]:
        """Span of Syz(I_k) in fine degree (target, ydeg)."""
        key = (k, target, ydeg)
        if key in self._syz_cache:
            return self._syz_cache[key]
        space = RowSpace()
        for sigma in self.koszul(k):
            # weight of σ: lcm of its two generators
            (a0, b0), _ = next(iter(sigma.items()))
            w = _add(a0, self.y_weight(b0))
            for ys in _y_monomials(len(self.y_exp), ydeg - 1):
                rest = _sub(target, _add(w, self.y_weight(ys)))
                if rest is not None:
                    space.add(self._shift(sigma, rest, ys))
        basis = space.basis()
        self._syz_cache[key] = basis
        return basis

    def intersection_piece(self, M: tuple[int, ...], target: Exponent, ydeg: int) -> list[dict]:
        key = (M, target, ydeg)
        if key not in self._inter_cache:
            basis = self.syzygy_piece(M[0], target, ydeg)
            for k in M[1:]:
                if not basis:
                    break
                basis = intersect_spaces(basis, self.syzygy_piece(k, target, ydeg))
            self._inter_cache[key] = basis
        return self._inter_cache[key]

    def product_monomials(self, target: Exponent) -> set:
        """Keys x^a · y_{i_1}⋯y_{i_r} with one y from each factor."""
        out = set()
        for choice in product(*self.factor_ys):
            rest = _sub(target, self.y_weight(choice))
            if rest is not None:
                out.add((rest, tuple(sorted(choice))))
        return out

    def rhs_piece(self, target: Exponent) -> RowSpace:
        """Σ_M (∏_{k∉M} Ī_k)(∩_{k∈M} Syz(I_k)) in fine degree (target, r)."""
        space = RowSpace()
        for size in range(1, self.r + 1):
            for M in combinations(range(self.r), size):
                others = [self.factor_ys[k] for k in range(self.r) if k not in M]
                for choice in product(*others):
                    w = self.y_weight(choice)
                    rest = _sub(target, w)
                    if rest is None:
                        continue
                    for vec in self.intersection_piece(M, rest, size):
                        space.add(self._shift(vec, (0,) * self.n, tuple(choice)))
        return space


def product_syzygy_check(ideals, degree_bound: int | None = None) -> bool:
    """Compare Syz(∏ I_k) with Σ_{∅≠M} (∏_{k∉M} Ī_k)(∩_{k∈M} Syz(I_k)).

    Generators shared between factors share one y variable.  Syz(∏ I_k) is
    the space of k[x]-combinations of the products y_{i_1}⋯y_{i_r} that
    vanish under y_j ↦ g_j; the right side is compared after restricting
    to that same span of products.  Both are graded by the x-exponent
    (with y_j weighted by g_j) and are k[x]-modules, and the left side is
    generated by binomials living in the lcm degrees of two products.  So
    comparing every piece up to those degrees, by exact rank computations,
    decides equality.  ``degree_bound`` caps the total x-degree examined and
    must reach the largest such lcm degree.
    """
    ideals = list(ideals)
    if not ideals:
        raise ValueError("need at least one ideal")
    n = ideals[0].n_vars
    for I in ideals:
        ideals[0]._same_ring(I)
        if I.is_zero():
            raise ValueError("zero ideals have no generators to form syzygies with")
    ctx = _SyzygyContext(n, ideals)
    prod_weights = {ctx.y_weight(c) for c in product(*ctx.factor_ys)}
    needed = max(sum(max(x, y) for x, y in zip(a, b))
                 for a in prod_weights for b in prod_weights)
    if degree_bound is None:
        degree_bound = needed
    elif degree_bound < needed:
        raise DegreeBoundExceeded(
            f"degree bound {degree_bound} is below {needed}, the largest degree "
            "of a binomial generator of Syz(∏ I_k)")
    box = (ctx.r,) * n  # product exponents never exceed r in any variable
    for target in _exponents_of_degree_at_most(n, box):
        if sum(target) > degree_bound:
            continue
        prods = ctx.product_monomials(target)
        lhs_dim = max(len(prods) - 1, 0)  # all products map to x^target
        rhs = ctx.rhs_piece(target)
        # dim(rhs ∩ span(prods)) = dim rhs − rank of rhs projected off prods
        off = RowSpace()
        for vec in rhs.basis():
            off.add({k: c for k, c in vec.items() if k not in prods})
        if rhs.dim - off.dim != lhs_dim:
            return False
    return True
