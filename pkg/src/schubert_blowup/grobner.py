"""
Kazhdan–Lusztig ideals, weight-order division, Buchberger verification and
bounded completion, σ/τ syzygies and presentations of blow-up algebras.

The patch matrix Z(v) has a 1 at (i, v(i)), a free variable at (i, j)
whenever j < v(i) and v⁻¹(j) < i, and 0 elsewhere.  The variable at
(row i, column j) is named ``z{n+1-i}{j}`` (``z{a}_{b}`` once n > 9), so
for v = id the bottom row carries z11, z12, ..., as in the usual pictures.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations

from . import coxeter as cx
from .coxeter import Permutation
from .polynomial import (
    Exponent, LiftedWeightOrder, Polynomial, Ring, WeightOrder, lex_weights,
)

__all__ = [
    "KLData", "patch_matrix", "kl_ring", "kl_order", "diagonal_order",
    "root_variables", "kl_generators",
    "divide", "s_polynomial", "buchberger_verify", "buchberger_complete",
    "reduced_basis", "GroebnerError", "initial_ideal", "syzygy_pairs",
    "SyzygyPair", "ReesPresentation", "rees_presentation",
    "verify_degeneration_commutes", "DegenerationReport",
    "same_ideal", "leading_monomials", "monomial_ideal_equal",
]


class GroebnerError(RuntimeError):
    """A Gröbner-basis precondition failed, or a degree cap was hit."""


# -- Kazhdan–Lusztig ideals ----------------------------------------------------

def variable_name(n: int, row: int, col: int) -> str:
    a = n + 1 - row
    return f"z{a}{col}" if n <= 9 else f"z{a}_{col}"


def free_positions(v: Permutation) -> list[tuple[int, int]]:
    """Matrix positions (row, col), 1-based, holding free variables in Z(v)."""
    n = len(v)
    vinv = cx.inverse(v)
    return [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)
            if j < v[i - 1] and vinv[j - 1] < i]


def kl_ring(v: Permutation) -> Ring:
    """Variables of Z(v) ordered column by column, bottom row first:
    z11, z21, z31, ..., z12, z22, ...  This is the lex order used for the
    degeneration, variable 0 largest."""
    n = len(v)
    pos = free_positions(v)
    pos.sort(key=lambda rc: (rc[1], n + 1 - rc[0]))
    return Ring(tuple(variable_name(n, r, c) for r, c in pos))


def kl_order(ring: Ring, spread: int = 8) -> WeightOrder:
    return WeightOrder(lex_weights(ring.nvars, spread))


def diagonal_order(v: Permutation, ring: Ring | None = None) -> WeightOrder:
    """Lex order with variables in reading order (top row first, left to
    right).  Every minor of Z(v) then leads with its main-diagonal product,
    and for v = id the initial ideal of each Kazhdan–Lusztig ideal is the
    Stanley–Reisner ideal of its subword complex under ``root_variables``."""
    ring = ring or kl_ring(v)
    n = len(v)
    names = {variable_name(n, r, c): (r, c) for r, c in free_positions(v)}
    priority = sorted(range(ring.nvars), key=lambda k: names[ring.names[k]])
    return WeightOrder((0,) * ring.nvars, priority=tuple(priority))


def root_variables(Q: cx.Word, n: int) -> list[str]:
    """Variable attached to each position of a reduced word Q for w₀: the
    inversion root e_i − e_j at that position sits at matrix entry
    (n+1−i, n+1−j) of Z(id)."""
    out = []
    for i, j in cx.inversion_roots(Q, n):
        if i > j:
            raise ValueError("Q is not reduced")
        out.append(variable_name(n, n + 1 - i, n + 1 - j))
    return out


def patch_matrix(v: Permutation, ring: Ring | None = None) -> list[list[Polynomial]]:
    n = len(v)
    ring = ring or kl_ring(v)
    free = set(free_positions(v))
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if v[i - 1] == j:
                row.append(ring.const(1))
            elif (i, j) in free:
                row.append(ring.var(variable_name(n, i, j)))
            else:
                row.append(ring.zero())
        rows.append(row)
    return rows


def determinant(M: list[list[Polynomial]], ring: Ring) -> Polynomial:
    k = len(M)
    out = ring.zero()
    for perm in permutations(range(k)):
        sign = 1
        for a in range(k):
            for b in range(a + 1, k):
                if perm[a] > perm[b]:
                    sign = -sign
        term = ring.const(sign)
        for r, c in enumerate(perm):
            entry = M[r][c]
            if not entry:
                term = None
                break
            term = term * entry
        if term is not None:
            out = out + term
    return out


def rank_conditions(w: Permutation, prune: bool = True) -> list[tuple[int, int, int]]:
    """(i, j, r): rank of rows i..n, columns 1..j is at most r, kept only
    when r is below the size bound.

    With ``prune``, a condition implied by another kept one is dropped: a
    bigger submatrix with rank ≤ r' ≤ r, or a smaller one with rank ≤ r'
    where each extra row or column can raise the rank by one.
    """
    n = len(w)
    conds = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r = sum(1 for k in range(i, n + 1) if w[k - 1] <= j)
            if r < min(n - i + 1, j):
                conds.append((i, j, r))
    if not prune:
        return conds

    def implies(a, b):
        (i2, j2, r2), (i, j, r) = a, b
        if i2 <= i and j2 >= j and r2 <= r:
            return True
        return i2 >= i and j2 <= j and r2 + (i2 - i) + (j - j2) <= r

    kept: list[tuple[int, int, int]] = []
    # strongest conditions first, so a condition is only ever dropped in
    # favour of one that survives
    for c in sorted(conds, key=lambda c: (c[2], -(n - c[0] + 1) * c[1])):
        if not any(implies(k, c) for k in kept):
            kept = [k for k in kept if not implies(c, k)]
            kept.append(c)
    return sorted(kept)


@dataclass
class KLData:
    w: Permutation
    v: Permutation
    ring: Ring
    order: WeightOrder
    generators: list[Polynomial]


def kl_generators(w: Permutation, v: Permutation, spread: int = 8,
                  prune: bool = True) -> KLData:
    """All (r+1)-minors of Z(v) for each rank condition of w, deduplicated
    and sign-normalised (positive leading coefficient).  ``prune=False``
    keeps redundant rank conditions."""
    w, v = cx.check_permutation(w), cx.check_permutation(v)
    if len(w) != len(v):
        raise ValueError("w and v must lie in the same symmetric group")
    if not cx.bruhat_leq(v, w):
        raise ValueError(f"{cx.format_permutation(w)} is not ≥ {cx.format_permutation(v)}: "
                         "the Kazhdan–Lusztig variety is empty")
    ring = kl_ring(v)
    order = kl_order(ring, spread)
    Z = patch_matrix(v, ring)
    n = len(w)
    seen: dict[Polynomial, None] = {}
    for i, j, r in rank_conditions(w, prune):
        rows = range(i - 1, n)
        cols = range(j)
        for R in combinations(rows, r + 1):
            for C in combinations(cols, r + 1):
                minor = determinant([[Z[a][b] for b in C] for a in R], ring)
                if minor:
                    seen.setdefault(minor.normalize_sign(order), None)
    gens = sorted(seen, key=lambda g: order.key(order.leading_exponent(g)), reverse=True)
    return KLData(w, v, ring, order, gens)


# -- division and Buchberger ---------------------------------------------------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _quotient(b: Exponent, a: Exponent) -> Exponent:
    return tuple(y - x for x, y in zip(a, b))


def divide(f: Polynomial, gens: list[Polynomial], order: WeightOrder):
    """Multivariate division: f = Σ q_i g_i + r, no term of r divisible by
    any leading term.  The first dividing generator in list order is used."""
    if any(g.is_zero() for g in gens):
        raise ValueError("cannot divide by the zero polynomial")
    ring = f.ring
    leads = [(order.leading_exponent(g), g.terms[order.leading_exponent(g)]) for g in gens]
    quotients = [dict() for _ in gens]
    remainder: dict[Exponent, Fraction] = {}
    p = dict(f.terms)
    while p:
        e = max(p, key=order.key)
        c = p[e]
        for k, (le, lc) in enumerate(leads):
            if _divides(le, e):
                qe, qc = _quotient(e, le), c / lc
                quotients[k][qe] = quotients[k].get(qe, 0) + qc
                for ge, gc in gens[k].terms.items():
                    te = tuple(a + b for a, b in zip(ge, qe))
                    nv = p.get(te, 0) - qc * gc
                    if nv:
                        p[te] = nv
                    else:
                        p.pop(te, None)
                break
        else:
            remainder[e] = c
            del p[e]
    return [Polynomial(ring, q) for q in quotients], Polynomial(ring, remainder)


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def s_pair_cofactors(f: Polynomial, g: Polynomial, order: WeightOrder):
    """(u, v) with u·f − v·g the S-polynomial; u, v are single terms given
    as (exponent, coefficient)."""
    ef, eg = order.leading_exponent(f), order.leading_exponent(g)
    L = _lcm(ef, eg)
    return (_quotient(L, ef), 1 / f.terms[ef]), (_quotient(L, eg), 1 / g.terms[eg])


def s_polynomial(f: Polynomial, g: Polynomial, order: WeightOrder) -> Polynomial:
    (ue, uc), (ve, vc) = s_pair_cofactors(f, g, order)
    return f.mul_term(ue, uc) - g.mul_term(ve, vc)


def buchberger_verify(gens: list[Polynomial], order: WeightOrder) -> bool:
    """True iff every S-pair reduces to zero against ``gens``."""
    gens = [g for g in gens if g]
    for a, b in combinations(range(len(gens)), 2):
        _, r = divide(s_polynomial(gens[a], gens[b], order), gens, order)
        if r:
            return False
    return True


def buchberger_complete(gens: list[Polynomial], order: WeightOrder,
                        degree_cap: int = 8) -> list[Polynomial]:
    """Buchberger's algorithm, refusing S-pairs whose lcm exceeds
    ``degree_cap`` in total degree (raises GroebnerError).  Uses the
    coprime-leading-term criterion.  Returns the reduced basis."""
    basis = [g.monic(order) for g in gens if g]
    pairs = list(combinations(range(len(basis)), 2))
    while pairs:
        pairs.sort(key=lambda ij: sum(_lcm(order.leading_exponent(basis[ij[0]]),
                                            order.leading_exponent(basis[ij[1]]))))
        a, b = pairs.pop(0)
        ea, eb = order.leading_exponent(basis[a]), order.leading_exponent(basis[b])
        if all(x == 0 or y == 0 for x, y in zip(ea, eb)):
            continue  # coprime leading terms reduce to zero
        if sum(_lcm(ea, eb)) > degree_cap:
            raise GroebnerError(f"S-pair of degree {sum(_lcm(ea, eb))} exceeds cap {degree_cap}")
        _, r = divide(s_polynomial(basis[a], basis[b], order), basis, order)
        if r:
            basis.append(r.monic(order))
            k = len(basis) - 1
            pairs.extend((i, k) for i in range(k))
    return reduced_basis(basis, order)


def reduced_basis(gb: list[Polynomial], order: WeightOrder) -> list[Polynomial]:
    gb = [g.monic(order) for g in gb if g]
    gb.sort(key=lambda g: order.key(order.leading_exponent(g)))
    minimal: list[Polynomial] = []
    for g in gb:
        le = order.leading_exponent(g)
        if not any(_divides(order.leading_exponent(h), le) for h in minimal):
            minimal = [h for h in minimal if not _divides(le, order.leading_exponent(h))]
            minimal.append(g)
    out = []
    for k, g in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1:]
        lead = order.leading_term(g)
        _, tail = divide(g - lead, others, order) if others else (None, g - lead)
        out.append((lead + tail).monic(order))
    return sorted(out, key=lambda g: order.key(order.leading_exponent(g)), reverse=True)


def leading_monomials(gens: list[Polynomial], order: WeightOrder) -> set[Exponent]:
    return {order.leading_exponent(g) for g in gens if g}


def monomial_ideal_equal(a: set[Exponent], b: set[Exponent]) -> bool:
    def inside(x, gens):
        return any(_divides(g, x) for g in gens)
    return all(inside(x, b) for x in a) and all(inside(x, a) for x in b)


def same_ideal(a: list[Polynomial], b: list[Polynomial], order: WeightOrder,
               degree_cap: int = 8) -> bool:
    """Ideal equality by mutual reduction against completed bases."""
    ga = buchberger_complete(a, order, degree_cap)
    gb = buchberger_complete(b, order, degree_cap)
    return (all(not divide(f, gb, order)[1] for f in a if f)
            and all(not divide(f, ga, order)[1] for f in b if f))


def initial_ideal(gens: list[Polynomial], order: WeightOrder, check: bool = True,
                  weight_only: bool = False) -> list[Polynomial]:
    """Initial terms of a Gröbner basis (or full λ-initial forms with
    ``weight_only``)."""
    if check and not buchberger_verify(gens, order):
        raise GroebnerError("generators are not a Gröbner basis for this order")
    if weight_only:
        return [order.initial_form(g) for g in gens if g]
    return [order.leading_term(g).monic(order) for g in gens if g]


# -- syzygies and blow-up algebras ---------------------------------------------

@dataclass
class SyzygyPair:
    i: int
    j: int
    sigma: Polynomial
    tau: Polynomial


def _eps_ring(ring: Ring, count: int) -> Ring:
    return ring.extend(f"e{k + 1}" for k in range(count))


def _embed(f: Polynomial, big: Ring) -> Polynomial:
    pad = (0,) * (big.nvars - f.ring.nvars)
    return Polynomial(big, {e + pad: c for e, c in f.terms.items()})


def syzygy_pairs(gens: list[Polynomial], order: WeightOrder,
                 ring: Ring | None = None, check: bool = True) -> list[SyzygyPair]:
    """σ_ij = (lcm/LTg_i) ε_i − (lcm/LTg_j) ε_j and τ_ij = σ_ij − Σ f_u ε_u,
    where the f_u are the division quotients of the S-polynomial."""
    if check and not buchberger_verify(gens, order):
        raise GroebnerError("syzygy pairs need a Gröbner basis")
    base = gens[0].ring
    big = ring or _eps_ring(base, len(gens))
    k0 = base.nvars
    out = []
    for i, j in combinations(range(len(gens)), 2):
        (ue, uc), (ve, vc) = s_pair_cofactors(gens[i], gens[j], order)
        ei = [0] * big.nvars
        ej = [0] * big.nvars
        ei[:k0], ej[:k0] = ue, ve
        ei[k0 + i] += 1
        ej[k0 + j] += 1
        sigma = Polynomial(big, {tuple(ei): uc, tuple(ej): -vc})
        quotients, r = divide(s_polynomial(gens[i], gens[j], order), gens, order)
        if r:
            raise GroebnerError(f"S-pair ({i + 1},{j + 1}) leaves a remainder")
        tau = sigma
        for u, q in enumerate(quotients):
            if q:
                tau = tau - _embed(q, big) * big.var(k0 + u)
        out.append(SyzygyPair(i + 1, j + 1, sigma, tau))
    return out


@dataclass
class ReesPresentation:
    base_ring: Ring
    ring: Ring
    order: WeightOrder
    lifted: LiftedWeightOrder
    generators: list[Polynomial]       # g_1..g_{m+n}, I first
    m: int                             # number of generators of I
    pairs: list[SyzygyPair] = field(default_factory=list)

    def epsilon(self, k: int) -> Polynomial:
        """ε_k, 1-based."""
        return self.ring.var(self.base_ring.nvars + k - 1)

    @property
    def relations(self) -> list[Polynomial]:
        rel = [_embed(g, self.ring) for g in self.generators[:self.m]]
        rel += [self.epsilon(k) for k in range(1, self.m + 1)]
        rel += [p.tau for p in self.pairs]
        return rel

    def evaluate(self, f: Polynomial) -> Polynomial:
        """Substitute ε_k ↦ g_k."""
        k0 = self.base_ring.nvars
        mapping = {i: self.base_ring.var(i) for i in range(k0)}
        mapping.update({k0 + k: g for k, g in enumerate(self.generators)})
        return f.substitute(mapping)

    def kill_epsilons(self, f: Polynomial, upto: int | None = None) -> Polynomial:
        upto = self.m if upto is None else upto
        k0 = self.base_ring.nvars
        dead = set(range(k0, k0 + upto))
        return Polynomial(self.ring, {e: c for e, c in f.terms.items()
                                      if not any(e[i] for i in dead)})

    def to_json(self) -> dict:
        return {
            "variables": list(self.ring.names),
            "m": self.m,
            "generators": [g.format(self.order) for g in self.generators],
            "relations": [r.format(self.lifted) for r in self.relations],
        }


def rees_presentation(I_gens: list[Polynomial], J_extra: list[Polynomial],
                      order: WeightOrder) -> ReesPresentation:
    """S[ε_1..ε_{m+n}] / (I + ⟨ε_1..ε_m⟩ + ⟨τ_ij⟩) for J = I + ⟨J_extra⟩."""
    gens = list(I_gens) + list(J_extra)
    if not gens:
        raise ValueError("J needs at least one generator")
    base = gens[0].ring
    if I_gens and not buchberger_verify(I_gens, order):
        raise GroebnerError("I generators are not a Gröbner basis")
    if not buchberger_verify(gens, order):
        raise GroebnerError("J generators are not a Gröbner basis")
    for g in I_gens:
        if divide(g, gens, order)[1]:
            raise GroebnerError("I is not contained in J")
    big = _eps_ring(base, len(gens))
    eps_w = [order.weight(order.leading_exponent(g)) for g in gens]
    lifted = LiftedWeightOrder.lift(order, eps_w)
    pairs = syzygy_pairs(gens, order, big, check=False)
    return ReesPresentation(base, big, order, lifted, gens, len(I_gens), pairs)


@dataclass
class DegenerationReport:
    relations_are_groebner: bool
    initial_forms_match: bool
    leading_terms_match: bool
    taus_evaluate_to_zero: bool

    @property
    def ok(self) -> bool:
        return (self.relations_are_groebner and self.initial_forms_match
                and self.leading_terms_match and self.taus_evaluate_to_zero)


def verify_degeneration_commutes(I_gens: list[Polynomial], J_extra: list[Polynomial],
                                 order: WeightOrder, degree_cap: int = 8) -> DegenerationReport:
    """Check that degenerating the Rees presentation gives the presentation
    of the degenerate data.

    (a) the relation set {g_i} ∪ {ε_1..ε_m} ∪ {τ_ij} is a Gröbner basis for
        λ̃ refined by its tie-break;
    (b) its λ̃-initial forms generate the ideal T of {init g_i} ∪
        {ε_1..ε_m} ∪ {σ_ij} (mutual reduction against completed bases);
    (c) the leading terms of (a) generate in(T), so the initial forms in (b)
        generate the whole λ̃-initial ideal.
    """
    P = rees_presentation(I_gens, J_extra, order)
    lifted = P.lifted
    rel = P.relations
    a = buchberger_verify(rel, lifted)
    forms = [lifted.initial_form(f) for f in rel]
    target = [_embed(order.leading_term(g), P.ring) for g in P.generators[:P.m]]
    target += [P.epsilon(k) for k in range(1, P.m + 1)]
    target += [p.sigma for p in P.pairs]
    b = same_ideal(forms, target, lifted, degree_cap)
    gt = buchberger_complete(target, lifted, degree_cap)
    c = monomial_ideal_equal(leading_monomials(rel, lifted), leading_monomials(gt, lifted))
    zero = all(not P.evaluate(p.tau) for p in P.pairs)
    return DegenerationReport(a, b, c, zero)
