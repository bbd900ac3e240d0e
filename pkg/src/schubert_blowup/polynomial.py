"""
Sparse multivariate polynomials with exact rational coefficients, and
integral weight orders refined by a fixed tie-break.

A ``Ring`` is an ordered tuple of variable names; a ``Polynomial`` maps
exponent tuples over that list to nonzero ``Fraction`` coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "Ring", "Polynomial", "WeightOrder", "LiftedWeightOrder",
    "lex_weights", "Exponent",
]

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class Ring:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def var(self, name: str | int) -> Polynomial:
        i = self.index(name) if isinstance(name, str) else name
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def const(self, c) -> Polynomial:
        return Polynomial(self, {(0,) * self.nvars: Fraction(c)})

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def monomial(self, exponent: Exponent, coeff=1) -> Polynomial:
        return Polynomial(self, {tuple(exponent): Fraction(coeff)})

    def extend(self, extra: Iterable[str]) -> Ring:
        return Ring(self.names + tuple(extra))


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: Ring, terms: Mapping[Exponent, Fraction | int]):
        self.ring = ring
        self.terms: dict[Exponent, Fraction] = {
            tuple(e): Fraction(c) for e, c in terms.items() if c}

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: Polynomial) -> None:
        if other.ring != self.ring:
            raise ValueError("polynomials live in different rings")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other) -> Polynomial:
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> Polynomial:
        return self._coerce(other) - self

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.ring, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = self.ring.const(1)
        for _ in range(k):
            out = out * self
        return out

    def mul_term(self, exponent: Exponent, coeff: Fraction) -> Polynomial:
        return Polynomial(self.ring, {
            tuple(a + b for a, b in zip(e, exponent)): c * coeff
            for e, c in self.terms.items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure -------------------------------------------------------

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def variables_used(self) -> set[int]:
        return {i for e in self.terms for i, a in enumerate(e) if a}

    def substitute(self, mapping: Mapping[int, Polynomial]) -> Polynomial:
        """Replace variable i by mapping[i] (a polynomial in the target ring);
        unmapped variables are carried over by name into the target ring."""
        if not mapping:
            return self
        target = next(iter(mapping.values())).ring
        out = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, a in enumerate(e):
                if not a:
                    continue
                base = mapping.get(i)
                if base is None:
                    base = target.var(self.ring.names[i])
                term = term * base ** a
            out = out + term
        return out

    def monic(self, order) -> Polynomial:
        if not self.terms:
            return self
        return self * (1 / self.terms[order.leading_exponent(self)])

    def normalize_sign(self, order) -> Polynomial:
        """Scale by ±1 so the leading coefficient is positive."""
        if self.terms and self.terms[order.leading_exponent(self)] < 0:
            return -self
        return self

    # -- text and JSON ---------------------------------------------------

    def format(self, order=None) -> str:
        if not self.terms:
            return "0"
        exps = (sorted(self.terms, key=order.key, reverse=True) if order is not None
                else sorted(self.terms, reverse=True))
        parts = []
        for e in exps:
            c = self.terms[e]
            mono = "*".join(n if a == 1 else f"{n}^{a}"
                            for n, a in zip(self.ring.names, e) if a)
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"Polynomial({self.format()})"

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "numerator": c.numerator, "denominator": c.denominator}
                for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, ring: Ring, doc: list[dict]) -> Polynomial:
        return cls(ring, {tuple(t["exponents"]): Fraction(t["numerator"], t["denominator"])
                          for t in doc})


def lex_weights(nvars: int, spread: int = 8) -> tuple[int, ...]:
    """Integer weights realising lex with variable 0 largest, exact for
    exponents up to ``spread`` in every variable."""
    base = spread + 1
    return tuple(base ** (nvars - 1 - i) for i in range(nvars))


@dataclass(frozen=True)
class WeightOrder:
    """Compare by λ-weight, then (optionally) total degree, then lex along
    ``priority`` (a permutation of the variable indices, most significant
    first)."""
    weights: tuple[int, ...]
    priority: tuple[int, ...] | None = None
    graded_tie_break: bool = True

    def __post_init__(self):
        if self.priority is None:
            object.__setattr__(self, "priority", tuple(range(len(self.weights))))
        if sorted(self.priority) != list(range(len(self.weights))):
            raise ValueError("priority must list every variable exactly once")

    def weight(self, e: Exponent) -> int:
        return sum(w * a for w, a in zip(self.weights, e))

    def key(self, e: Exponent):
        lex = tuple(e[i] for i in self.priority)
        if self.graded_tie_break:
            return (self.weight(e), sum(e), lex)
        return (self.weight(e), lex)

    def leading_exponent(self, f: Polynomial) -> Exponent:
        if not f.terms:
            raise ValueError("the zero polynomial has no leading term")
        return max(f.terms, key=self.key)

    def leading_term(self, f: Polynomial) -> Polynomial:
        e = self.leading_exponent(f)
        return f.ring.monomial(e, f.terms[e])

    def initial_form(self, f: Polynomial) -> Polynomial:
        """Sum of the terms of maximal λ-weight (no tie-break)."""
        if not f.terms:
            return f
        top = max(self.weight(e) for e in f.terms)
        return Polynomial(f.ring, {e: c for e, c in f.terms.items() if self.weight(e) == top})


@dataclass(frozen=True)
class LiftedWeightOrder(WeightOrder):
    """λ̃ on k[x, ε]: λ on x, and λ(init g_i) on ε_i.

    Ties are broken by total degree, then by ε-exponents lexicographically
    with ε_1 largest, then by the base priority.  Without the degree step
    the Rees relations of the 2×3 minor example stop being a Gröbner basis.
    """
    base: WeightOrder | None = None
    epsilon_weights: tuple[int, ...] = ()

    @classmethod
    def lift(cls, base: WeightOrder, epsilon_weights: Iterable[int]) -> LiftedWeightOrder:
        eps = tuple(epsilon_weights)
        k = len(base.weights)
        return cls(
            weights=tuple(base.weights) + eps,
            priority=tuple(range(k, k + len(eps))) + tuple(base.priority),
            graded_tie_break=True,
            base=base,
            epsilon_weights=eps,
        )
