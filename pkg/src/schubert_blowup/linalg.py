"""
Exact linear algebra over the rationals on sparse vectors.

Vectors are dicts ``{coordinate_key: Fraction}``; coordinate keys only need
to be hashable and mutually sortable.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["RowSpace", "intersect_spaces"]


class RowSpace:
    """Span of a family of sparse vectors, kept in echelon form."""

    def __init__(self, vectors=()):
        self._pivots: dict = {}
        for v in vectors:
            self.add(v)

    def reduce(self, vec: dict) -> dict:
        r = {k: Fraction(c) for k, c in vec.items() if c}
        while r:
            key = max(r)
            row = self._pivots.get(key)
            if row is None:
                return r
            factor = r[key] / row[key]
            for k, c in row.items():
                nv = r.get(k, 0) - factor * c
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return r

    def add(self, vec: dict) -> bool:
        """Insert a vector; return True when it enlarged the span."""
        r = self.reduce(vec)
        if not r:
            return False
        self._pivots[max(r)] = r
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def basis(self) -> list[dict]:
        return [dict(v) for v in self._pivots.values()]


def intersect_spaces(a: list[dict], b: list[dict]) -> list[dict]:
    """Basis of span(a) ∩ span(b) via the Zassenhaus method."""
    tagged = RowSpace()
    for v in a:
        row = {(1, k): c for k, c in v.items()}
        row.update({(0, k): c for k, c in v.items()})
        tagged.add(row)
    for v in b:
        tagged.add({(1, k): c for k, c in v.items()})
    out = []
    for row in tagged.basis():
        if all(tag == 0 for tag, _ in row):
            out.append({k: c for (_, k), c in row.items()})
    return out
