"""Exact linear algebra over the Gaussian rationals.

Vectors are sparse ``{column: value}`` dicts.  Real input is eliminated
fraction-free: each row is scaled to integers, reduced by
``v <- p*v - a*r`` (``p`` the pivot, ``a`` the entry to kill) and divided
by its integer content, which keeps entries bounded by minors.  Input with
a non-real entry switches the whole echelon to field arithmetic over
``Q(i)`` with monic pivots; Gaussian-integer content removal needs a
Euclidean gcd per entry and is far slower on the large minors produced by
random evaluation points.
"""

from __future__ import annotations

from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError
from .scalar import ONE, ZERO, Scalar


def _integer_row(vec: Mapping):
    """Return ``(row, L)`` with ``row = L * vec`` integral, or ``None`` if ``vec`` is not real."""
    parts = []
    L = 1
    for c, x in vec.items():
        a, b, d = Scalar.coerce(x).parts
        if b:
            return None
        if a:
            parts.append((c, a, d))
            if d != 1:
                L = lcm(L, d)
    return {c: a * (L // d) for c, a, d in parts}, L


def _scalar_row(vec: Mapping) -> dict:
    out = {}
    for c, x in vec.items():
        x = Scalar.coerce(x)
        if not x.is_zero():
            out[c] = x
    return out


class Echelon:
    """Incrementally maintained row-echelon form of a subspace.

    ``add`` inserts a vector and reports whether it enlarged the span;
    ``reduce`` returns the normal form of a vector modulo the span, which is
    supported away from the pivot columns and is therefore canonical for the
    given column order.
    """

    def __init__(self):
        self.gauss = False
        self.rows: dict[int, dict] = {}

    def _to_field(self):
        self.gauss = True
        new = {}
        for c, r in self.rows.items():
            inv = Scalar._raw(1, 0, 1) / r[c]
            new[c] = {k: Scalar._raw(x, 0, 1) * inv for k, x in r.items()}
        self.rows = new

    def _prepare(self, vec: Mapping):
        """Row in the current representation plus the factor it was scaled by."""
        if not self.gauss:
            res = _integer_row(vec)
            if res is not None:
                return res
            self._to_field()
        return _scalar_row(vec), 1

    @staticmethod
    def _int_eliminate(v: dict, col: int, r: dict) -> tuple[dict, int]:
        p = r[col]
        a = v[col]
        out = {k: p * x for k, x in v.items()}
        for k, x in r.items():
            t = a * x
            n = out.get(k, 0) - t
            if n:
                out[k] = n
            else:
                out.pop(k, None)
        g = 0
        for x in out.values():
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            out = {k: x // g for k, x in out.items()}
        else:
            g = 1
        return out, p, g

    @staticmethod
    def _field_eliminate(v: dict, col: int, r: dict) -> dict:
        a = v[col]
        out = dict(v)
        for k, x in r.items():
            n = out.get(k, ZERO) - a * x
            if n.is_zero():
                out.pop(k, None)
            else:
                out[k] = n
        return out

    # -- public ------------------------------------------------------------
    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def add(self, vec: Mapping) -> bool:
        v, _ = self._prepare(vec)
        rows = self.rows
        while v:
            c = min(v)
            r = rows.get(c)
            if r is None:
                if self.gauss:
                    inv = ONE / v[c]
                    v = {k: x * inv for k, x in v.items()}
                else:
                    g = 0
                    for x in v.values():
                        g = gcd(g, x)
                    if v[c] < 0:
                        g = -g
                    v = {k: x // g for k, x in v.items()}
                rows[c] = v
                return True
            if self.gauss:
                v = self._field_eliminate(v, c, r)
            else:
                v, _, _ = self._int_eliminate(v, c, r)
        return False

    def contains(self, vec: Mapping) -> bool:
        return not self.reduce(vec)

    def reduce(self, vec: Mapping) -> dict:
        """Normal form of ``vec`` modulo the span, as a ``{column: Scalar}`` dict."""
        v, L = self._prepare(vec)
        rows = self.rows
        # integer path: v == scale * vec (mod span)
        scale = Scalar.coerce(L)
        last = -1
        while v:
            cand = [c for c in v if c > last and c in rows]
            if not cand:
                break
            c = min(cand)
            if self.gauss:
                v = self._field_eliminate(v, c, rows[c])
            else:
                v, p, g = self._int_eliminate(v, c, rows[c])
                scale = scale * Scalar._raw(p, 0, g)
            last = c
        if self.gauss:
            return v
        inv = scale.inverse()
        return {k: Scalar._raw(x, 0, 1) * inv for k, x in v.items()}

    def basis(self) -> list[dict]:
        """The stored echelon rows as Scalar vectors (integer rows are not monic)."""
        if self.gauss:
            return [dict(self.rows[c]) for c in sorted(self.rows)]
        return [{k: Scalar._raw(x, 0, 1) for k, x in self.rows[c].items()}
                for c in sorted(self.rows)]


def rank_of(vectors: Iterable[Mapping]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return ech.rank


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a dense matrix over the Gaussian rationals."""
    rows = list(rows)
    if not rows:
        return 0
    n = len(rows[0])
    for r in rows:
        if len(r) != n:
            raise DimensionError("ragged matrix: rows have different lengths")
    return rank_of({j: x for j, x in enumerate(r) if Scalar.coerce(x)} for r in rows)


def rref(vectors: Iterable[Mapping]) -> list[dict]:
    """Reduced row-echelon basis of the span, pivots normalised to 1, sorted by pivot."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    out: dict[int, dict] = {}
    stored = dict(zip(ech.pivots, ech.basis()))
    for c in sorted(stored, reverse=True):
        row = stored[c]
        piv = row[c].inverse()
        row = {k: x * piv for k, x in row.items()}
        # clear this row's entries at later pivot columns
        for c2, r2 in out.items():
            a = row.get(c2)
            if a:
                for k, x in r2.items():
                    nv = row.get(k, ZERO) - a * x
                    if nv.is_zero():
                        row.pop(k, None)
                    else:
                        row[k] = nv
        out[c] = row
    return [out[c] for c in sorted(out)]


def kernel(images: Sequence[Mapping], offset: int | None = None) -> list[dict]:
    """Basis of ``{x : sum_i x_i * images[i] = 0}`` as sparse vectors indexed by ``i``.

    The basis is returned in reduced row-echelon form, so it is canonical.
    """
    n = len(images)
    if offset is None:
        offset = 1 + max((max(v) for v in images if v), default=-1)
    ech = Echelon()
    for i, img in enumerate(images):
        aug = dict(img)
        aug[offset + i] = ONE
        ech.add(aug)
    vecs = []
    for row in ech.basis():
        lead = min(row)
        if lead >= offset:
            vecs.append({k - offset: x for k, x in row.items()})
    return rref(vecs)


def kernel_dim(images: Sequence[Mapping]) -> int:
    return len(images) - rank_of(images)
