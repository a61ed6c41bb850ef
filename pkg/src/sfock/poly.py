"""Sparse polynomials in paired variables ``z_1..z_m, zb_1..zb_m``.

``z_j`` and its conjugate ``zb_j`` are independent formal variables.  An
exponent key is a flat tuple of length ``2m``: the first ``m`` entries are
the exponents of the holomorphic variables, the last ``m`` those of the
antiholomorphic ones.  Coefficients are :class:`~sfock.scalar.Scalar`.
"""

from __future__ import annotations

import json
import re
from operator import add
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import DimensionError
from .scalar import I, ONE, ZERO, Scalar


class ExpVec(NamedTuple):
    hol: tuple[int, ...]
    antihol: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.hol) + sum(self.antihol)

    def key(self) -> tuple[int, ...]:
        return self.hol + self.antihol

    @classmethod
    def from_key(cls, key: Sequence[int]) -> "ExpVec":
        m = len(key) // 2
        return cls(tuple(key[:m]), tuple(key[m:]))


def _sort_key(key):
    return (sum(key), key)


class Poly:
    """Immutable sparse polynomial with Gaussian-rational coefficients."""

    __slots__ = ("m", "_terms", "_hash")

    def __init__(self, m: int, terms: Mapping | None = None):
        self.m = m
        clean = {}
        if terms:
            n = 2 * m
            for k, c in terms.items():
                if isinstance(k, ExpVec):
                    k = k.key()
                else:
                    k = tuple(k)
                if len(k) != n:
                    raise DimensionError(f"exponent {k} does not match m={m}")
                c = Scalar.coerce(c)
                if not c.is_zero():
                    clean[k] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, m: int, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p.m = m
        p._terms = terms
        p._hash = None
        return p

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, m: int) -> "Poly":
        return cls._from_clean(m, {})

    @classmethod
    def const(cls, m: int, c) -> "Poly":
        c = Scalar.coerce(c)
        if c.is_zero():
            return cls.zero(m)
        return cls._from_clean(m, {(0,) * (2 * m): c})

    @classmethod
    def z(cls, j: int, m: int) -> "Poly":
        """The holomorphic coordinate ``z_j`` (1-based)."""
        return cls.monomial(m, hol={j: 1})

    @classmethod
    def zb(cls, j: int, m: int) -> "Poly":
        """The antiholomorphic coordinate ``zb_j`` (1-based)."""
        return cls.monomial(m, antihol={j: 1})

    @classmethod
    def monomial(cls, m: int, hol: Mapping[int, int] | Sequence[int] = (),
                 antihol: Mapping[int, int] | Sequence[int] = (), coeff=1) -> "Poly":
        key = [0] * (2 * m)
        for off, exps in ((0, hol), (m, antihol)):
            if isinstance(exps, Mapping):
                for j, e in exps.items():
                    if not 1 <= j <= m:
                        raise DimensionError(f"variable index {j} out of range 1..{m}")
                    key[off + j - 1] += e
            else:
                if exps and len(exps) != m:
                    raise DimensionError("exponent vector length must equal m")
                for j, e in enumerate(exps):
                    key[off + j] += e
        return cls(m, {tuple(key): coeff})

    @classmethod
    def holomorphic(cls, m: int, terms: Mapping[tuple[int, ...], object]) -> "Poly":
        """Build from a map ``hol-exponent tuple -> coefficient``."""
        pad = (0,) * m
        return cls(m, {tuple(k) + pad: c for k, c in terms.items()})

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self) -> list:
        """Terms in canonical graded-lexicographic order, highest first."""
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]), reverse=True)

    def coeff(self, key) -> Scalar:
        if isinstance(key, ExpVec):
            key = key.key()
        return self._terms.get(tuple(key), ZERO)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        return max((sum(k) for k in self._terms), default=-1)

    def hol_degree(self) -> int:
        m = self.m
        return max((sum(k[:m]) for k in self._terms), default=-1)

    def antihol_degree(self) -> int:
        m = self.m
        return max((sum(k[m:]) for k in self._terms), default=-1)

    def is_holomorphic(self) -> bool:
        m = self.m
        return all(not any(k[m:]) for k in self._terms)

    def is_homogeneous(self, d: int) -> bool:
        return all(sum(k) == d for k in self._terms)

    def conj(self) -> "Poly":
        """Formal conjugate: swap ``z <-> zb`` and conjugate coefficients."""
        m = self.m
        return Poly._from_clean(m, {k[m:] + k[:m]: c.conj() for k, c in self._terms.items()})

    def is_real(self) -> bool:
        return self == self.conj()

    # -- ring operations ---------------------------------------------------
    def _check(self, other: "Poly"):
        if self.m != other.m:
            raise DimensionError(f"variable counts differ: {self.m} != {other.m}")

    def _lift(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        try:
            return Poly.const(self.m, other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._terms)
        for k, c in o._terms.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v.is_zero():
                    del out[k]
                else:
                    out[k] = v
        return Poly._from_clean(self.m, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_clean(self.m, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def scale(self, c) -> "Poly":
        c = Scalar.coerce(c)
        if c.is_zero():
            return Poly.zero(self.m)
        return Poly._from_clean(self.m, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        if len(self._terms) > len(other._terms):
            self, other = other, self
        if len(self._terms) == 1:
            ((k1, c1),) = self._terms.items()
            out = {}
            for k2, c2 in other._terms.items():
                out[tuple(map(add, k1, k2))] = c1 * c2
            return Poly._from_clean(self.m, out)
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = tuple(map(add, k1, k2))
                v = out.get(k)
                out[k] = c1 * c2 if v is None else v + c1 * c2
        return Poly._from_clean(self.m, {k: c for k, c in out.items() if not c.is_zero()})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.m == other.m and self._terms == other._terms
        try:
            return self == Poly.const(self.m, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self._terms.items())))
        return self._hash

    # -- text / json -------------------------------------------------------
    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Poly(m={self.m}, '{to_text(self)}')"


# ---------------------------------------------------------------------------
# calculus


def arith(p: Poly, q: Poly, op: str) -> Poly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def _diff_index(p: Poly, idx: int) -> Poly:
    out = {}
    for k, c in p._terms.items():
        e = k[idx]
        if e:
            nk = k[:idx] + (e - 1,) + k[idx + 1:]
            out[nk] = c * e
    return Poly._from_clean(p.m, out)


def diff(p: Poly, j: int, kind: str = "hol") -> Poly:
    """Partial derivative in ``z_j`` (``kind='hol'``) or ``zb_j`` (``'antihol'``), 1-based."""
    if not 1 <= j <= p.m:
        raise DimensionError(f"variable index {j} out of range 1..{p.m}")
    if kind == "hol":
        return _diff_index(p, j - 1)
    if kind == "antihol":
        return _diff_index(p, p.m + j - 1)
    raise ValueError(f"kind must be 'hol' or 'antihol', got {kind!r}")


_MINUS_2I = Scalar._raw(0, -2, 1)


def poisson(p: Poly, q: Poly) -> Poly:
    """``{p, q} = -2i * sum_j (dp/dz_j dq/dzb_j - dp/dzb_j dq/dz_j)``."""
    if p.m != q.m:
        raise DimensionError(f"variable counts differ: {p.m} != {q.m}")
    m = p.m
    total = Poly.zero(m)
    if not p or not q:
        return total
    for j in range(m):
        dpz = _diff_index(p, j)
        dpb = _diff_index(p, m + j)
        if dpz:
            dqb = _diff_index(q, m + j)
            if dqb:
                total = total + dpz * dqb
        if dpb:
            dqz = _diff_index(q, j)
            if dqz:
                total = total - dpb * dqz
    return total.scale(_MINUS_2I)


def evaluate(p: Poly, point: Sequence[tuple]) -> Scalar:
    """Substitute ``(z_j, zb_j)`` pairs; the caller decides whether ``zb_j = conj(z_j)``."""
    if len(point) != p.m:
        raise DimensionError(f"point has {len(point)} entries, expected {p.m}")
    vals = [Scalar.coerce(z) for z, _ in point] + [Scalar.coerce(w) for _, w in point]
    total = ZERO
    cache: dict = {}
    for k, c in p._terms.items():
        t = c
        for idx, e in enumerate(k):
            if e:
                pw = cache.get((idx, e))
                if pw is None:
                    pw = cache[(idx, e)] = vals[idx] ** e
                t = t * pw
        total = total + t
    return total


# ---------------------------------------------------------------------------
# serialization

_VAR_RE = re.compile(r"^(zb|z)(\d+)(?:\^(\d+))?$")


def _monomial_text(key, m) -> str:
    parts = []
    for idx, e in enumerate(key):
        if not e:
            continue
        name = f"z{idx + 1}" if idx < m else f"zb{idx - m + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def to_text(p: Poly) -> str:
    """Canonical text ``coeff * z1^a*...*zb1^c*... + ...``; ``0`` for the zero polynomial."""
    if not p:
        return "0"
    out = []
    for k, c in p.sorted_terms():
        mono = _monomial_text(k, p.m)
        out.append(f"{c} * {mono}" if mono else f"{c}")
    return " + ".join(out)


def _split_terms(text: str) -> list[str]:
    """Split on ``' + '`` outside parentheses."""
    pieces, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and text.startswith(" + ", i):
            pieces.append(text[start:i])
            start = i + 3
            i += 3
            continue
        i += 1
    pieces.append(text[start:])
    return [p.strip() for p in pieces if p.strip()]


def from_text(text: str, m: int) -> Poly:
    """Inverse of :func:`to_text`.  Also accepts bare monomials like ``z1*zb2``."""
    text = text.strip()
    if text == "0":
        return Poly.zero(m)
    acc: dict = {}
    for term in _split_terms(text):
        factors = [f.strip() for f in term.split("*")]
        coeff = ONE
        key = [0] * (2 * m)
        for f in factors:
            if not f:
                raise ValueError(f"malformed term {term!r}")
            mv = _VAR_RE.match(f)
            if mv:
                name, j, e = mv.group(1), int(mv.group(2)), int(mv.group(3) or 1)
                if not 1 <= j <= m:
                    raise DimensionError(f"variable {f} out of range for m={m}")
                key[(j - 1) if name == "z" else (m + j - 1)] += e
            else:
                coeff = coeff * Scalar.parse(f)
        k = tuple(key)
        acc[k] = acc.get(k, ZERO) + coeff
    return Poly(m, acc)


def to_json(p: Poly) -> dict:
    m = p.m
    return {
        "m": m,
        "terms": [
            {"hol": list(k[:m]), "antihol": list(k[m:]), "coeff": c.to_json()}
            for k, c in p.sorted_terms()
        ],
    }


def from_json(data) -> Poly:
    if isinstance(data, str):
        data = json.loads(data)
    m = data["m"]
    terms = {}
    for t in data["terms"]:
        k = tuple(t["hol"]) + tuple(t["antihol"])
        terms[k] = terms.get(k, ZERO) + Scalar.from_json(t["coeff"])
    return Poly(m, terms)


def holomorphic_monomials(m: int, d: int) -> list[tuple[int, ...]]:
    """All exponent tuples of length ``m`` with total degree ``d``, in lex order (descending)."""
    out: list[tuple[int, ...]] = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, slots - 1)

    if m == 0:
        return [()] if d == 0 else []
    rec((), d, m)
    return out


__all__ = [
    "ExpVec", "Poly", "arith", "diff", "poisson", "evaluate", "to_text", "from_text",
    "to_json", "from_json", "holomorphic_monomials", "I",
]
