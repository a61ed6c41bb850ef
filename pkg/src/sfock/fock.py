"""The unreduced Fock model on ``W = C^m``.

A polarized state ``phi(z) * exp(-z.zb/4)`` is stored as its holomorphic
polynomial ``phi``; the Gaussian factor ``psi0`` is never evaluated.
Operators act on :class:`WeightedPoly`, a polynomial times ``psi0``, whose
derivatives are again of that form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random
from functools import lru_cache
from math import factorial, lcm
from operator import add
from typing import Sequence

from .errors import ConsistencyError, DimensionError, RejectedInput
from .poly import Poly, _diff_index, holomorphic_monomials, poisson
from .scalar import I, ONE, ZERO, Scalar

_QUARTER = Scalar(1, 0) / 4
_HALF = Scalar(1, 0) / 2
_MINUS_I = -I
_MINUS_2I = Scalar._raw(0, -2, 1)


@dataclass(frozen=True)
class FockState:
    """``phi * psi0`` with ``phi`` a holomorphic polynomial in ``m`` variables."""

    phi: Poly

    def __post_init__(self):
        if not self.phi.is_holomorphic():
            raise RejectedInput("a Fock state needs a holomorphic weight polynomial")

    @property
    def m(self) -> int:
        return self.phi.m

    @classmethod
    def ground(cls, m: int) -> "FockState":
        return cls(Poly.const(m, 1))

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1) -> "FockState":
        return cls(Poly.monomial(len(exps), hol=tuple(exps), coeff=coeff))

    @classmethod
    def zero(cls, m: int) -> "FockState":
        return cls(Poly.zero(m))

    def is_zero(self) -> bool:
        return self.phi.is_zero()

    def __add__(self, other: "FockState") -> "FockState":
        return FockState(self.phi + other.phi)

    def __sub__(self, other: "FockState") -> "FockState":
        return FockState(self.phi - other.phi)

    def scale(self, c) -> "FockState":
        return FockState(self.phi.scale(c))

    def __str__(self):
        return str(self.phi)


@dataclass(frozen=True)
class Observable:
    """A polynomial classical observable ``f(z, zb)``."""

    f: Poly

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def is_real(self) -> bool:
        return self.f.is_real()

    def __str__(self):
        return str(self.f)


@dataclass(frozen=True)
class WeightedPoly:
    """``p(z, zb) * psi0``; closed under differentiation."""

    p: Poly

    def d_hol(self, j: int) -> Poly:
        """Weight polynomial of ``d(p psi0)/dz_j`` (0-based ``j``)."""
        m = self.p.m
        return _diff_index(self.p, j) - self.p * Poly.zb(j + 1, m).scale(_QUARTER)

    def d_antihol(self, j: int) -> Poly:
        """Weight polynomial of ``d(p psi0)/dzb_j`` (0-based ``j``)."""
        m = self.p.m
        return _diff_index(self.p, m + j) - self.p * Poly.z(j + 1, m).scale(_QUARTER)

    def bracket_with(self, f: Poly) -> Poly:
        """Weight polynomial of ``{f, p psi0}``.

        ``-2i sum_j (f_{z_j} d_antihol(j) - f_{zb_j} d_hol(j))``, accumulated
        term by term as Gaussian integers over the common denominator
        ``4 * lcm(f) * lcm(p)``.
        """
        m = f.m
        f_int, lf = _integral_terms(f)
        p_int, lp = _integral_terms(self.p)
        out: dict = {}
        for a, (fa, fb) in f_int:
            # the -p*z/4 and -p*zb/4 parts all land on a + b with total weight
            # (hol degree - antihol degree) of the f-term
            weight = sum(a[:m]) - sum(a[m:])
            derivs = []
            for idx in range(2 * m):
                e = a[idx]
                if e:
                    lowered = list(a)
                    lowered[idx] -= 1
                    sign = e if idx < m else -e
                    derivs.append((idx + m if idx < m else idx - m, tuple(lowered), sign))
            for b, (pa, pb) in p_int:
                ra, rb = fa * pa - fb * pb, fa * pb + fb * pa
                if weight:
                    key = tuple(map(add, a, b))
                    va, vb = out.get(key, (0, 0))
                    out[key] = (va - weight * ra, vb - weight * rb)
                for partner, lowered, sign in derivs:
                    bp = b[partner]
                    if bp:
                        key = list(map(add, lowered, b))
                        key[partner] -= 1
                        key = tuple(key)
                        t = 4 * bp * sign
                        va, vb = out.get(key, (0, 0))
                        out[key] = (va + t * ra, vb + t * rb)
        den = 4 * lf * lp
        # multiply by -2i: (x + iy)(-2i) = 2y - 2ix
        terms = {k: Scalar._raw(2 * y, -2 * x, den) for k, (x, y) in out.items() if x or y}
        return Poly._from_clean(m, terms)


def _integral_terms(p: Poly):
    """Terms of ``p`` as ``(key, (re, im))`` Gaussian integers, and the common denominator."""
    L = 1
    for _, c in p.items():
        L = lcm(L, c.parts[2])
    out = []
    for k, c in p.items():
        a, b, d = c.parts
        q = L // d
        out.append((k, (a * q, b * q)))
    return out, L


def _as_poly(f) -> Poly:
    return f.f if isinstance(f, Observable) else f


def energy(m: int) -> Observable:
    """``f_E = sum_j z_j zb_j / 2``."""
    f = Poly.zero(m)
    for j in range(1, m + 1):
        f = f + Poly.monomial(m, hol={j: 1}, antihol={j: 1}, coeff=_HALF)
    return Observable(f)


def is_quantizable(f) -> bool:
    """``{z_k, {z_j, f}} = 0`` for all ``j, k``."""
    return _quantizable(_as_poly(f))


@lru_cache(maxsize=4096)
def _quantizable(f: Poly) -> bool:
    m = f.m
    for j in range(1, m + 1):
        inner = poisson(Poly.z(j, m), f)
        if not inner:
            continue
        for k in range(1, m + 1):
            if poisson(Poly.z(k, m), inner):
                return False
    return True


def theta_df(f) -> Poly:
    """Poisson potential applied to ``df``: ``sum_j f_{z_j} z_j/2 + f_{zb_j} zb_j/2``."""
    f = _as_poly(f)
    m = f.m
    out = {}
    for k, c in f.items():
        deg = sum(k)
        if deg:
            out[k] = c * Scalar._raw(deg, 0, 2)
    return Poly(m, out)


def quantize(f, s: FockState) -> FockState:
    """``f^ psi = -i {f, psi} + (f - theta(df)) psi``."""
    f = _as_poly(f)
    if f.m != s.m:
        raise DimensionError(f"observable has m={f.m}, state has m={s.m}")
    if not is_quantizable(f):
        raise RejectedInput(f"observable is not quantizable: {f}")
    w = WeightedPoly(s.phi)
    out = w.bracket_with(f).scale(_MINUS_I) + (f - theta_df(f)) * s.phi
    if not out.is_holomorphic():
        raise ConsistencyError(f"quantized state left the polarized space: {out}")
    return FockState(out)


def symmetry(f, s: FockState) -> FockState:
    """Infinitesimal quantum symmetry ``i * f^``."""
    return quantize(f, s).scale(I)


def inner(s: FockState, t: FockState) -> Scalar:
    """``<phi psi0, phi' psi0>``; monomials are orthogonal with ``|z^a|^2 = prod 2^a_j a_j!``."""
    if s.m != t.m:
        raise DimensionError(f"states have m={s.m} and m={t.m}")
    total = ZERO
    tt = t.phi._terms
    for k, c in s.phi.items():
        d = tt.get(k)
        if d is None:
            continue
        norm = 1
        for e in k[: s.m]:
            norm *= (2 ** e) * factorial(e)
        total = total + c * d.conj() * norm
    return total


def _matrix(X, m: int | None = None) -> list[list[Scalar]]:
    rows = [[Scalar.coerce(x) for x in row] for row in X]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DimensionError("matrix must be square")
    if m is not None and n != m:
        raise DimensionError(f"matrix must be {m}x{m}")
    return rows


def is_anti_hermitian(X) -> bool:
    rows = _matrix(X)
    n = len(rows)
    return all((rows[j][k] + rows[k][j].conj()).is_zero() for j in range(n) for k in range(n))


def momentum_u(X) -> Observable:
    """``mu^X = (i/2) sum_{j,k} x_jk zb_j z_k`` for anti-hermitian ``X``."""
    rows = _matrix(X)
    if not is_anti_hermitian(rows):
        raise RejectedInput("X must be anti-hermitian")
    m = len(rows)
    half_i = I * _HALF
    terms = {}
    for j in range(m):
        for k in range(m):
            x = rows[j][k]
            if x:
                key = [0] * (2 * m)
                key[k] += 1
                key[m + j] += 1
                key = tuple(key)
                terms[key] = terms.get(key, ZERO) + x * half_i
    return Observable(Poly(m, terms))


def dirac_defect(f, g, s: FockState, *, bracket_sign: int = 1) -> FockState:
    """``{f,g}^ s - i (f^ g^ - g^ f^) s``; zero whenever the Dirac condition holds.

    ``bracket_sign=-1`` flips the classical bracket and exists only as a
    mutation canary for the self-test.
    """
    f = _as_poly(f)
    g = _as_poly(g)
    if not (is_quantizable(f) and is_quantizable(g)):
        raise RejectedInput("both observables must be quantizable")
    fg = poisson(f, g).scale(bracket_sign)
    lhs = quantize(fg, s)
    comm = quantize(f, quantize(g, s)) - quantize(g, quantize(f, s))
    return lhs - comm.scale(I)


def monomial_states(m: int, max_degree: int, min_degree: int = 0) -> list[FockState]:
    return [FockState.monomial(e) for d in range(min_degree, max_degree + 1)
            for e in holomorphic_monomials(m, d)]


def operator_matrix(op, m: int, degree: int) -> list[list[Scalar]]:
    """Matrix of a degree-preserving operator on the degree-``degree`` monomial basis.

    Column ``c`` holds the coordinates of ``op(basis[c])``.
    """
    basis = holomorphic_monomials(m, degree)
    index = {e: i for i, e in enumerate(basis)}
    pad = (0,) * m
    cols = []
    for e in basis:
        out = op(FockState.monomial(e)).phi
        col = [ZERO] * len(basis)
        for k, c in out.items():
            if k[m:] != pad or k[:m] not in index:
                raise ConsistencyError("operator does not preserve the degree")
            col[index[k[:m]]] = c
        cols.append(col)
    return [[cols[c][r] for c in range(len(basis))] for r in range(len(basis))]


def random_quantizable(m: int, rng: random.Random, height: int = 5, max_degree: int = 2) -> Observable:
    """Random observable of degree <= 2 that is at most linear in ``zb``.

    Terms: constants, ``z_j``, ``zb_j``, ``z_j z_k`` and ``zb_j z_k``; each is
    kept with probability 1/2 and gets a Gaussian-rational coefficient.
    """
    def coeff():
        return Scalar(Fraction(rng.randint(-height, height), rng.randint(1, height)),
                      Fraction(rng.randint(-height, height), rng.randint(1, height)))

    shapes = [((), ())]
    if max_degree >= 1:
        shapes += [((j,), ()) for j in range(m)] + [((), (j,)) for j in range(m)]
    if max_degree >= 2:
        shapes += [((j, k), ()) for j in range(m) for k in range(j, m)]
        shapes += [((k,), (j,)) for j in range(m) for k in range(m)]
    terms = {}
    for hol, anti in shapes:
        if rng.random() < 0.5:
            continue
        key = [0] * (2 * m)
        for j in hol:
            key[j] += 1
        for j in anti:
            key[m + j] += 1
        c = coeff()
        if c:
            terms[tuple(key)] = c
    return Observable(Poly(m, terms))
