"""Coordinate rings of the orbit closures ``{0} = O_0 <= ... <= O_r`` inside p.

Closures are rank loci of the generic matrix on p: symmetric (SpO), general
``q x p`` (Upq), antisymmetric (OstarSp).  Their ideals are generated by
minors of size ``s'+1`` resp. principal Pfaffians of order ``2s'+2``; these
ideals are prime and generated in a single degree, so the degree-``k``
piece of the ideal is spanned by generator multiples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .dual_pairs import (
    PairSpec, invariant_dim, k_on_w, pullback_graded, pullback_monomial,
)
from .errors import ConsistencyError, RejectedInput
from .linalg import Echelon
from .poly import Poly, holomorphic_monomials
from .scalar import ONE, ZERO, Scalar

METHODS = ("ideal-rank", "evaluation", "representation-count")


def _check_stratum(spec: PairSpec, s_prime: int):
    if not 0 <= s_prime <= spec.rank:
        raise RejectedInput(f"stratum {s_prime} out of range 0..{spec.rank} for {spec}")


def generic_matrix(spec: PairSpec) -> list[list[Poly]]:
    """The matrix of coordinate functions on p, entries are linear Polys."""
    d = spec.p_dim
    rows, cols = spec.p_shape
    var = {ij: Poly.z(k + 1, d) for k, ij in enumerate(spec.p_coords)}
    zero = Poly.zero(d)
    M = [[zero] * cols for _ in range(rows)]
    for i in range(rows):
        for j in range(cols):
            if spec.case == "SpO":
                M[i][j] = var[(min(i, j), max(i, j))]
            elif spec.case == "Upq":
                M[i][j] = var[(i, j)]
            elif i < j:
                M[i][j] = var[(i, j)]
            elif i > j:
                M[i][j] = -var[(j, i)]
    return M


def det(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * det(minor)
        total = term if total is None else (total - term if j % 2 else total + term)
    return total if total is not None else M[0][0] - M[0][0]


def pfaffian(M: list[list[Poly]]) -> Poly:
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 2:
        return M[0][1]
    total = None
    keep = list(range(1, n))
    for pos, j in enumerate(keep):
        if M[0][j].is_zero():
            continue
        rest = [k for k in keep if k != j]
        sub = [[M[a][b] for b in rest] for a in rest]
        term = M[0][j] * pfaffian(sub)
        total = term if total is None else (total - term if pos % 2 else total + term)
    return total if total is not None else M[0][1] - M[0][1]


@lru_cache(maxsize=None)
def ideal_generators(spec: PairSpec, s_prime: int) -> tuple[Poly, ...]:
    """Generators of the ideal of the closure of the stratum ``s_prime``."""
    _check_stratum(spec, s_prime)
    if s_prime == spec.rank:
        return ()
    M = generic_matrix(spec)
    rows, cols = spec.p_shape
    out: list[Poly] = []
    seen = set()
    if spec.case == "OstarSp":
        size = 2 * s_prime + 2
        for idx in itertools.combinations(range(rows), size):
            g = pfaffian([[M[a][b] for b in idx] for a in idx])
            if g and g not in seen:
                seen.add(g)
                out.append(g)
    else:
        size = s_prime + 1
        for ri in itertools.combinations(range(rows), size):
            for ci in itertools.combinations(range(cols), size):
                g = det([[M[a][b] for b in ci] for a in ri])
                if g and g not in seen and -g not in seen:
                    seen.add(g)
                    out.append(g)
    return tuple(out)


def generator_degree(spec: PairSpec, s_prime: int) -> int:
    return s_prime + 1


def _hol_terms(p: Poly) -> dict:
    d = p.m
    return {k[:d]: c for k, c in p.items()}


def _mul_hol(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, ZERO) + c1 * c2
    return {k: v for k, v in out.items() if not v.is_zero()}


@dataclass
class IdealPiece:
    """Degree-``k`` piece of the ideal of a closure, in echelon form."""

    spec: PairSpec
    s_prime: int
    k: int
    monomials: list
    index: dict
    echelon: Echelon

    @property
    def rank(self) -> int:
        return self.echelon.rank

    @property
    def standard(self) -> list:
        """Monomials not at a pivot: a basis of the quotient in degree ``k``."""
        piv = set(self.echelon.pivots)
        return [e for i, e in enumerate(self.monomials) if i not in piv]

    def vector(self, terms: dict) -> dict:
        return {self.index[k]: c for k, c in terms.items()}

    def normal_form(self, terms: dict) -> dict:
        """Reduce ``{exps: coeff}`` modulo the ideal piece; returns ``{exps: coeff}``."""
        red = self.echelon.reduce(self.vector(terms))
        return {self.monomials[i]: c for i, c in red.items()}


@lru_cache(maxsize=None)
def ideal_piece(spec: PairSpec, s_prime: int, k: int) -> IdealPiece:
    if k < 0:
        raise RejectedInput("degree must be nonnegative")
    _check_stratum(spec, s_prime)
    d = spec.p_dim
    monos = holomorphic_monomials(d, k)
    index = {e: i for i, e in enumerate(monos)}
    ech = Echelon()
    g_deg = generator_degree(spec, s_prime)
    if k >= g_deg:
        mults = holomorphic_monomials(d, k - g_deg)
        for g in ideal_generators(spec, s_prime):
            gt = _hol_terms(g)
            for e in mults:
                prod = {tuple(x + y for x, y in zip(key, e)): c for key, c in gt.items()}
                ech.add({index[key]: c for key, c in prod.items()})
    return IdealPiece(spec, s_prime, k, monos, index, ech)


def n_monomials(d: int, k: int) -> int:
    from math import comb
    return comb(d + k - 1, k) if d else (1 if k == 0 else 0)


def graded_dim(spec: PairSpec, s_prime: int, k: int) -> int:
    """``dim C[closure(O_s')]_k`` from the rank of the ideal piece."""
    piece = ideal_piece(spec, s_prime, k)
    return len(piece.monomials) - piece.rank


# ---------------------------------------------------------------------------
# evaluation oracle


def _random_scalar(rng: random.Random, height: int) -> Scalar:
    re = Fraction(rng.randint(-height, height), rng.randint(1, height))
    im = Fraction(rng.randint(-height, height), rng.randint(1, height))
    return Scalar(re, im)


def _matmul(A, B):
    return [[sum((A[i][t] * B[t][j] for t in range(len(B))), ZERO)
             for j in range(len(B[0]))] for i in range(len(A))]


def random_orbit_point(spec: PairSpec, s_prime: int, rng: random.Random, height: int = 10):
    """A random point of the closure of ``O_s'`` as values of the p-coordinates."""
    rows, cols = spec.p_shape
    if s_prime == 0:
        return [ZERO] * spec.p_dim
    if spec.case == "SpO":
        A = [[_random_scalar(rng, height) for _ in range(s_prime)] for _ in range(rows)]
        At = [list(r) for r in zip(*A)]
        X = _matmul(A, At)
    elif spec.case == "Upq":
        B = [[_random_scalar(rng, height) for _ in range(s_prime)] for _ in range(rows)]
        C = [[_random_scalar(rng, height) for _ in range(cols)] for _ in range(s_prime)]
        X = _matmul(B, C)
    else:
        t = s_prime
        A = [[_random_scalar(rng, height) for _ in range(2 * t)] for _ in range(rows)]
        J = [[ZERO] * (2 * t) for _ in range(2 * t)]
        for a in range(t):
            J[a][a + t] = ONE
            J[a + t][a] = -ONE
        X = _matmul(_matmul(A, J), [list(r) for r in zip(*A)])
    return [X[i][j] for i, j in spec.p_coords]


def torus_weight(spec: PairSpec, exps: tuple[int, ...]) -> tuple[int, ...]:
    """Weight of a p-monomial under the diagonal torus of K.

    ``x_ij`` has weight ``e_i + e_j`` (SpO, OstarSp) or ``(e_i, e_j)`` on the
    row/column tori (Upq).
    """
    rows, cols = spec.p_shape
    w = [0] * (rows + cols if spec.case == "Upq" else rows)
    for (i, j), e in zip(spec.p_coords, exps):
        if e:
            w[i] += e
            w[rows + j if spec.case == "Upq" else j] += e
    return tuple(w)


def graded_dim_eval(spec: PairSpec, s_prime: int, k: int, seed: int = 0,
                    height: int = 10, patience: int = 3) -> int:
    """Rank of degree-``k`` monomials evaluated at random points of the closure.

    The closure is stable under the K-torus, so monomials of different torus
    weight are independent on it and the rank is summed over weight blocks.
    In each block points are added until ``patience`` consecutive points fail
    to raise the rank (or the block has full rank).
    """
    _check_stratum(spec, s_prime)
    if k < 0:
        raise RejectedInput("degree must be nonnegative")
    blocks: dict = {}
    for e in holomorphic_monomials(spec.p_dim, k):
        blocks.setdefault(torus_weight(spec, e), []).append(e)
    rng = random.Random(f"{spec}|{s_prime}|{k}|{seed}")
    total = 0
    for w in sorted(blocks):
        monos = blocks[w]
        ech = Echelon()
        stale = 0
        while stale < patience and ech.rank < len(monos):
            pt = random_orbit_point(spec, s_prime, rng, height)
            row = {}
            for col, e in enumerate(monos):
                v = ONE
                for idx, ex in enumerate(e):
                    if ex:
                        v = v * pt[idx] ** ex
                if v:
                    row[col] = v
            stale = 0 if ech.add(row) else stale + 1
        total += ech.rank
    return total


def restriction_kernel_dim(spec: PairSpec, s_from: int, s_to: int, k: int) -> int:
    if s_to >= s_from:
        raise RejectedInput("restriction goes from a larger stratum to a smaller one")
    diff = graded_dim(spec, s_from, k) - graded_dim(spec, s_to, k)
    if diff < 0:
        raise ConsistencyError("restriction map cannot be surjective")
    return diff


def reduced_energy_spectrum(spec: PairSpec, s_prime: int, k_max: int) -> list[tuple[int, int]]:
    """``(2k, dim of degree-k piece)``; zero-multiplicity degrees are omitted."""
    out = []
    for k in range(k_max + 1):
        mult = graded_dim(spec, s_prime, k)
        if mult:
            out.append((2 * k, mult))
    return out


# ---------------------------------------------------------------------------
# the k-action on the graded pieces


def natural_k_derivation(spec: PairSpec, X: tuple) -> list[dict]:
    """Derivation of C[p] induced by ``X`` in k on the coordinate functions.

    SpO, OstarSp: ``x -> A x + x A^T``; Upq with ``X = (A, B)``: ``x -> B x + x A^T``.
    Returned as one linear form ``{exps: coeff}`` per coordinate.
    """
    M = generic_matrix(spec)
    rows, cols = spec.p_shape
    if spec.case == "Upq":
        A, B = X
        L, R = B, A
    else:
        (A,) = X
        L, R = A, A
    L = [[Scalar.coerce(x) for x in r] for r in L]
    R = [[Scalar.coerce(x) for x in r] for r in R]
    out = []
    for i, j in spec.p_coords:
        acc = Poly.zero(spec.p_dim)
        for t in range(rows):
            if L[i][t]:
                acc = acc + M[t][j].scale(L[i][t])
        for t in range(cols):
            if R[j][t]:
                acc = acc + M[i][t].scale(R[j][t])
        out.append(_hol_terms(acc))
    return out


def _apply_p_derivation(forms: list[dict], terms: dict) -> dict:
    out: dict = {}
    for exps, c in terms.items():
        for idx, e in enumerate(exps):
            if not e:
                continue
            lst = list(exps)
            lst[idx] -= 1
            rest = tuple(lst)
            for lin, x in forms[idx].items():
                key = tuple(a + b for a, b in zip(rest, lin))
                out[key] = out.get(key, ZERO) + c * x * e
    return {k: v for k, v in out.items() if not v.is_zero()}


def transported_derivation(spec: PairSpec, X: tuple) -> list[dict]:
    """The derivation on C[p] matching the Fock symmetry of ``X``: ``-natural``."""
    return [{k: -v for k, v in f.items()} for f in natural_k_derivation(spec, X)]


def ideal_is_stable(spec: PairSpec, s_prime: int, X: tuple) -> bool:
    forms = natural_k_derivation(spec, X)
    g_deg = generator_degree(spec, s_prime)
    piece = ideal_piece(spec, s_prime, g_deg)
    for g in ideal_generators(spec, s_prime):
        img = _apply_p_derivation(forms, _hol_terms(g))
        if img and piece.normal_form(img):
            return False
    return True


@dataclass
class ReducedAction:
    spec: PairSpec
    s_prime: int
    k: int
    basis: list  # standard monomials of the quotient
    matrix: list  # matrix[r][c]: coefficient of basis[r] in X.basis[c]


def reduced_k_action(spec: PairSpec, s_prime: int, X: tuple, k: int) -> ReducedAction:
    """Matrix of the infinitesimal symmetry of ``X`` on ``C[closure(O_s')]_k``.

    The derivation is the one transported from the Fock space through the
    Hilbert map (``x -> -(A x + x A^T)``), reduced modulo the ideal piece.
    """
    if not ideal_is_stable(spec, s_prime, X):
        raise ConsistencyError("ideal is not stable under the k-action")
    forms = transported_derivation(spec, X)
    piece = ideal_piece(spec, s_prime, k)
    basis = piece.standard
    pos = {e: i for i, e in enumerate(basis)}
    n = len(basis)
    mat = [[ZERO] * n for _ in range(n)]
    for c, e in enumerate(basis):
        img = piece.normal_form(_apply_p_derivation(forms, {e: ONE}))
        for key, v in img.items():
            mat[pos[key]][c] = v
    return ReducedAction(spec, s_prime, k, basis, mat)


def restriction_matrix(spec: PairSpec, s_from: int, s_to: int, k: int) -> list[list[Scalar]]:
    """Matrix of ``C[closure(O_from)]_k -> C[closure(O_to)]_k`` on standard monomials."""
    if s_to > s_from:
        raise RejectedInput("restriction goes from a larger stratum to a smaller one")
    src = ideal_piece(spec, s_from, k)
    dst = ideal_piece(spec, s_to, k)
    sb, db = src.standard, dst.standard
    pos = {e: i for i, e in enumerate(db)}
    mat = [[ZERO] * len(sb) for _ in db]
    for c, e in enumerate(sb):
        for key, v in dst.normal_form({e: ONE}).items():
            mat[pos[key]][c] = v
    return mat


def matmul(A, B):
    if not A or not B:
        return [[ZERO] * (len(B[0]) if B else 0) for _ in A]
    return [[sum((A[i][t] * B[t][j] for t in range(len(B))), ZERO)
             for j in range(len(B[0]))] for i in range(len(A))]


def transported_fock_action(spec: PairSpec, X: tuple, k: int) -> ReducedAction:
    """The k-action computed on the Fock side and pulled back to C[closure(O_s)]_k.

    For each standard monomial ``b`` the Hilbert image ``P(b)`` is acted on by
    the quantum symmetry of ``mu^X`` and the result is written back as ``P(y)``.
    """
    from .fock import FockState, momentum_u, symmetry

    s = spec.s
    piece = ideal_piece(spec, s, k)
    basis = piece.standard
    m = spec.m
    data = pullback_graded(spec, k)
    w_pos = {key: i for i, key in enumerate(data.w_monomials)}
    n_basis = len(basis)

    # solve in the span of P(b), b standard; tracking columns come after W-columns
    offset = 10 ** 9
    ech = Echelon()
    images = []
    for c, e in enumerate(basis):
        img = pullback_monomial(spec, e)
        images.append(img)
        vec = {w_pos[key]: v for key, v in img.items()}
        vec[offset + c] = ONE
        ech.add(vec)
    if ech.rank != n_basis:
        raise ConsistencyError("Hilbert map is not injective on the quotient")
    mu = momentum_u(k_on_w(spec, X))
    mat = [[ZERO] * n_basis for _ in range(n_basis)]
    for c, img in enumerate(images):
        state = FockState(Poly.holomorphic(m, img))
        out = symmetry(mu, state).phi
        vec = {}
        for key, v in out.items():
            hk = key[:m]
            if hk not in w_pos:
                w_pos[hk] = len(w_pos)
            vec[w_pos[hk]] = v
        red = ech.reduce(vec)
        for col, v in red.items():
            if col < offset:
                raise ConsistencyError("symmetry left the invariant subspace")
            mat[col - offset][c] = -v
    return ReducedAction(spec, s, k, basis, mat)


# ---------------------------------------------------------------------------
# tables


@dataclass
class GradedTable:
    spec: PairSpec
    entries: dict = field(default_factory=dict)  # (s', k, method) -> dim

    def set(self, s_prime: int, k: int, method: str, dim: int):
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        self.entries[(s_prime, k, method)] = dim

    def get(self, s_prime: int, k: int, method: str = "ideal-rank") -> int:
        return self.entries[(s_prime, k, method)]

    def rows(self) -> list[dict]:
        return [
            {"case": self.spec.case, "params": str(self.spec), "stratum": s, "degree": k,
             "dim": d, "method": meth}
            for (s, k, meth), d in sorted(self.entries.items())
        ]

    def check_monotone(self, method: str = "ideal-rank") -> bool:
        by = {}
        for (s, k, meth), d in self.entries.items():
            if meth == method:
                by[(s, k)] = d
        for (s, k), d in by.items():
            lower = by.get((s - 1, k))
            if lower is not None and lower > d:
                return False
        return True


def graded_table(spec: PairSpec, k_max: int, strata=None, methods=("ideal-rank",),
                 seed: int = 0, height: int = 10) -> GradedTable:
    from .hw_reps import stratum_rep_count

    strata = range(spec.rank + 1) if strata is None else strata
    table = GradedTable(spec)
    for s in strata:
        for k in range(k_max + 1):
            for meth in methods:
                if meth == "ideal-rank":
                    v = graded_dim(spec, s, k)
                elif meth == "evaluation":
                    v = graded_dim_eval(spec, s, k, seed=seed, height=height)
                else:
                    v = stratum_rep_count(spec, s, k)
                table.set(s, k, meth, v)
    return table
