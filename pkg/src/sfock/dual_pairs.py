"""The three basic dual pairs and the invariant pieces of the Fock space.

W-models (holomorphic coordinates, rows carry the compact group ``H``)::

    SpO      z[a,i]      a < s,  i < l          H = O(s) on the row index
    Upq      u[a,j], v[a,i]  a < s, j < p, i < q    H = U(s), standard on u, conjugate on v
    OstarSp  z[a,i]      a < 2s, i < n          H = Sp(s) preserving J = [[0, I], [-I, 0]]

Invariance under the identity component is computed as the common kernel
of the Lie-algebra derivations; for ``O(s)`` one reflection is added.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

from .errors import ConsistencyError, RejectedInput
from .linalg import Echelon, kernel
from .poly import Poly, holomorphic_monomials
from .scalar import I, ONE, ZERO, Scalar

CASES = ("SpO", "Upq", "OstarSp")

_CLI_NAMES = {"sp-o": "SpO", "u-pq": "Upq", "ostar-sp": "OstarSp"}
_CLI_PARAMS = {"SpO": ("l", "s"), "Upq": ("p", "q", "s"), "OstarSp": ("n", "s")}


@dataclass(frozen=True)
class PairSpec:
    case: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.case not in CASES:
            raise RejectedInput(f"unknown dual-pair case {self.case!r}")
        names = _CLI_PARAMS[self.case]
        if len(self.params) != len(names):
            raise RejectedInput(f"{self.case} takes parameters {names}")
        if any((not isinstance(x, int)) or x < 0 for x in self.params):
            raise RejectedInput("parameters must be nonnegative integers")
        if self.case == "SpO":
            l, s = self.params
            ok = l >= 1 and s <= l
        elif self.case == "Upq":
            p, q, s = self.params
            ok = q >= 1 and s <= q <= p
        else:
            n, s = self.params
            ok = n >= 2 and s <= n // 2
        if not ok:
            raise RejectedInput(f"invalid parameters for {self.case}: {self.params}")

    # -- constructors ------------------------------------------------------
    @classmethod
    def sp_o(cls, l: int, s: int) -> "PairSpec":
        return cls("SpO", (l, s))

    @classmethod
    def u_pq(cls, p: int, q: int, s: int) -> "PairSpec":
        return cls("Upq", (p, q, s))

    @classmethod
    def ostar_sp(cls, n: int, s: int) -> "PairSpec":
        return cls("OstarSp", (n, s))

    @classmethod
    def parse(cls, text: str) -> "PairSpec":
        """Parse ``sp-o:l=3,s=2``, ``u-pq:p=2,q=2,s=1`` or ``ostar-sp:n=4,s=1``."""
        m = re.fullmatch(r"\s*([a-z-]+)\s*:\s*(.*?)\s*", text)
        if not m or m.group(1) not in _CLI_NAMES:
            raise RejectedInput(f"cannot parse pair spec {text!r}")
        case = _CLI_NAMES[m.group(1)]
        values = {}
        for item in filter(None, (x.strip() for x in m.group(2).split(","))):
            key, _, val = item.partition("=")
            try:
                values[key.strip()] = int(val)
            except ValueError:
                raise RejectedInput(f"bad parameter {item!r}") from None
        names = _CLI_PARAMS[case]
        if set(values) != set(names):
            raise RejectedInput(f"{m.group(1)} needs exactly {', '.join(names)}")
        return cls(case, tuple(values[k] for k in names))

    def __str__(self):
        cli = {v: k for k, v in _CLI_NAMES.items()}[self.case]
        names = _CLI_PARAMS[self.case]
        return f"{cli}:" + ",".join(f"{k}={v}" for k, v in zip(names, self.params))

    def with_s(self, s: int) -> "PairSpec":
        return PairSpec(self.case, self.params[:-1] + (s,))

    # -- derived quantities ------------------------------------------------
    @property
    def s(self) -> int:
        return self.params[-1]

    @property
    def rank(self) -> int:
        """Real rank ``r`` of ``G``: ``l``, ``q`` or ``floor(n/2)``."""
        if self.case == "SpO":
            return self.params[0]
        if self.case == "Upq":
            return self.params[1]
        return self.params[0] // 2

    @property
    def m(self) -> int:
        """Number of complex coordinates of W in the model used here."""
        if self.case == "SpO":
            l, s = self.params
            return s * l
        if self.case == "Upq":
            p, q, s = self.params
            return s * (p + q)
        n, s = self.params
        return 2 * s * n

    @property
    def p_dim(self) -> int:
        if self.case == "SpO":
            l = self.params[0]
            return l * (l + 1) // 2
        if self.case == "Upq":
            return self.params[0] * self.params[1]
        n = self.params[0]
        return n * (n - 1) // 2

    @property
    def p_shape(self) -> tuple[int, int]:
        """Shape of the generic matrix on p: ``l x l``, ``q x p`` or ``n x n``."""
        if self.case == "SpO":
            return (self.params[0], self.params[0])
        if self.case == "Upq":
            return (self.params[1], self.params[0])
        return (self.params[0], self.params[0])

    @cached_property
    def p_coords(self) -> tuple[tuple[int, int], ...]:
        """0-based index pairs of the coordinates on p, in variable order."""
        rows, cols = self.p_shape
        if self.case == "SpO":
            return tuple((i, j) for i in range(rows) for j in range(i, cols))
        if self.case == "Upq":
            return tuple((i, j) for i in range(rows) for j in range(cols))
        return tuple((i, j) for i in range(rows) for j in range(i + 1, cols))

    def p_label(self, idx: int) -> str:
        i, j = self.p_coords[idx]
        return f"x{i + 1}{j + 1}" if max(self.p_shape) < 10 else f"x{i + 1}_{j + 1}"

    @cached_property
    def w_layout(self) -> tuple[tuple[str, int, int], ...]:
        """``(block, row, column)`` for every W-coordinate, in variable order.

        ``block`` is ``'z'`` except in case Upq where it is ``'u'`` or ``'v'``.
        ``column`` is a global column index used for the K-action.
        """
        if self.case == "SpO":
            l, s = self.params
            return tuple(("z", a, i) for a in range(s) for i in range(l))
        if self.case == "Upq":
            p, q, s = self.params
            return tuple(("u", a, j) for a in range(s) for j in range(p)) + \
                tuple(("v", a, p + i) for a in range(s) for i in range(q))
        n, s = self.params
        return tuple(("z", a, i) for a in range(2 * s) for i in range(n))

    @cached_property
    def w_index(self) -> dict:
        return {(blk, a, c): idx for idx, (blk, a, c) in enumerate(self.w_layout)}

    @property
    def n_columns(self) -> int:
        if self.case == "Upq":
            return self.params[0] + self.params[1]
        return self.params[0]

    def w_var_name(self, idx: int) -> str:
        blk, a, c = self.w_layout[idx]
        if self.case == "Upq" and blk == "v":
            c -= self.params[0]
        return f"{blk}[{a + 1},{c + 1}]"


def w_model(spec: PairSpec) -> dict:
    """Human-readable description of W and the H-action."""
    if spec.case == "SpO":
        group, action = f"O({spec.s})", "standard real representation on the row index"
    elif spec.case == "Upq":
        group, action = f"U({spec.s})", "standard on u, conjugate on v (row index)"
    else:
        group, action = f"Sp({spec.s})", "standard 2s-dim representation preserving J"
    return {
        "spec": str(spec),
        "m": spec.m,
        "real_rank": spec.rank,
        "p_dim": spec.p_dim,
        "H": group,
        "action": action,
        "variables": [spec.w_var_name(i) for i in range(spec.m)],
        "generators": len(h_generators(spec)),
        "has_reflection": reflection(spec) is not None,
    }


# ---------------------------------------------------------------------------
# H generators as linear maps on the W-coordinates


def _elementary(n: int, a: int, b: int, c=1) -> list[list[Scalar]]:
    M = [[ZERO] * n for _ in range(n)]
    M[a][b] = Scalar.coerce(c)
    return M


def _add(A, B):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(A, B)]


def _u_basis(n: int) -> list[list[list[Scalar]]]:
    """Anti-hermitian basis ``i E_aa, E_ab - E_ba, i(E_ab + E_ba)`` of u(n)."""
    out = [_elementary(n, a, a, I) for a in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            out.append(_add(_elementary(n, a, b, 1), _elementary(n, b, a, -1)))
            out.append(_add(_elementary(n, a, b, I), _elementary(n, b, a, I)))
    return out


def _o_basis(n: int, flip: bool = False):
    sg = 1 if flip else -1
    return [_add(_elementary(n, a, b, 1), _elementary(n, b, a, sg))
            for a in range(n) for b in range(a + 1, n)]


def _sp_basis(s: int, flip: bool = False):
    """Basis of sp(2s, C) as ``[[B, C], [D, -B^T]]`` with ``C, D`` symmetric.

    ``flip`` makes ``C, D`` antisymmetric instead, which gives o(2s) in a split
    form (mutation canary only).
    """
    n = 2 * s
    sg = -1 if flip else 1
    out = []
    for a in range(s):
        for b in range(s):
            out.append(_add(_elementary(n, a, b, 1), _elementary(n, s + b, s + a, -1)))
    for a in range(s):
        for b in range(a + flip, s):
            C = _elementary(n, a, s + b, 1)
            if a != b:
                C = _add(C, _elementary(n, b, s + a, sg))
            out.append(C)
            D = _elementary(n, s + a, b, 1)
            if a != b:
                D = _add(D, _elementary(n, s + b, a, sg))
            out.append(D)
    return out


@dataclass(frozen=True)
class HGenerator:
    """Linear action ``z_alpha -> sum_beta coeff * z_beta`` on W-coordinates.

    ``kind`` is ``'lie'`` (acts as a derivation) or ``'group'`` (acts as an
    algebra automorphism).
    """

    kind: str
    label: str
    action: tuple[tuple[tuple[int, Scalar], ...], ...]

    def matrix(self, m: int) -> list[list[Scalar]]:
        M = [[ZERO] * m for _ in range(m)]
        for alpha, row in enumerate(self.action):
            for beta, c in row:
                M[alpha][beta] = c
        return M


def _row_action(spec: PairSpec, A, conj_on_v: bool) -> tuple:
    """Lift an action on the row index to all W-coordinates."""
    idx = spec.w_index
    out = []
    for blk, a, c in spec.w_layout:
        M = A
        row = []
        for b in range(len(M)):
            x = M[a][b]
            if blk == "v" and conj_on_v:
                x = x.conj()
            if x:
                row.append((idx[(blk, b, c)], x))
        out.append(tuple(row))
    return tuple(out)


@lru_cache(maxsize=None)
def h_generators(spec: PairSpec, flip: bool = False) -> tuple[HGenerator, ...]:
    """Lie-algebra generators of h (plus the O(s) reflection in case SpO).

    ``flip=True`` returns a sign-flipped mutant used by the self-test canaries:
    symmetric instead of antisymmetric generators and no reflection (SpO),
    the standard instead of the conjugate action on v (Upq), antisymmetric
    off-diagonal blocks (OstarSp).
    """
    s = spec.s
    gens = []
    if spec.case == "SpO":
        for k, A in enumerate(_o_basis(s, flip)):
            gens.append(HGenerator("lie", f"o{k}", _row_action(spec, A, False)))
        R = reflection(spec)
        if R is not None and not flip:
            gens.append(R)
    elif spec.case == "Upq":
        for k, A in enumerate(_u_basis(s)):
            gens.append(HGenerator("lie", f"u{k}", _row_action(spec, A, not flip)))
    else:
        for k, A in enumerate(_sp_basis(s, flip)):
            gens.append(HGenerator("lie", f"sp{k}", _row_action(spec, A, False)))
    return tuple(gens)


def reflection(spec: PairSpec) -> HGenerator | None:
    if spec.case != "SpO" or spec.s == 0:
        return None
    s = spec.s
    R = [[ONE if a == b else ZERO for b in range(s)] for a in range(s)]
    R[0][0] = -ONE
    return HGenerator("group", "reflection", _row_action(spec, R, False))


# ---------------------------------------------------------------------------
# applying generators to holomorphic monomials (exponent tuples of length m)


def apply_derivation(action, exps: tuple[int, ...]) -> dict:
    """Image of the monomial ``z^exps`` under the derivation defined by ``action``."""
    out: dict = {}
    for alpha, e in enumerate(exps):
        if not e:
            continue
        for beta, c in action[alpha]:
            if beta == alpha:
                key = exps
            else:
                lst = list(exps)
                lst[alpha] -= 1
                lst[beta] += 1
                key = tuple(lst)
            v = out.get(key, ZERO) + c * e
            if v.is_zero():
                out.pop(key, None)
            else:
                out[key] = v
    return out


def apply_automorphism(action, exps: tuple[int, ...]) -> dict:
    """Image of ``z^exps`` under the linear substitution ``z_alpha -> action[alpha]``."""
    out = {tuple([0] * len(exps)): ONE}
    for alpha, e in enumerate(exps):
        for _ in range(e):
            nxt: dict = {}
            for key, c in out.items():
                for beta, x in action[alpha]:
                    lst = list(key)
                    lst[beta] += 1
                    k2 = tuple(lst)
                    nxt[k2] = nxt.get(k2, ZERO) + c * x
            out = {k: v for k, v in nxt.items() if not v.is_zero()}
    return out


def apply_generator(gen: HGenerator, poly_terms: dict) -> dict:
    """Apply ``gen`` to a holomorphic polynomial given as ``{exps: coeff}``.

    Group elements are applied as ``g(P) - P`` so that in both cases an
    invariant polynomial maps to zero.
    """
    out: dict = {}
    for exps, c in poly_terms.items():
        if gen.kind == "lie":
            img = apply_derivation(gen.action, exps)
        else:
            img = apply_automorphism(gen.action, exps)
            img[exps] = img.get(exps, ZERO) - ONE
        for k, v in img.items():
            out[k] = out.get(k, ZERO) + v * c
    return {k: v for k, v in out.items() if not v.is_zero()}


# ---------------------------------------------------------------------------
# invariant graded pieces


def _column_vars(spec: PairSpec) -> list[list[int]]:
    cols: list[list[int]] = [[] for _ in range(spec.n_columns)]
    for idx, (_, _, c) in enumerate(spec.w_layout):
        cols[c].append(idx)
    return cols


def _weight_filter(spec: PairSpec):
    """Necessary conditions for H-invariance coming from diagonal elements of H.

    SpO: the sign changes ``diag(+-1)`` lie in O(s), so every row degree is even.
    Upq: ``i E_aa`` gives ``deg_u(row a) = deg_v(row a)``.
    OstarSp: ``E_aa - E_{a+s,a+s}`` gives ``deg(row a) = deg(row a+s)``.
    """
    layout = spec.w_layout
    s = spec.s
    if spec.case == "SpO":
        rows = [a for _, a, _ in layout]

        def ok(exps):
            deg = [0] * s
            for idx, e in enumerate(exps):
                if e:
                    deg[rows[idx]] += e
            return all(d % 2 == 0 for d in deg)
    elif spec.case == "Upq":
        sign = [(a, 1 if blk == "u" else -1) for blk, a, _ in layout]

        def ok(exps):
            w = [0] * s
            for idx, e in enumerate(exps):
                if e:
                    a, sg = sign[idx]
                    w[a] += sg * e
            return not any(w)
    else:
        sign = [(a % s if s else 0, 1 if a < s else -1) for _, a, _ in layout]

        def ok(exps):
            w = [0] * s
            for idx, e in enumerate(exps):
                if e:
                    a, sg = sign[idx]
                    w[a] += sg * e
            return not any(w)
    return ok


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _blocks(spec: PairSpec, k: int, flip: bool = False):
    """Yield the candidate monomials of degree ``k`` grouped by column multidegree.

    The K-torus scales columns independently and commutes with H, so the
    invariant space is a direct sum over these blocks.
    """
    m = spec.m
    cols = _column_vars(spec)
    ok = (lambda exps: True) if flip else _weight_filter(spec)
    for comp in _compositions(k, len(cols)):
        per_col = []
        for c, d in zip(cols, comp):
            per_col.append([tuple(zip(c, e)) for e in holomorphic_monomials(len(c), d)])
        block = []
        for choice in itertools.product(*per_col):
            lst = [0] * m
            for part in choice:
                for idx, e in part:
                    lst[idx] = e
            exps = tuple(lst)
            if ok(exps):
                block.append(exps)
        if block:
            yield comp, block


def _block_images(spec: PairSpec, block: list, flip: bool = False) -> list[dict]:
    gens = h_generators(spec, flip)
    colmap: dict = {}
    images = []
    for exps in block:
        vec = {}
        for g_idx, gen in enumerate(gens):
            img = apply_generator(gen, {exps: ONE})
            for key, c in img.items():
                col = colmap.setdefault((g_idx, key), len(colmap))
                vec[col] = c
        images.append(vec)
    return images


@lru_cache(maxsize=None)
def invariant_dim(spec: PairSpec, k: int, flip: bool = False) -> int:
    """``dim F_k^H``: common kernel of all generators on degree-``k`` polynomials.

    ``flip`` uses the mutant generators of :func:`h_generators`.
    """
    if k < 0:
        raise RejectedInput("degree must be nonnegative")
    total = 0
    for _, block in _blocks(spec, k, flip):
        images = _block_images(spec, block, flip)
        ech = Echelon()
        for v in images:
            if v:
                ech.add(v)
        total += len(block) - ech.rank
    return total


@lru_cache(maxsize=None)
def invariant_basis(spec: PairSpec, k: int) -> tuple[Poly, ...]:
    """Canonical (reduced echelon, per column block) basis of ``F_k^H``."""
    if k < 0:
        raise RejectedInput("degree must be nonnegative")
    m = spec.m
    out = []
    for _, block in _blocks(spec, k):
        block = sorted(block, reverse=True)
        images = _block_images(spec, block)
        offset = 1 + max((max(v) for v in images if v), default=-1)
        for vec in kernel(images, offset):
            out.append(Poly.holomorphic(m, {block[i]: c for i, c in vec.items()}))
    return tuple(out)


def is_invariant(spec: PairSpec, poly: Poly, flip: bool = False) -> bool:
    m = spec.m
    terms = {k[:m]: c for k, c in poly.items()}
    if any(any(k[m:]) for k, _ in poly.items()):
        return False
    return all(not apply_generator(g, terms) for g in h_generators(spec, flip))


# ---------------------------------------------------------------------------
# Hilbert map


def _parse_coord(spec: PairSpec, coord) -> int:
    """Accept a 1-based ``(i, j)`` pair or a 0-based flat index."""
    if isinstance(coord, int):
        if not 0 <= coord < spec.p_dim:
            raise RejectedInput(f"coordinate index {coord} out of range")
        return coord
    i, j = coord
    key = (i - 1, j - 1)
    if spec.case == "SpO" and key[0] > key[1]:
        key = (key[1], key[0])
    try:
        return spec.p_coords.index(key)
    except ValueError:
        raise RejectedInput(f"no p-coordinate x_{i}{j} for {spec}") from None


@lru_cache(maxsize=None)
def _pullback_terms(spec: PairSpec, idx: int) -> dict:
    i, j = spec.p_coords[idx]
    w = spec.w_index
    m = spec.m
    out: dict = {}

    def add(a_idx, b_idx, c):
        lst = [0] * m
        lst[a_idx] += 1
        lst[b_idx] += 1
        key = tuple(lst)
        v = out.get(key, ZERO) + c
        if v.is_zero():
            out.pop(key, None)
        else:
            out[key] = v

    s = spec.s
    if spec.case == "SpO":
        for a in range(s):
            add(w[("z", a, i)], w[("z", a, j)], ONE)
    elif spec.case == "Upq":
        p = spec.params[0]
        for a in range(s):
            add(w[("v", a, p + i)], w[("u", a, j)], ONE)
    else:
        for a in range(s):
            add(w[("z", a, i)], w[("z", a + s, j)], ONE)
            add(w[("z", a + s, i)], w[("z", a, j)], -ONE)
    return out


def hilbert_pullback(spec: PairSpec, coord) -> Poly:
    """Quadratic H-invariant on W pulled back from the p-coordinate ``coord``."""
    idx = _parse_coord(spec, coord)
    poly = Poly.holomorphic(spec.m, _pullback_terms(spec, idx))
    if not is_invariant(spec, poly):
        raise ConsistencyError(f"pullback of {spec.p_label(idx)} is not H-invariant")
    return poly


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = tuple(x + y for x, y in zip(k1, k2))
            out[k] = out.get(k, ZERO) + c1 * c2
    return {k: v for k, v in out.items() if not v.is_zero()}


@lru_cache(maxsize=None)
def pullback_monomial(spec: PairSpec, exps: tuple[int, ...]) -> dict:
    """Image ``{W-exps: coeff}`` of the p-monomial ``x^exps`` under the Hilbert map."""
    if not any(exps):
        return {tuple([0] * spec.m): ONE}
    first = next(i for i, e in enumerate(exps) if e)
    lst = list(exps)
    lst[first] -= 1
    return _mul_terms(pullback_monomial(spec, tuple(lst)), _pullback_terms(spec, first))


@dataclass
class PullbackData:
    """Matrix of ``x-monomial -> product of Hilbert pullbacks`` in degree ``k``."""

    spec: PairSpec
    k: int
    p_monomials: list
    w_monomials: list
    columns: list  # one sparse {row: coeff} per p-monomial
    rank: int
    invariant_dim: int
    images_invariant: bool

    @property
    def surjective(self) -> bool:
        return self.rank == self.invariant_dim

    @property
    def kernel_dim(self) -> int:
        return len(self.p_monomials) - self.rank

    def dense(self) -> list[list[Scalar]]:
        rows = [[ZERO] * len(self.p_monomials) for _ in self.w_monomials]
        for c, col in enumerate(self.columns):
            for r, v in col.items():
                rows[r][c] = v
        return rows


@lru_cache(maxsize=None)
def pullback_graded(spec: PairSpec, k: int) -> PullbackData:
    p_monos = holomorphic_monomials(spec.p_dim, k)
    w_index: dict = {}
    columns = []
    ech = Echelon()
    gens = h_generators(spec)
    invariant = True
    for e in p_monos:
        img = pullback_monomial(spec, e)
        col = {w_index.setdefault(key, len(w_index)): c for key, c in img.items()}
        columns.append(col)
        ech.add(col)
        if invariant and any(apply_generator(g, img) for g in gens):
            invariant = False
    w_monos = sorted(w_index, key=w_index.get)
    return PullbackData(spec, k, p_monos, w_monos, columns, ech.rank,
                        invariant_dim(spec, 2 * k), invariant)


# ---------------------------------------------------------------------------
# the centralizer k = Lie(K)


def k_basis(spec: PairSpec) -> list[tuple]:
    """Anti-hermitian basis of k as tuples of matrices.

    SpO and OstarSp: ``(A,)`` with ``A`` in u(l) resp. u(n);
    Upq: ``(A, B)`` with ``A`` in u(p) acting on u-columns, ``B`` in u(q) on v-columns.
    """
    if spec.case == "Upq":
        p, q, _ = spec.params
        zp = [[ZERO] * p for _ in range(p)]
        zq = [[ZERO] * q for _ in range(q)]
        return [(A, zq) for A in _u_basis(p)] + [(zp, B) for B in _u_basis(q)]
    n = spec.params[0]
    return [(A,) for A in _u_basis(n)]


def k_central(spec: PairSpec) -> tuple:
    """``-i Id`` in k; its image in u(m) is ``-i Id``, whose momentum is the energy."""
    def minus_i(n):
        return [[(-I if a == b else ZERO) for b in range(n)] for a in range(n)]
    if spec.case == "Upq":
        p, q, _ = spec.params
        return (minus_i(p), minus_i(q))
    return (minus_i(spec.params[0]),)


def k_on_w(spec: PairSpec, X: tuple) -> list[list[Scalar]]:
    """The m x m matrix by which ``X`` in k acts on the W-coordinates (column index)."""
    m = spec.m
    M = [[ZERO] * m for _ in range(m)]
    idx = spec.w_index
    if spec.case == "Upq":
        A, B = X
        p = spec.params[0]
    for alpha, (blk, a, c) in enumerate(spec.w_layout):
        if spec.case == "Upq":
            if blk == "u":
                for c2 in range(len(A)):
                    M[alpha][idx[("u", a, c2)]] = Scalar.coerce(A[c][c2])
            else:
                for c2 in range(len(B)):
                    M[alpha][idx[("v", a, p + c2)]] = Scalar.coerce(B[c - p][c2])
        else:
            (A,) = X
            for c2 in range(len(A)):
                M[alpha][idx[(blk, a, c2)]] = Scalar.coerce(A[c][c2])
    return M
