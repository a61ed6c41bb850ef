"""Highest-weight bookkeeping for the graded pieces of the orbit closures.

The degree-``k`` piece over the closure of ``O_s'`` is the sum of the
irreducible K-representations with highest-weight vectors
``delta_1^a1 ... delta_s'^as'`` where ``sum_i i*a_i = k``; ``delta_i`` is the
leading ``i x i`` minor (SpO, Upq) or the leading Pfaffian of order ``2i``
(OstarSp).
"""

from __future__ import annotations

from fractions import Fraction

from .dual_pairs import PairSpec
from .errors import RejectedInput


def enumerate_delta(s_prime: int, k: int) -> list[tuple[int, ...]]:
    """All ``(a_1, ..., a_s')`` with ``sum i*a_i = k``, lexicographically descending."""
    if s_prime < 1:
        raise RejectedInput("need at least one delta")
    out: list[tuple[int, ...]] = []

    def rec(i, left, prefix):
        if i > s_prime:
            if left == 0:
                out.append(prefix)
            return
        for a in range(left // i, -1, -1):
            rec(i + 1, left - i * a, prefix + (a,))

    rec(1, k, ())
    return out


def _partition(exps: tuple[int, ...], step: int, length: int) -> tuple[int, ...]:
    """``delta_i`` adds ``step`` to the first ``i`` entries."""
    lam = [0] * length
    for i, a in enumerate(exps, start=1):
        for j in range(i):
            lam[j] += step * a
    return tuple(lam)


def delta_weight(spec: PairSpec, exps: tuple[int, ...]):
    """Highest weight of a delta-monomial.

    SpO: one vector of length l; Upq: a pair (U(p)-weight, U(q)-weight);
    OstarSp: one vector of length n.
    """
    t = len(exps)
    if t > spec.rank:
        raise RejectedInput(f"{t} deltas exceed the rank bound {spec.rank}")
    if spec.case == "SpO":
        return _partition(exps, 2, spec.params[0])
    if spec.case == "Upq":
        p, q, _ = spec.params
        return (_partition(exps, 1, p), _partition(exps, 1, q))
    n = spec.params[0]
    lam = [0] * n
    for i, a in enumerate(exps, start=1):
        for j in range(2 * i):
            lam[j] += a
    return tuple(lam)


def weyl_dim(rank: int, lam) -> int:
    """``prod_{i<j} (l_i - l_j + j - i) / (j - i)`` for the U(rank) weight ``lam``."""
    lam = tuple(lam) + (0,) * (rank - len(lam))
    if len(lam) > rank:
        raise RejectedInput("weight is longer than the rank")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise RejectedInput(f"weight {lam} is not dominant")
    num = 1
    den = 1
    for i in range(rank):
        for j in range(i + 1, rank):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    val = Fraction(num, den)
    if val.denominator != 1:
        raise ArithmeticError("Weyl dimension is not an integer")
    return int(val)


def weight_dim(spec: PairSpec, weight) -> int:
    if spec.case == "Upq":
        p, q, _ = spec.params
        return weyl_dim(p, weight[0]) * weyl_dim(q, weight[1])
    return weyl_dim(spec.params[0], weight)


def stratum_rep_rows(spec: PairSpec, s_prime: int, k: int) -> list[dict]:
    if s_prime == 0:
        return [{"monomial": (), "weight": None, "dim": 1}] if k == 0 else []
    rows = []
    for exps in enumerate_delta(s_prime, k):
        w = delta_weight(spec, exps)
        rows.append({"monomial": exps, "weight": w, "dim": weight_dim(spec, w)})
    return rows


def stratum_rep_count(spec: PairSpec, s_prime: int, k: int) -> int:
    if s_prime < 0:
        raise RejectedInput("stratum must be nonnegative")
    return sum(r["dim"] for r in stratum_rep_rows(spec, s_prime, k))


def kernel_rep_count(spec: PairSpec, s_prime: int, k: int) -> int:
    """Dimensions of the constituents involving ``delta_s'`` explicitly."""
    if s_prime < 1:
        raise RejectedInput("kernel count needs s' >= 1")
    return sum(r["dim"] for r in stratum_rep_rows(spec, s_prime, k) if r["monomial"][-1] >= 1)


def delta_polynomial(spec: PairSpec, i: int):
    """The explicit ``delta_i`` as a polynomial on p."""
    from .orbit_rings import det, generic_matrix, pfaffian

    M = generic_matrix(spec)
    if spec.case == "OstarSp":
        return pfaffian([row[: 2 * i] for row in M[: 2 * i]])
    return det([row[:i] for row in M[:i]])
