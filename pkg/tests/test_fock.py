import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sfock import ConsistencyError, DimensionError, I, Poly, RejectedInput, Scalar, ZERO, poisson
from sfock.fock import (
    FockState, dirac_defect, energy, inner, is_anti_hermitian, is_quantizable, momentum_u,
    monomial_states, operator_matrix, quantize, random_quantizable, symmetry, theta_df,
)
from sfock.poly import diff
from strategies import holomorphic_polys, scalars


def rand_scalar(rng, h=4):
    return Scalar(Fraction(rng.randint(-h, h), rng.randint(1, h)),
                  Fraction(rng.randint(-h, h), rng.randint(1, h)))


def rand_anti_hermitian(m, rng):
    X = [[ZERO] * m for _ in range(m)]
    for j in range(m):
        X[j][j] = Scalar(0, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
        for k in range(j + 1, m):
            x = rand_scalar(rng)
            X[j][k] = x
            X[k][j] = -x.conj()
    return X


def rand_real_quantizable(m, rng):
    """Real observables that are at most linear in zb: c + sum a_j z_j + conj + hermitian form."""
    f = Poly.const(m, Fraction(rng.randint(-5, 5), rng.randint(1, 3)))
    for j in range(1, m + 1):
        a = rand_scalar(rng)
        f = f + Poly.z(j, m).scale(a) + Poly.zb(j, m).scale(a.conj())
    f = f + momentum_u(rand_anti_hermitian(m, rng)).f
    assert f.is_real() and is_quantizable(f)
    return f


def commutator_bracket(X, Y):
    m = len(X)
    return [[sum((X[a][t] * Y[t][b] - Y[a][t] * X[t][b] for t in range(m)), ZERO)
             for b in range(m)] for a in range(m)]


# -- module examples ---------------------------------------------------------

def test_quantizability_examples():
    assert is_quantizable(energy(3))
    assert not is_quantizable(Poly.zb(1, 1) ** 2)
    assert is_quantizable(Poly.const(2, 1))
    with pytest.raises(RejectedInput):
        quantize(Poly.zb(1, 1) ** 2, FockState.ground(1))


def test_theta_examples():
    assert theta_df(Poly.z(1, 2)) == Poly.z(1, 2).scale(Fraction(1, 2))
    assert theta_df(energy(3)) == energy(3).f
    assert theta_df(Poly.const(2, 7)).is_zero()


def test_quantize_examples():
    for k in range(6):
        s = FockState.monomial((k,))
        assert quantize(energy(1), s).phi == s.phi.scale(k)
    r = Fraction(-7, 3)
    s = FockState(Poly.holomorphic(2, {(1, 0): 1, (2, 3): I}))
    assert quantize(Poly.const(2, r), s).phi == s.phi.scale(r)
    # zb_1 acts as twice the derivative
    assert quantize(Poly.zb(1, 2), s).phi == diff(s.phi, 1, "hol").scale(2)
    # z_1 acts by multiplication
    assert quantize(Poly.z(1, 2), s).phi == Poly.z(1, 2) * s.phi


def test_symmetry_examples():
    s = FockState.monomial((1,))
    assert symmetry(energy(1), s).phi == s.phi.scale(I)
    assert symmetry(Poly.zero(2), FockState.monomial((2, 1))).is_zero()


def test_inner_examples():
    assert inner(FockState.ground(1), FockState.ground(1)) == 1
    assert inner(FockState.monomial((1, 0)), FockState.monomial((0, 1))) == 0
    assert inner(FockState.monomial((2,)), FockState.monomial((2,))) == 8
    with pytest.raises(DimensionError):
        inner(FockState.ground(1), FockState.ground(2))


def test_momentum_examples():
    m = 3
    minus_i = [[(-I if a == b else ZERO) for b in range(m)] for a in range(m)]
    assert momentum_u(minus_i).f == energy(m).f
    assert momentum_u([[ZERO] * 2 for _ in range(2)]).f.is_zero()
    E11 = [[-I, ZERO], [ZERO, ZERO]]
    assert momentum_u(E11).f == (Poly.z(1, 2) * Poly.zb(1, 2)).scale(Fraction(1, 2))
    with pytest.raises(RejectedInput):
        momentum_u([[1, 0], [0, 0]])


def test_dirac_examples():
    f_e = energy(2).f
    assert poisson(f_e, Poly.z(1, 2)) == Poly.z(1, 2).scale(I)
    for s in monomial_states(2, 3):
        assert dirac_defect(f_e, Poly.z(1, 2), s).is_zero()
        g = random_quantizable(2, random.Random(1))
        assert dirac_defect(g, g, s).is_zero()


def test_fock_state_rejects_antiholomorphic():
    with pytest.raises(RejectedInput):
        FockState(Poly.zb(1, 1))


# -- properties --------------------------------------------------------------

def test_energy_spectrum():
    for m in (1, 2, 3):
        f = energy(m)
        for k in range(7):
            for s in monomial_states(m, k, k):
                assert quantize(f, s).phi == s.phi.scale(k)


def test_energy_eigenvalue_oracle_by_matrix():
    M = operator_matrix(lambda s: quantize(energy(2), s), 2, 3)
    assert all(M[i][j] == (3 if i == j else 0) for i in range(4) for j in range(4))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_dirac_condition_randomized(m):
    rng = random.Random(100 + m)
    states = monomial_states(m, 3)
    for _ in range(8):
        f, g = random_quantizable(m, rng), random_quantizable(m, rng)
        for s in states:
            assert dirac_defect(f, g, s).is_zero()


def test_dirac_canary_detects_sign_flip():
    rng = random.Random(5)
    f, g = random_quantizable(2, rng), random_quantizable(2, rng)
    while poisson(f.f, g.f).is_zero():
        f, g = random_quantizable(2, rng), random_quantizable(2, rng)
    assert any(not dirac_defect(f, g, s, bracket_sign=-1).is_zero()
               for s in monomial_states(2, 2))


def test_dirac_for_momenta():
    rng = random.Random(11)
    for m in (1, 2, 3):
        X, Y = rand_anti_hermitian(m, rng), rand_anti_hermitian(m, rng)
        for s in monomial_states(m, 4):
            assert dirac_defect(momentum_u(X), momentum_u(Y), s).is_zero()


@pytest.mark.parametrize("m", [1, 2])
def test_hermitian_and_skew(m):
    rng = random.Random(7 + m)
    states = monomial_states(m, 4)
    for _ in range(3):
        f = rand_real_quantizable(m, rng)
        img = {id(s): quantize(f, s) for s in states}
        sym = {id(s): symmetry(f, s) for s in states}
        for s in states:
            for t in states:
                assert inner(img[id(s)], t) == inner(s, img[id(t)])
                assert inner(sym[id(s)], t) == -inner(s, sym[id(t)])


def test_momentum_lie_map_sign_fixed_by_oracle():
    """Solve {mu^X, mu^Y} = c mu^[X,Y] for c by coefficient comparison, then check c is constant."""
    rng = random.Random(3)
    found = set()
    for m in (1, 2, 3):
        for _ in range(4):
            X, Y = rand_anti_hermitian(m, rng), rand_anti_hermitian(m, rng)
            lhs = poisson(momentum_u(X).f, momentum_u(Y).f)
            rhs = momentum_u(commutator_bracket(X, Y)).f
            if rhs.is_zero():
                assert lhs.is_zero()
                continue
            key, val = next(iter(rhs.items()))
            c = lhs.coeff(key) / val
            assert lhs == rhs.scale(c)
            found.add(c)
    assert len(found) == 1
    c = found.pop()
    assert c in (1, -1)
    # the quantum symmetries then satisfy the matching commutation relation
    m = 2
    X, Y = rand_anti_hermitian(m, rng), rand_anti_hermitian(m, rng)
    Z = commutator_bracket(X, Y)
    for s in monomial_states(m, 3):
        comm = symmetry(momentum_u(X), symmetry(momentum_u(Y), s)) - \
            symmetry(momentum_u(Y), symmetry(momentum_u(X), s))
        assert comm.phi == symmetry(momentum_u(Z), s).phi.scale(c)


@given(st.integers(1, 3).flatmap(lambda m: st.tuples(st.just(m), holomorphic_polys(m))))
def test_symmetry_preserves_degree(args):
    m, phi = args
    rng = random.Random(len(phi))
    mu = momentum_u(rand_anti_hermitian(m, rng))
    out = symmetry(mu, FockState(phi)).phi
    for d in range(7):
        part = Poly(m, {k: c for k, c in phi.items() if sum(k) == d})
        img = symmetry(mu, FockState(part)).phi
        assert img.is_zero() or img.is_homogeneous(d)
    assert out.is_holomorphic()


@given(scalars, scalars)
def test_quantize_is_linear(a, b):
    rng = random.Random(0)
    f, g = random_quantizable(2, rng), random_quantizable(2, rng)
    s = FockState.monomial((1, 2))
    lhs = quantize(f.f.scale(a) + g.f.scale(b), s)
    rhs = quantize(f, s).scale(a) + quantize(g, s).scale(b)
    assert lhs.phi == rhs.phi


def test_momentum_requires_anti_hermitian_input():
    assert is_anti_hermitian([[I, 1], [-1, 0]])
    assert not is_anti_hermitian([[1]])
    with pytest.raises(DimensionError):
        momentum_u([[I, 0]])


def test_consistency_error_is_internal():
    assert issubclass(ConsistencyError, RuntimeError)
