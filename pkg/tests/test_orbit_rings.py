import pytest

from sfock import ConsistencyError, I, Poly, RejectedInput, ZERO
from sfock.dual_pairs import PairSpec, k_basis, k_central
from sfock.orbit_rings import (
    GradedTable, graded_dim, graded_dim_eval, graded_table, ideal_generators, ideal_is_stable,
    matmul, natural_k_derivation, reduced_energy_spectrum, reduced_k_action,
    restriction_kernel_dim, restriction_matrix, torus_weight, transported_fock_action,
)
from sfock.poly import holomorphic_monomials

SPO2 = PairSpec.sp_o(2, 2)
GRID = [PairSpec.sp_o(l, l) for l in (1, 2, 3)] + \
    [PairSpec.u_pq(p, q, q) for p in (1, 2) for q in range(1, p + 1)] + \
    [PairSpec.ostar_sp(n, n // 2) for n in (2, 3, 4)]


def test_ideal_generator_examples():
    x11, x12, x22 = (Poly.z(j, 3) for j in (1, 2, 3))
    assert ideal_generators(SPO2, 1) == (x11 * x22 - x12 ** 2,)
    assert ideal_generators(SPO2, 2) == ()
    assert set(ideal_generators(SPO2, 0)) == {x11, x12, x22}
    with pytest.raises(RejectedInput):
        ideal_generators(SPO2, 3)


def test_pfaffian_generators():
    spec = PairSpec.ostar_sp(4, 2)
    (pf,) = ideal_generators(spec, 1)
    # x12 x34 - x13 x24 + x14 x23
    idx = {ij: k for k, ij in enumerate(spec.p_coords)}
    def x(i, j):
        return Poly.z(idx[(i - 1, j - 1)] + 1, 6)
    assert pf == x(1, 2) * x(3, 4) - x(1, 3) * x(2, 4) + x(1, 4) * x(2, 3)


def test_graded_dim_examples():
    assert graded_dim(SPO2, 1, 2) == 5
    assert graded_dim(SPO2, 2, 2) == 6
    for spec in GRID:
        for s in range(1, spec.rank + 1):
            assert graded_dim(spec, s, 0) == 1


def test_evaluation_examples():
    for seed in range(3):
        assert graded_dim_eval(SPO2, 1, 2, seed=seed) == 5
    assert graded_dim_eval(SPO2, 0, 2) == 0
    assert graded_dim_eval(PairSpec.u_pq(1, 1, 1), 1, 3) == 1


def test_restriction_kernel_examples():
    assert restriction_kernel_dim(SPO2, 2, 1, 2) == 1
    assert restriction_kernel_dim(SPO2, 1, 0, 1) == 3
    assert restriction_kernel_dim(SPO2, 2, 0, 0) == 0
    with pytest.raises(RejectedInput):
        restriction_kernel_dim(SPO2, 1, 1, 1)


def test_spectrum_examples():
    assert reduced_energy_spectrum(SPO2, 1, 2) == [(0, 1), (2, 3), (4, 5)]
    assert reduced_energy_spectrum(SPO2, 0, 3) == [(0, 1)]


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_oracle_agreement_and_monotone(spec):
    table = graded_table(spec, 3, methods=("ideal-rank", "evaluation"), seed=1)
    for s in range(spec.rank + 1):
        for k in range(4):
            assert table.get(s, k, "ideal-rank") == table.get(s, k, "evaluation")
    assert table.check_monotone("ideal-rank")
    # degree-1 piece is all of p* on every nonzero stratum
    for s in range(1, spec.rank + 1):
        assert table.get(s, 1) == spec.p_dim


def test_torus_weight_blocks_are_respected_by_the_ideal():
    for spec in GRID:
        for s in range(spec.rank):
            for g in ideal_generators(spec, s):
                weights = {torus_weight(spec, k[: spec.p_dim]) for k, _ in g.items()}
                assert len(weights) == 1


def test_graded_table_rows_and_validation():
    table = GradedTable(SPO2)
    table.set(1, 2, "evaluation", 5)
    assert table.rows() == [{"case": "SpO", "params": "sp-o:l=2,s=2", "stratum": 1,
                             "degree": 2, "dim": 5, "method": "evaluation"}]
    with pytest.raises(ValueError):
        table.set(1, 2, "guess", 5)


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_ideal_stability(spec):
    for s in range(spec.rank + 1):
        for X in k_basis(spec):
            assert ideal_is_stable(spec, s, X)


@pytest.mark.parametrize("spec", GRID + [PairSpec.sp_o(3, 1), PairSpec.u_pq(2, 2, 1),
                                         PairSpec.ostar_sp(4, 1)], ids=str)
def test_fock_action_intertwines_with_reduced_action(spec):
    for X in k_basis(spec):
        for k in range(3):
            assert transported_fock_action(spec, X, k).matrix == \
                reduced_k_action(spec, spec.s, X, k).matrix


@pytest.mark.parametrize("spec", GRID, ids=str)
def test_restriction_maps_intertwine(spec):
    for X in k_basis(spec):
        for k in range(3):
            for s in range(1, spec.rank + 1):
                R = restriction_matrix(spec, s, s - 1, k)
                top = reduced_k_action(spec, s, X, k).matrix
                low = reduced_k_action(spec, s - 1, X, k).matrix
                assert matmul(R, top) == matmul(low, R)


def test_central_generator_acts_by_energy():
    for spec in GRID:
        for k in range(3):
            M = reduced_k_action(spec, spec.s, k_central(spec), k).matrix
            n = len(M)
            assert all(M[a][b] == (I * (2 * k) if a == b else ZERO)
                       for a in range(n) for b in range(n))


def test_traceless_generator_kills_constants():
    for spec in GRID:
        for X in k_basis(spec):
            if any(A[i][i] for A in X for i in range(len(A))):
                continue
            assert reduced_k_action(spec, spec.s, X, 0).matrix == [[ZERO]]


def test_diagonal_weights_on_p():
    spec = PairSpec.sp_o(2, 1)
    X = k_basis(spec)[0]  # i E_11
    M = reduced_k_action(spec, 1, X, 1)
    assert M.basis == holomorphic_monomials(3, 1)
    # x11, x12, x22 carry weights 2, 1, 0 for E_11 (transported sign: -i times weight)
    assert [M.matrix[a][a] for a in range(3)] == [-2 * I, -I, ZERO]
    assert all(M.matrix[a][b] == 0 for a in range(3) for b in range(3) if a != b)


def test_natural_derivation_weights():
    spec = PairSpec.sp_o(2, 1)
    forms = natural_k_derivation(spec, k_basis(spec)[0])
    assert forms[0] == {(1, 0, 0): 2 * I}


def test_restriction_direction_is_checked():
    with pytest.raises(RejectedInput):
        restriction_matrix(SPO2, 0, 1, 1)


def test_consistency_error_on_unstable_ideal(monkeypatch):
    import sfock.orbit_rings as orb
    monkeypatch.setattr(orb, "ideal_is_stable", lambda *a: False)
    with pytest.raises(ConsistencyError):
        orb.reduced_k_action(SPO2, 1, k_basis(SPO2)[0], 1)
