import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusionnet.algebra import AlgebraError, from_blocks, full_algebra
from fusionnet.bimodule import (
    Refusal,
    bimodule_from_multiplicities,
    conjugate,
    direct_sum,
    fuse,
    fuse_by_quotient,
    intertwiner_by_solve,
    intertwiner_space,
    multiplicity_matrix,
    standard_bimodule,
    statistical_dimension,
    unitary_equivalence,
)

A2 = from_blocks([(1, 1), (2, 1)])
B2 = from_blocks([(2, 1), (1, 1)])
C1 = from_blocks([(1, 1), (1, 1), (1, 1)])


@pytest.mark.parametrize(
    "L, R",
    [
        ([[1, 0], [0, 1]], [[1, 1, 0], [0, 1, 1]]),
        ([[2, 1], [0, 1]], [[1, 0, 1], [0, 2, 0]]),
        ([[0, 1], [1, 0]], [[1, 1, 1], [1, 0, 0]]),
    ],
)
def test_fusion_multiplies_multiplicity_matrices(L, R):
    H = bimodule_from_multiplicities(A2, B2, L, seed=1)
    K = bimodule_from_multiplicities(B2, C1, R, seed=2)
    F = fuse(H, K)
    expected = np.asarray(L) @ np.asarray(R)
    assert np.array_equal(multiplicity_matrix(F), expected)
    right = [H.act_right(x) for x in B2.basis]
    left = [K.act_left(x) for x in B2.basis]
    assert F.space_dim == oracles.relative_tensor_dimension(right, left, H.space_dim, K.space_dim)
    G = fuse_by_quotient(H, K)
    cert = unitary_equivalence(F, G)
    assert cert.passes(1e-9)


@settings(max_examples=15, deadline=None)
@given(C=st.lists(st.lists(st.integers(0, 2), min_size=2, max_size=2), min_size=2, max_size=2), seed=st.integers(0, 999))
def test_multiplicities_survive_rotation(C, seed):
    if not np.any(C):
        with pytest.raises(AlgebraError):
            bimodule_from_multiplicities(A2, B2, C, seed=seed)
        return
    H = bimodule_from_multiplicities(A2, B2, C, seed=seed)
    assert np.array_equal(multiplicity_matrix(H), np.asarray(C))


def test_standard_bimodule_is_fusion_unit():
    H = bimodule_from_multiplicities(A2, B2, [[1, 2], [1, 0]], seed=3)
    left = fuse(standard_bimodule(A2), H)
    right = fuse(H, standard_bimodule(B2))
    assert unitary_equivalence(left, H).passes(1e-9)
    assert unitary_equivalence(right, H).passes(1e-9)


def test_standard_bimodule_multiplicity_is_identity():
    assert np.array_equal(multiplicity_matrix(standard_bimodule(A2)), np.eye(2, dtype=int))


def test_conjugate_transposes_multiplicities():
    C = [[1, 2], [0, 1]]
    H = bimodule_from_multiplicities(A2, B2, C, seed=4)
    Hb = conjugate(H)
    assert Hb.left_algebra is H.right_algebra
    assert np.array_equal(multiplicity_matrix(Hb), np.asarray(C).T)


def test_direct_sum_adds_multiplicities():
    H = bimodule_from_multiplicities(A2, B2, [[1, 0], [0, 1]])
    K = bimodule_from_multiplicities(A2, B2, [[0, 1], [1, 1]], seed=5)
    assert np.array_equal(multiplicity_matrix(direct_sum(H, K)), [[1, 1], [1, 2]])


def test_direct_sum_rejects_different_pairs():
    H = bimodule_from_multiplicities(A2, B2, [[1, 0], [0, 1]])
    K = bimodule_from_multiplicities(B2, C1, [[1, 0, 0], [0, 1, 0]])
    with pytest.raises(AlgebraError):
        direct_sum(H, K)


def test_mismatch_is_refused_with_witness():
    H = bimodule_from_multiplicities(A2, B2, [[1, 0], [0, 1]])
    K = bimodule_from_multiplicities(A2, B2, [[1, 0], [0, 2]])
    r = unitary_equivalence(H, K)
    assert isinstance(r, Refusal)
    assert r.witness == {"entry": [1, 1], "left": 1, "right": 2}


def test_intertwiner_space_dimension():
    H = bimodule_from_multiplicities(A2, B2, [[2, 1], [0, 1]], seed=6)
    K = bimodule_from_multiplicities(A2, B2, [[1, 1], [3, 1]], seed=7)
    assert len(intertwiner_space(H, K)) == 2 * 1 + 1 * 1 + 0 + 1 * 1


def test_solve_and_decomposition_agree():
    H = bimodule_from_multiplicities(A2, B2, [[1, 1], [0, 1]], seed=8)
    K = bimodule_from_multiplicities(A2, B2, [[1, 1], [0, 1]], seed=9)
    assert unitary_equivalence(H, K).passes(1e-9)
    cert = intertwiner_by_solve(H, K)
    assert cert.passes(1e-8)


@pytest.mark.parametrize("c", [1, 2, 3])
def test_statistical_dimension_of_factor_pair(c):
    M = full_algebra(2)
    H = bimodule_from_multiplicities(M, M, [[c]])
    assert statistical_dimension(H) == pytest.approx(c)
    assert H.space_dim == 4 * c
