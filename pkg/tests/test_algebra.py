import numpy as np
import pytest
import scipy.stats as sst
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusionnet.algebra import (
    AbstractAlgebra,
    AlgebraError,
    RepresentedAlgebra,
    StarHomomorphism,
    algebra_distance,
    canonical_trace,
    canonical_trace_weights,
    center,
    commutant,
    decompose_representation,
    diagonal_algebra,
    from_blocks,
    full_algebra,
    generate_closure,
    inclusion_data,
    is_factor,
    join,
    opposite,
    relative_commutant,
    scalars,
    tensor_product,
    wedderburn,
)

block_lists = st.lists(st.tuples(st.integers(1, 3), st.integers(1, 3)), min_size=1, max_size=3).filter(
    lambda b: sum(n * m for n, m in b) <= 16
)


def rotated(blocks, seed):
    d = sum(n * m for n, m in blocks)
    U = sst.unitary_group.rvs(d, random_state=np.random.default_rng(seed)) if d > 1 else np.eye(1)
    return from_blocks(blocks, U)


@settings(max_examples=25, deadline=None)
@given(blocks=block_lists, seed=st.integers(0, 2**16))
def test_closure_recovers_hidden_structure(blocks, seed):
    H = rotated(blocks, seed)
    rng = np.random.default_rng(seed)
    A = generate_closure([H.random_element(rng) for _ in range(2)], H.ambient_dim, seed=seed)
    assert sorted(A.blocks) == sorted(H.blocks)
    assert algebra_distance(A, H) < 1e-8
    for x in H.basis[:6]:
        assert A.residual(x) < 1e-8


@settings(max_examples=25, deadline=None)
@given(blocks=block_lists, seed=st.integers(0, 2**16))
def test_commutant_swaps_blocks_and_is_involutive(blocks, seed):
    A = rotated(blocks, seed)
    Ac = commutant(A)
    assert list(Ac.blocks) == [(m, n) for n, m in A.blocks]
    assert algebra_distance(commutant(Ac), A) < 1e-8
    rng = np.random.default_rng(seed)
    x, y = A.random_element(rng), Ac.random_element(rng)
    assert np.linalg.norm(x @ y - y @ x) < 1e-9


@pytest.mark.parametrize("blocks", [[(2, 1)], [(1, 3)], [(2, 2), (1, 1)], [(3, 1), (1, 2)]])
def test_commutant_matches_brute_force(blocks):
    A = rotated(blocks, 7)
    brute = oracles.commutant_basis(A.generators() + [g.conj().T for g in A.generators()], A.ambient_dim)
    Ac = commutant(A)
    assert len(brute) == Ac.dim
    assert oracles.span_distance(oracles.orth_span(brute), oracles.orth_span(Ac.basis)) < 1e-9


def test_basis_is_hilbert_schmidt_orthonormal():
    A = rotated([(2, 2), (1, 3)], 1)
    G = np.array([[np.vdot(a, b) for b in A.basis] for a in A.basis])
    assert np.allclose(G, np.eye(A.dim))
    assert A.dim == 4 + 1


def test_parts_and_element_round_trip():
    A = rotated([(2, 1), (3, 2)], 4)
    rng = np.random.default_rng(0)
    x = A.random_element(rng)
    assert np.allclose(A.element(A.parts(x)), x)
    assert A.contains(x)
    assert not A.contains(rng.standard_normal((A.ambient_dim, A.ambient_dim)))


def test_invalid_frames_and_blocks_are_refused():
    with pytest.raises(AlgebraError):
        RepresentedAlgebra(np.ones((2, 2)), [(2, 1)])
    with pytest.raises(AlgebraError):
        from_blocks([(2, 0)])
    with pytest.raises(AlgebraError):
        RepresentedAlgebra(np.eye(3), [(2, 1)])


def test_center_and_factor_predicates():
    A = from_blocks([(2, 1), (1, 2)])
    Z = center(A)
    assert Z.blocks == ((1, 2), (1, 2))
    assert not is_factor(A)
    assert is_factor(full_algebra(3))
    assert scalars(4).blocks == ((1, 4),)
    assert diagonal_algebra(3).blocks == ((1, 1),) * 3


def test_wedderburn_of_operator_list():
    A = rotated([(2, 1), (1, 1)], 3)
    proj, blocks = wedderburn(A.basis)
    assert sorted(blocks) == [(1, 1), (2, 1)]
    assert np.allclose(sum(proj), np.eye(3))


def test_tensor_product_blocks_and_dimension():
    A, B = from_blocks([(2, 1), (1, 1)]), from_blocks([(1, 2)])
    T = tensor_product(A, B)
    assert T.blocks == ((2, 2), (1, 2))
    assert T.ambient_dim == A.ambient_dim * B.ambient_dim
    x, y = A.generators()[0], B.generators()[0]
    assert T.contains(np.kron(x, y))


def test_opposite_is_transpose_image():
    A = rotated([(2, 1), (1, 1)], 9)
    Aop = opposite(A)
    rng = np.random.default_rng(1)
    x, y = A.random_element(rng), A.random_element(rng)
    assert Aop.contains(x.T)
    assert np.allclose((x @ y).T, y.T @ x.T)


def test_relative_commutant_and_inclusion_index():
    # M_2 ⊗ 1 inside M_4
    A = tensor_product(full_algebra(2), scalars(2))
    B = full_algebra(4)
    R = relative_commutant(A, B)
    assert R.dim == 4
    lam, index = inclusion_data(A, B)
    assert lam.tolist() == [[2]]
    assert index == pytest.approx(4.0)


def test_join_of_commuting_algebras():
    A = tensor_product(full_algebra(2), scalars(2))
    B = tensor_product(scalars(2), full_algebra(2))
    J = join(A, B)
    assert J.blocks == ((4, 1),)


def test_join_falls_back_to_closure_for_noncommuting_pairs():
    A = diagonal_algebra(2)
    B = RepresentedAlgebra(np.array([[1, 1], [1, -1]]) / np.sqrt(2), [(1, 1), (1, 1)])
    assert join(A, B).blocks == ((2, 1),)


def test_canonical_trace_is_tracial_state():
    A = from_blocks([(2, 1), (1, 3)])
    w = canonical_trace_weights(A)
    assert np.isclose(sum(wi * n for wi, (n, _) in zip(w, A.blocks)), 1.0)
    rng = np.random.default_rng(2)
    x, y = A.random_element(rng), A.random_element(rng)
    assert canonical_trace(A, np.eye(A.ambient_dim)) == pytest.approx(1.0)
    assert canonical_trace(A, x @ y) == pytest.approx(canonical_trace(A, y @ x))


def test_star_homomorphism_decomposition():
    A = from_blocks([(2, 1), (1, 1)])
    # the representation x ↦ x ⊕ x_1 (second block once more)
    def rep(x):
        parts = A.parts(x)
        out = np.zeros((4, 4), dtype=complex)
        out[:3, :3] = x
        out[3:, 3:] = parts[1]
        return out

    W, mults = decompose_representation(A, rep, 4)
    assert list(mults) == [1, 2]
    h = StarHomomorphism.from_function(A, rep, 4)
    rng = np.random.default_rng(0)
    x = A.random_element(rng)
    assert np.allclose(h(x), rep(x))


def test_abstract_algebra_named_instances():
    M = AbstractAlgebra.matrix_algebra(2)
    e = np.eye(4)
    # e_01 e_10 = e_00 with index i*n + j
    assert np.allclose(M.multiply(e[1], e[2]), e[0])
    assert np.allclose(M.unit, [1, 0, 0, 1])
    D = AbstractAlgebra.dual_numbers()
    x = np.array([0, 1])
    assert np.allclose(D.multiply(x, x), 0)
    assert AbstractAlgebra.upper_triangular().dim == 3


def test_abstract_algebra_from_matrices_matches_products():
    A = full_algebra(2)
    alg = AbstractAlgebra.from_matrices(A.basis)
    e = np.eye(alg.dim)
    for i in range(alg.dim):
        for j in range(alg.dim):
            lhs = sum(c * b for c, b in zip(alg.multiply(e[i], e[j]), A.basis))
            assert np.allclose(lhs, A.basis[i] @ A.basis[j])
