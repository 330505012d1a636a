import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fusionnet.algebra import AbstractAlgebra, from_blocks
from fusionnet.bimodule import Refusal
from fusionnet.duality import (
    SeparabilityIdempotent,
    adjoint_defect,
    center_dimensions,
    dual_net,
    dualizability_report,
    finiteness_report,
    mu_index,
    separability_check,
    trivial_net,
)
from fusionnet.latticenet import BicoloredInterval, IdentityDefect, identity_sector

SEMISIMPLE = {
    "matrix-2": AbstractAlgebra.matrix_algebra(2),
    "matrix-3": AbstractAlgebra.matrix_algebra(3),
    "diagonal-4": AbstractAlgebra.diagonal(4),
}
NOT_SEPARABLE = {
    "dual-numbers": AbstractAlgebra.dual_numbers(),
    "upper-triangular": AbstractAlgebra.upper_triangular(),
}


def idempotent_residuals(A, e):
    """Bimodule-map and multiplication residuals of ``e`` checked directly on basis products."""
    k = A.dim
    E = np.eye(k)
    prod = lambda x, y: A.multiply(x, y)
    comm = 0.0
    for a in E:
        left = sum(e[i, j] * np.kron(prod(a, E[i]), E[j]) for i in range(k) for j in range(k))
        right = sum(e[i, j] * np.kron(E[i], prod(E[j], a)) for i in range(k) for j in range(k))
        comm = max(comm, float(np.linalg.norm(left - right)))
    mult = sum(e[i, j] * prod(E[i], E[j]) for i in range(k) for j in range(k))
    return comm, float(np.linalg.norm(mult - A.unit))


@pytest.mark.parametrize("name", sorted(SEMISIMPLE))
def test_semisimple_algebras_are_separable(name):
    A = SEMISIMPLE[name]
    cert = separability_check(A)
    assert isinstance(cert, SeparabilityIdempotent)
    comm, mult = idempotent_residuals(A, cert.element)
    assert comm < 1e-10 and mult < 1e-10


def test_matrix_idempotent_is_in_solution_space():
    A = AbstractAlgebra.matrix_algebra(2)
    e = oracles.matrix_algebra_idempotent(2)
    comm, mult = idempotent_residuals(A, e)
    assert comm < 1e-12 and mult < 1e-12
    assert separability_check(A).solution_space_dim > 0


@pytest.mark.parametrize("name", sorted(NOT_SEPARABLE))
def test_non_semisimple_algebras_are_refused(name):
    r = separability_check(NOT_SEPARABLE[name])
    assert isinstance(r, Refusal)
    w = r.witness
    assert w["adjoint_residual"] < 1e-10
    assert w["pairing"] > 0.1


@settings(max_examples=10, deadline=None)
@given(blocks=st.lists(st.integers(1, 2), min_size=1, max_size=3))
def test_block_algebras_are_separable(blocks):
    A = AbstractAlgebra.from_matrices(from_blocks([(n, 1) for n in blocks]).basis)
    assert separability_check(A).passes(1e-9)


def test_center_dimensions(tensor_net, orbifold_net):
    assert set(center_dimensions(tensor_net).values()) == {1}
    assert set(center_dimensions(orbifold_net).values()) == {2}


def test_net_finiteness(tensor_net, orbifold_net):
    assert finiteness_report(tensor_net)["finite"]
    rep = finiteness_report(orbifold_net)
    assert not rep["finite"]
    assert rep["irreducible"] is False and "note" in rep


def test_sector_finiteness(identity_defect):
    rep = finiteness_report(identity_sector(identity_defect))
    assert rep["finite"] and rep["statistical_dimension"] == 1.0


def test_finiteness_rejects_other_objects():
    with pytest.raises(TypeError):
        finiteness_report(3)


def test_unit_net_has_index_one():
    rep = mu_index(trivial_net(8))
    assert rep["mu_index"] == 1.0
    assert rep["multiplicity_matrix"] == [[1]]


def test_dual_net_flips_name_and_keeps_site(tensor_net):
    D = dual_net(tensor_net)
    assert D.name == "tensor^v"
    assert D.site.blocks == tensor_net.site.blocks


def test_adjoint_of_identity_matches_identity(tensor_net, identity_defect):
    A = adjoint_defect(identity_defect)
    I = BicoloredInterval(1, 2)
    assert A.algebra(I).distance(identity_defect.algebra(I)) < 1e-10
    assert A.describe()["of"]["kind"] == "identity"


@pytest.mark.slow
def test_orbifold_dualizability_is_refused(orbifold_net):
    rep = dualizability_report(orbifold_net)
    assert rep["verdict"] == "refused"
    kinds = {c["kind"]: c for c in rep["certificates"]}
    assert rep["mu_index"] == pytest.approx(4.0)
    assert rep["rep_sum_of_squares"] == pytest.approx(4.0)
    assert "refusal" in rep
    assert kinds["mu-equals-rep-dim"]["residual"] < 1e-9
    assert kinds["zigzag"]["reason"].startswith("skipped")
