import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fusionnet.algebra import diagonal_algebra, full_algebra
from fusionnet.latticenet import (
    BicoloredInterval,
    DefectError,
    GeometryError,
    IdentityDefect,
    LatticeCircle,
    apply_on_legs,
    build_defect,
    build_orbifold_net,
    build_tensor_net,
    check_defect_axioms,
    check_net_axioms,
    check_sector,
    compose_defects,
    corrupt_inclusion,
    corrupt_sector,
    direct_sum_sectors,
    group_closure,
    identity_sector,
    partial_trace,
    product_net,
    solve_extension,
)

# -- circle geometry ---------------------------------------------------------


@pytest.mark.parametrize("n", [3, 6, 0])
def test_circle_size_must_be_multiple_of_four(n):
    with pytest.raises(GeometryError):
        LatticeCircle(n)


def test_quarters_need_multiple_of_eight():
    with pytest.raises(GeometryError):
        LatticeCircle(12).quarters()


def test_quarters_tile_the_circle():
    c = LatticeCircle(16)
    edges = sorted(e for q in c.quarters() for e in q.edges)
    assert edges == list(range(16))
    assert c.quarters()[0].edges == (14, 15, 0, 1)


def test_marked_vertices_and_halves():
    c = LatticeCircle(8)
    assert (c.right, c.top, c.left, c.bottom) == (0, 2, 4, 6)
    assert c.upper.edges == (0, 1, 2, 3)
    assert c.lower.edges == (4, 5, 6, 7)
    assert set(c.left_half.edges) == {2, 3, 4, 5}
    assert [e for e in range(8) if c.is_white(e)] == [2, 3, 4, 5]


@settings(max_examples=50, deadline=None)
@given(k=st.integers(1, 4), e=st.integers(0, 63))
def test_reflections_are_involutions(k, e):
    c = LatticeCircle(8 * k)
    e %= c.n
    assert c.reflect_edge(c.reflect_edge(e)) == e
    assert c.mirror_edge(c.mirror_edge(e)) == e
    assert c.is_white(c.mirror_edge(e)) != c.is_white(e)


@settings(max_examples=50, deadline=None)
@given(s=st.integers(0, 7), l=st.integers(1, 7), s2=st.integers(0, 7), l2=st.integers(1, 7))
def test_arc_containment_matches_edge_sets(s, l, s2, l2):
    c = LatticeCircle(8)
    a, b = c.arc(s, l), c.arc(s2, l2)
    if a.contains(b):
        assert set(b.edges) <= set(a.edges)
        assert b.position_in(a) == a.edges.index(b.edges[0])
    assert a.disjoint_interiors(b) == (not set(a.edges) & set(b.edges))
    assert c.arc_from_edges(*a.as_list()) == a


def test_arc_bounds():
    c = LatticeCircle(8)
    with pytest.raises(GeometryError):
        c.arc(0, 8)
    a = c.arc(7, 3)
    assert a.edges == (7, 0, 1)
    assert a.boundary == (7, 2)
    assert a.interior_vertices == (0, 1)
    assert str(a) == "arc[7..1]"


def test_sector_arcs_avoid_marked_points():
    c = LatticeCircle(8)
    for a in c.sector_arcs():
        assert c.top not in a.boundary and c.bottom not in a.boundary
        assert not (a.contains_vertex(c.top) and a.contains_vertex(c.bottom))


# -- leg helpers -------------------------------------------------------------


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 999), pos=st.sampled_from([[0], [2], [1, 0], [0, 2]]))
def test_apply_on_legs_matches_kron(seed, pos):
    dims = [2, 3, 2]
    rng = np.random.default_rng(seed)
    sub = int(np.prod([dims[p] for p in pos]))
    op = rng.standard_normal((sub, sub))
    v = rng.standard_normal(12)
    # build the full operator by permuting legs into place
    rest = [i for i in range(3) if i not in pos]
    full = np.kron(op, np.eye(int(np.prod([dims[r] for r in rest]))))
    perm = list(pos) + rest
    T = full.reshape([dims[p] for p in perm] * 2)
    inv = np.argsort(perm)
    T = T.transpose(list(inv) + [3 + i for i in inv]).reshape(12, 12)
    assert np.allclose(apply_on_legs(op, pos, dims, v), T @ v)


def test_partial_trace_of_product():
    rng = np.random.default_rng(0)
    a, b = rng.standard_normal((2, 2)), rng.standard_normal((3, 3))
    x = np.kron(a, b)
    assert np.allclose(partial_trace(x, [0], [2, 3]), a * np.trace(b))
    assert np.allclose(partial_trace(x, [1], [2, 3]), b * np.trace(a))


# -- nets ----------------------------------------------------------------------


def test_group_closure_sizes():
    Z = np.diag([1.0, -1.0])
    X = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert len(group_closure([Z])) == 2
    assert len(group_closure([Z, X])) == 8  # Pauli group modulo nothing: ±1, ±Z, ±X, ±ZX


def test_solve_extension():
    assert solve_extension([[1, 1], [0, 1]], [3, 1]).tolist() == [2, 1]
    assert solve_extension([[2]], [3]) is None


def test_tensor_net_local_algebras(tensor_net):
    A = tensor_net.local_algebra(3)
    assert A.ambient_dim == 8
    assert A.is_full()
    c = LatticeCircle(8)
    assert tensor_net.algebra(c.arc(1, 2)).dims == (2, 2)


def test_orbifold_local_algebra_is_fixed_points(orbifold_net):
    A = orbifold_net.local_algebra(2).dense()
    Z = np.kron(np.diag([1, -1]), np.diag([1, -1]))
    assert sorted(A.blocks) == [(2, 1), (2, 1)]
    for x in A.basis:
        assert np.allclose(Z @ x @ Z, x)


def test_trivial_net_axioms(trivial_net):
    report = check_net_axioms(trivial_net)
    assert report["passes"], {k: v["counterexample"] for k, v in report["axioms"].items()}


def test_corruption_needs_a_non_factor_arc(tensor_net):
    bad = corrupt_inclusion(tensor_net, LatticeCircle(8).arc(1, 1))
    with pytest.raises(Exception):
        bad.inclusion(LatticeCircle(8).arc(1, 1), LatticeCircle(8).arc(0, 2))


@pytest.mark.slow
def test_corrupted_inclusion_is_caught(orbifold_net):
    bad = corrupt_inclusion(orbifold_net, LatticeCircle(8).arc(1, 1))
    report = check_net_axioms(bad, dense_limit=16)
    assert not report["passes"]
    iso = report["axioms"]["isotony"]
    assert iso["counterexample"] == {"arcs": [[1, 1], [0, 1]], "reason": "inclusion kills a block"}


def test_product_net_site(tensor_net, trivial_net):
    P = product_net(tensor_net, trivial_net)
    assert P.site_dim == 2
    assert P.local_algebra(2).ambient_dim == 4


# -- defects -------------------------------------------------------------------


def test_bicolored_interval_validation():
    with pytest.raises(Exception):
        BicoloredInterval(0, 0)
    I = BicoloredInterval(2, 1)
    assert I.genuine and I.length == 3
    assert I.edge_labels() == [("w", 2), ("w", 1), ("b", 1)]
    assert not BicoloredInterval(2, 0).genuine


def test_junction_adds_q_leg(junctions):
    J = junctions[3]
    A = J.algebra(BicoloredInterval(1, 1))
    assert A.dims == (2, 3, 2)
    assert J.leg_order(BicoloredInterval(1, 1, "black_first")) == list(reversed(J.leg_order(BicoloredInterval(1, 1))))


def test_junction_axioms_on_trivial_net(trivial_net):
    J = build_defect("junction", {"left": trivial_net, "right": trivial_net, "Q": full_algebra(2)})
    assert check_defect_axioms(J)["passes"]


def test_non_factor_junction_is_refused(trivial_net):
    with pytest.raises(DefectError) as exc:
        build_defect("junction", {"left": trivial_net, "right": trivial_net, "Q": diagonal_algebra(2)})
    assert exc.value.witness


def test_unknown_defect_kind(trivial_net):
    with pytest.raises(DefectError):
        build_defect("wormhole", {"net": trivial_net})


def test_identity_defect_matches_net(tensor_net, identity_defect):
    A = identity_defect.algebra(BicoloredInterval(2, 1))
    assert A.is_full() and A.ambient_dim == 8


def test_composite_counts_legs(junctions):
    C = compose_defects(junctions[2], junctions[3])
    A = C.algebra(BicoloredInterval(1, 1))
    assert A.labels == (("w", 1), (0, "Q"), (1, "Q"), ("b", 1))
    assert A.dims == (2, 2, 3, 2)


# -- sectors -------------------------------------------------------------------


def test_vacuum_sector_is_consistent(identity_defect):
    S = identity_sector(identity_defect)
    report = check_sector(S)
    assert report["passes"]
    assert report["compatibility"]["checked"] > 0


def test_corrupted_sector_has_counterexample(identity_defect):
    S = identity_sector(identity_defect)
    arc = LatticeCircle(8).arc_from_edges(1, 2)
    report = check_sector(corrupt_sector(S, arc, seed=3))
    assert not report["passes"]


def test_direct_sum_adds_dimensions(junctions):
    S = identity_sector(junctions[2])
    T = direct_sum_sectors(S, S)
    assert T.space_dim == 2 * S.space_dim
