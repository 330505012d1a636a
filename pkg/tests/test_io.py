import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import FIXTURES
from fusionnet import io
from fusionnet.algebra import AbstractAlgebra, from_blocks, full_algebra
from fusionnet.latticenet import DefectError, build_defect, build_orbifold_net, build_tensor_net, identity_sector
from fusionnet.twoalgebra import matrix_character_two_algebra


def round_trip(doc):
    return json.loads(io.dumps(doc))


def load(name):
    return json.loads((FIXTURES / name).read_text())


@pytest.mark.parametrize("blocks", [[(1, 1)], [(2, 1), (1, 2)], [(3, 1)]])
def test_algebra_round_trip(blocks):
    A = from_blocks(blocks)
    B = io.parse_algebra(round_trip(io.dump_algebra(A)))
    assert B.blocks == A.blocks
    assert B.same_as(A)


@pytest.mark.parametrize("doc, blocks", [({"full": 3}, ((3, 1),)), ({"diagonal": 2}, ((1, 1), (1, 1))), ({"blocks": [[2, 2]]}, ((2, 2),))])
def test_algebra_shorthands(doc, blocks):
    assert io.parse_algebra(doc).blocks == blocks


def test_abstract_algebra_round_trip():
    A = AbstractAlgebra.upper_triangular()
    B = io.parse_abstract_algebra(round_trip(io.dump_abstract_algebra(A)))
    assert np.allclose(B.unit, A.unit)
    x, y = np.array([1, 2, 3]), np.array([0, -1, 2])
    assert np.allclose(B.multiply(x, y), A.multiply(x, y))


@pytest.mark.parametrize("name, dim", [("matrix_algebra", 4), ("diagonal", 2), ("dual_numbers", 2), ("upper_triangular", 3)])
def test_named_abstract_algebras(name, dim):
    assert io.parse_abstract_algebra({"named": name, "n": 2}).dim == dim


def test_net_round_trip():
    N = build_orbifold_net(build_tensor_net(8, full_algebra(2)), [np.diag([1.0, -1.0])])
    M = io.parse_net(round_trip(io.dump_net(N)))
    assert M.n == 8 and M.is_orbifold
    assert M.site.same_as(N.site)


def test_defect_and_sector_round_trip():
    N = build_tensor_net(8, full_algebra(1))
    J = build_defect("junction", {"left": N, "right": N, "Q": full_algebra(2), "name": "J"})
    K = io.parse_defect(round_trip(io.dump_defect(J)))
    assert K.kind == "junction" and K.name == "J"
    S = io.parse_sector(round_trip(io.dump_sector(identity_sector(J))))
    assert S.space_dim == identity_sector(J).space_dim


def test_two_algebra_round_trip():
    T = matrix_character_two_algebra(2)
    U = io.parse_two_algebra(round_trip(io.dump_two_algebra(T)))
    assert np.allclose(U.mu, T.mu) and np.allclose(U.v, T.v)


@pytest.mark.parametrize(
    "name, path",
    [
        ("bad_circle.json", "$.circle_edges"),
        ("bad_site.json", "$.site"),
        ("bad_mu_shape.json", "$.mu"),
    ],
)
def test_schema_errors_name_the_field(name, path):
    doc = load(name)
    parser = io.parse_two_algebra if doc.get("type") == "two_algebra" else io.parse_net
    with pytest.raises(io.SchemaError) as exc:
        parser(doc)
    assert exc.value.path.startswith(path)


@pytest.mark.parametrize(
    "doc, path",
    [
        ({"type": "net", "circle_edges": "8", "site": {"full": 2}}, "$.circle_edges"),
        ({"type": "net", "site": {"full": 2}}, "$.circle_edges"),
        ({"type": "net", "circle_edges": 8, "site": {"full": 2}, "orbifold": {"group": [[[1, 0]]]}}, "$.orbifold"),
        ({"type": "net", "circle_edges": 8, "site": {"full": 2}, "format_version": 2}, "$.format_version"),
    ],
)
def test_net_schema_paths(doc, path):
    with pytest.raises(io.SchemaError) as exc:
        io.parse_net(doc)
    assert exc.value.path.startswith(path)


def test_non_factor_junction_keeps_defect_error():
    with pytest.raises(DefectError):
        io.parse_defect(load("junction_nonfactor.json"))


def test_unknown_defect_kind_is_schema_error():
    doc = load("junction_m2.json") | {"kind": "wormhole"}
    with pytest.raises(io.SchemaError):
        io.parse_defect(doc)


@given(st.complex_numbers(allow_nan=False, allow_infinity=False, max_magnitude=1e6))
def test_complex_numbers_round_trip(z):
    enc = io.encode(np.array([z]))
    back = io.parse_complex(enc[0], "$")
    assert abs(back - z) <= 1e-11 * max(1.0, abs(z))


@pytest.mark.parametrize("bad", ["1", [1], [1, 2, 3], [True, 0], None])
def test_complex_parse_rejects(bad):
    with pytest.raises(io.SchemaError):
        io.parse_complex(bad, "$.x")


def test_matrix_shape_errors():
    with pytest.raises(io.SchemaError):
        io.parse_complex_matrix([[1, 2], [3]], "$.m")
    with pytest.raises(io.SchemaError):
        io.parse_complex_matrix([[1, 2]], "$.m", shape=(2, 2))
    with pytest.raises(io.SchemaError):
        io.parse_complex_matrix([], "$.m")


def test_dumps_is_canonical():
    a = {"b": 1.0 / 3.0, "a": [np.float64(0.1) + 0.2, -0.0, np.inf], "c": np.array([1j])}
    text = io.dumps(a)
    assert text.endswith("\n")
    assert list(json.loads(text)) == ["a", "b", "c"]
    assert json.loads(text)["a"] == [0.3, 0.0, "inf"]
    assert json.loads(text)["c"] == [[0.0, 1.0]]
    assert io.dumps(a) == text
