"""Regenerate the CLI fixture corpus in ``tests/fixtures/cli``.

Each fixture is a JSON document; ``manifest.json`` lists the command lines
run over the corpus and the exit status each one must produce.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from fusionnet import io
from fusionnet.algebra import AbstractAlgebra
from fusionnet.latticenet.circle import LatticeCircle
from fusionnet.latticenet.sectors import Sector

OUT = Path(__file__).parent / "cli"


def net(d, n=8, **extra):
    return {"format_version": 1, "type": "net", "circle_edges": n, "site": {"full": d}, **extra}


def junction(q, name, d=1):
    return {"format_version": 1, "type": "defect", "kind": "junction", "name": name, "left": net(d), "junction": q}


def two_algebra(alg, mu, v):
    return {"format_version": 1, "type": "two_algebra", "algebra": alg, "mu": io.complex_array(mu), "v": io.complex_array(v)}


def diagonal_mu(k=2):
    # functions on k points with the diagonal comultiplication x -> (x, x)
    mu = np.zeros((k, k * k))
    for x in range(k):
        mu[x, x * k + x] = 1
    return mu


def dense_identity(defect_doc):
    """Explicit-action copy of the identity sector of a small defect."""
    S = io.parse_sector({"type": "sector", "kind": "identity", "defect": defect_doc})
    probe = Sector(LatticeCircle(S.circle.n), S.top, S.bottom)
    actions = []
    for arc in S.circle.sector_arcs():
        A, _ = probe.algebra(arc)
        imgs = [io.complex_array(S.action_matrix(arc, A.labels, B)) for B in A.dense().basis]
        actions.append({"arc": [arc.edges[0], arc.edges[-1]], "images": imgs})
    return {"format_version": 1, "type": "sector", "kind": "dense", "name": "dense_identity", "top": defect_doc, "space_dim": S.space_dim, "actions": actions}


def corpus() -> dict[str, dict | str]:
    j2, j3, j6 = (junction({"full": k}, f"J_M{k}") for k in (2, 3, 6))
    ident = {"format_version": 1, "type": "defect", "kind": "identity", "net": net(1)}
    vac = {"format_version": 1, "type": "sector", "kind": "identity", "defect": ident}
    dense = dense_identity(j2)
    pauli_x = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
    eye2 = [[[1, 0], [0, 0]], [[0, 0], [1, 0]]]
    return {
        "tensor_net_d2_n8.json": net(2, name="tensor"),
        "trivial_net_n8.json": net(1, name="trivial"),
        "net.json": net(1, name="trivial"),
        "orbifold_z2_d2_n8.json": net(2, name="orbifold", orbifold={"group": [eye2, pauli_x]}),
        "identity_defect.json": ident,
        "junction_m2.json": j2,
        "junction_m3.json": j3,
        "junction_m6.json": j6,
        "junction_nonfactor.json": junction({"diagonal": 2}, "J_C2"),
        "vacuum_sector.json": vac,
        "junction_m2_sector.json": {"format_version": 1, "type": "sector", "kind": "identity", "defect": j2},
        "dense_sector.json": dense,
        "corrupted_sector.json": {"format_version": 1, "type": "sector", "kind": "corrupted", "of": {"type": "sector", "kind": "identity", "defect": j2}, "arc": [1, 2], "seed": 3},
        "fiber_product_m2.json": {
            "format_version": 1,
            "type": "fiber_product",
            "U": {"full": 2},
            "W": {"full": 2},
            "right_V": {"source": {"full": 2}, "frame": io.complex_array(np.eye(2)), "multiplicities": [1]},
            "left_V": {"source": {"full": 2}, "frame": io.complex_array(np.eye(2)), "multiplicities": [1]},
        },
        "commutative_2algebra.json": two_algebra({"named": "diagonal", "n": 2}, diagonal_mu(), [1, 1]),
        "bad_pentagon.json": two_algebra({"named": "diagonal", "n": 2}, diagonal_mu(), [1, -1]),
        "scaled_2algebra.json": two_algebra({"named": "diagonal", "n": 2}, diagonal_mu(), [-3, -3]),
        "nonscalar_lambda.json": two_algebra({"named": "diagonal", "n": 2}, diagonal_mu(), [2, 3]),
        "matrix_algebra_3.json": {"format_version": 1, "named": "matrix_algebra", "n": 3},
        "diagonal_4.json": {"format_version": 1, "named": "diagonal", "n": 4},
        "dual_numbers.json": {"format_version": 1, "named": "dual_numbers"},
        "upper_triangular.json": {"format_version": 1, "named": "upper_triangular"},
        # schema errors
        "bad_circle.json": {"format_version": 1, "type": "net", "circle_edges": 12, "site": {"full": 2}},
        "bad_site.json": {"format_version": 1, "type": "net", "circle_edges": 8, "site": {"blocks": [[2, 1], [0, 1]]}},
        "bad_version.json": {"format_version": 7, "type": "net", "circle_edges": 8, "site": {"full": 2}},
        "bad_mu_shape.json": {"format_version": 1, "type": "two_algebra", "algebra": {"named": "diagonal", "n": 2}, "mu": [[[1, 0]]], "v": [[1, 0], [1, 0]]},
        "bad_json.json": '{"type": "net", "circle_edges": 8,\n',
    }


MANIFEST = [
    # (arguments, expected exit status)
    (["mu-index", "tensor_net_d2_n8.json"], 0),
    (["rep-category", "tensor_net_d2_n8.json"], 0),
    (["check-net", "trivial_net_n8.json"], 0),
    (["dualize", "net.json", "--tolerance", "1e-6"], 0),
    (["check-defect", "junction_m2.json"], 0),
    (["check-defect", "junction_nonfactor.json"], 1),
    (["check-sector", "dense_sector.json"], 0),
    (["check-sector", "corrupted_sector.json", "--format", "text"], 1),
    (["compose-defects", "identity_defect.json", "identity_defect.json", "--expect", "identity_defect.json"], 0),
    (["compose-defects", "junction_m2.json", "junction_m3.json", "--expect", "junction_m6.json"], 0),
    (["compose-defects", "junction_m2.json", "junction_m2.json", "--expect", "junction_m6.json"], 1),
    (["fuse-sectors", "vacuum_sector.json", "vacuum_sector.json", "--direction", "h"], 0),
    (["fiber-product", "fiber_product_m2.json"], 0),
    (["check-2algebra", "commutative_2algebra.json"], 0),
    (["check-2algebra", "bad_pentagon.json"], 1),
    (["pentagon-rescale", "scaled_2algebra.json"], 0),
    (["pentagon-rescale", "nonscalar_lambda.json"], 1),
    (["verify-l2-fusion", "junction_m2.json", "junction_m3.json"], 0),
    (["verify-interchange", "vacuum_sector.json", "vacuum_sector.json", "vacuum_sector.json", "vacuum_sector.json"], 0),
    (["separability", "matrix_algebra_3.json"], 0),
    (["separability", "diagonal_4.json", "--format", "text"], 0),
    (["separability", "dual_numbers.json"], 1),
    (["separability", "upper_triangular.json"], 1),
    (["check-net", "bad_circle.json"], 2),
    (["mu-index", "bad_site.json"], 2),
    (["mu-index", "bad_version.json"], 2),
    (["check-2algebra", "bad_mu_shape.json"], 2),
    (["check-net", "bad_json.json"], 2),
    (["check-net", "missing_file.json"], 2),
    (["check-net", "tensor_net_d2_n8.json", "--seed", "-1"], 2),
]


def main():
    OUT.mkdir(exist_ok=True)
    for name, doc in corpus().items():
        text = doc if isinstance(doc, str) else io.dumps(doc)
        (OUT / name).write_text(text, encoding="utf-8")
    manifest = [{"args": a, "exit": e} for a, e in MANIFEST]
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
