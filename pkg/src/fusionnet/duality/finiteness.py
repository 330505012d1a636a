"""Finiteness reports for nets, defects and sectors.

Every dimension in the lattice model is finite, so the reports return the
actual values: the μ-index and the irreducibility of arc algebras for
nets, the split extension and four-quarter dimension for defects, and the
statistical dimension for sectors.
"""
from __future__ import annotations

import numpy as np

from ..algebra import DEFAULT_TOL, AlgebraError, commutator_residual, join
from ..latticenet.circle import GeometryError
from ..latticenet.defects import Defect
from ..latticenet.nets import LatticeNet
from ..latticenet.sectors import LegSector, Sector, SectorError, identity_sector
from .adjunction import _image, sector_dimension
from .index import mu_index

__all__ = ["finiteness_report", "center_dimensions", "split_extension"]


def center_dimensions(net: LatticeNet) -> dict[int, int]:
    """Dimension of the center of ``N(I)`` for every arc length ``1 .. n−1``."""
    out = {}
    for L in range(1, net.n):
        A = net.local_algebra(L)
        out[L] = int(np.prod([len(F.blocks) for _, F in A.factors])) if A.factors else 1
    return out


def split_extension(S: Sector, *, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """Do the algebras of the quarters through ``+i`` and ``−i`` generate their tensor product?

    On a leg sector the two quarters sit on disjoint legs, which settles it
    structurally.  Otherwise the images are computed densely and the joint
    algebra's dimension is compared with the product of dimensions.
    """
    J = S.circle.quarters()
    top, bottom = J[1], J[3]
    if isinstance(S, LegSector):
        t = set(S.legs_of(S.algebra(top)[1].values()))
        b = set(S.legs_of(S.algebra(bottom)[1].values()))
        ok = not (t & b)
        return {"kind": "split-extension", "mode": "legs", "residual": 0.0 if ok else None, "passes": ok, "shared_legs": [repr(l) for l in sorted(t & b, key=repr)]}
    A = _image(S, top, tol)
    B = _image(S, bottom, tol)
    rng = np.random.default_rng(seed)
    xs = [A.random_element(rng) for _ in range(3)]
    ys = [B.random_element(rng) for _ in range(3)]
    r = commutator_residual(xs, ys)
    AB = join(A, B, tol=tol, seed=seed)
    ok = r < tol * 1e3 and AB.dim == A.dim * B.dim
    return {"kind": "split-extension", "mode": "dense", "residual": r, "joint_dim": AB.dim, "product_dim": A.dim * B.dim, "passes": ok}


def _net_report(N: LatticeNet, tol: float) -> dict:
    centers = center_dimensions(N)
    irreducible = all(c == 1 for c in centers.values())
    rep = {"subject": "net", "name": N.name, "center_dimensions": centers, "irreducible": irreducible}
    try:
        mu = mu_index(N, tol=tol)
        rep["mu_index"] = mu["mu_index"]
        rep["mu_conventions"] = mu["conventions"]
    except (GeometryError, AlgebraError) as exc:
        rep["mu_index"] = None
        rep["mu_reason"] = str(exc)
    if not irreducible:
        rep["note"] = "arc algebras have nontrivial centers; no splitting into irreducible nets is attempted"
    rep["finite"] = irreducible and rep["mu_index"] is not None
    return rep


def _defect_report(D: Defect, tol: float, seed: int) -> dict:
    rep = {"subject": "defect", "name": D.name}
    try:
        S = identity_sector(D)
    except SectorError as exc:
        return {**rep, "finite": False, "reason": str(exc)}
    rep["split_extension"] = split_extension(S, tol=tol, seed=seed)
    J = S.circle.quarters()
    try:
        q = sector_dimension(S, [J[0], J[2]], [J[1], J[3]], tol=tol)
        rep["four_quarter_dimension"] = q["value"]
        rep["four_quarter_mode"] = q["mode"]
    except (SectorError, AlgebraError) as exc:
        rep["four_quarter_dimension"] = None
        rep["four_quarter_reason"] = str(exc)
    rep["finite"] = rep["split_extension"]["passes"] and rep["four_quarter_dimension"] is not None
    return rep


def _sector_report(S: Sector, tol: float) -> dict:
    rep = {"subject": "sector", "name": S.name, "space_dim": S.space_dim}
    try:
        d = sector_dimension(S, tol=tol)
        rep["statistical_dimension"] = d["value"]
        rep["multiplicity_matrix"] = d["multiplicity_matrix"]
        rep["finite"] = True
    except (SectorError, AlgebraError) as exc:
        rep["statistical_dimension"] = None
        rep["reason"] = str(exc)
        rep["finite"] = False
    return rep


def finiteness_report(subject, *, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """Finiteness data for a net, a defect or a sector.

    ``finite`` is ``False`` only when a quantity could not be computed (or
    a net has reducible arc algebras); the reason is included.
    """
    if isinstance(subject, LatticeNet):
        return _net_report(subject, tol)
    if isinstance(subject, Defect):
        return _defect_report(subject, tol, seed)
    if isinstance(subject, Sector):
        return _sector_report(subject, tol)
    raise TypeError(f"cannot report finiteness of {type(subject).__name__}")
