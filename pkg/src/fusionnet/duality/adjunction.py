"""Sectors for dualities: bridges, conjugates, statistical dimensions, zigzags and triangles."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from ..algebra import DEFAULT_TOL, AlgebraError, StarHomomorphism, join
from ..latticenet.circle import Arc, LatticeCircle
from ..latticenet.defects import BLACK_FIRST, BicoloredInterval, CompositeDefect, Defect, DefectError, IdentityDefect
from ..latticenet.nets import LatticeNet
from ..latticenet.sectors import (
    DENSE_SECTOR_LIMIT,
    LegSector,
    Sector,
    SectorError,
    fuse_sectors,
    identity_sector,
    same_defect,
    sector_certificate,
)
from .folds import TensorDefect, adjoint_defect, dual_net, unit_counit_defects

__all__ = [
    "STATDIM_CONVENTION",
    "bridge_sector",
    "conjugate_sector",
    "ConjugateSector",
    "sector_dimension",
    "invertibility_certificate",
    "zigzag_check",
    "adjunction_sectors",
    "triangle_certificates",
    "conjugate_certificates",
]

STATDIM_CONVENTION = (
    "statistical dimension of a bimodule = operator 2-norm of its multiplicity matrix "
    "(the multiplicity itself when both algebras are factors)"
)


def bridge_sector(top: Defect, bottom: Defect, name: str | None = None) -> LegSector:
    """Sector on ``⊗ (legs of top(S¹₊)) ⊗ (legs of bottom(S¹₊))``.

    Upper positions sit on the row legs of ``top``, lower positions on the
    column legs of ``bottom`` through the reflection.  Needs both upper-half
    algebras to be full matrix algebras; ``bridge_sector(D, D)`` is the
    identity sector of ``D``.
    """
    n = top.n
    if n != bottom.n:
        raise SectorError("defects on different circles")
    circle = LatticeCircle(n)
    q = n // 4
    upper = BicoloredInterval(q, q, BLACK_FIRST)
    A, B = top.algebra(upper), bottom.algebra(upper)
    if not (A.is_full() and B.is_full()):
        raise SectorError("bridge sectors need full upper-half algebras on both defects")
    legs = [(("row", l), d) for l, d in A.legs] + [(("col", l), d) for l, d in B.legs]
    sites = {}
    for k in range(n):
        r = k if k < 2 * q else circle.reflect_edge(k)
        lab = ("b", q - r) if r < q else ("w", r - q + 1)
        sites[("edge", k)] = ("row", lab) if k < 2 * q else ("col", lab)
    for l, _ in top.junction_legs():
        sites[("top", l)] = ("row", l)
    for l, _ in bottom.junction_legs():
        sites[("bottom", l)] = ("col", l)
    return LegSector(circle, top, bottom, legs, sites, name or f"[{top.name}=>{bottom.name}]")


class ConjugateSector(Sector):
    """``H̄``: the complex-conjugate space, arcs reflected across the real axis.

    ``x`` acts on ``v̄`` as the conjugate of ``x̄`` acting on ``v`` through
    the reflected arc (``d v̄ = conj(d* v)`` with ``d* = x̄ᵀ`` and the
    transpose absorbed by the reflection).
    """

    def __init__(self, H: Sector, name: str | None = None):
        super().__init__(H.circle, H.bottom, H.top, name or f"{H.name}-bar")
        self.H = H

    @property
    def space_dim(self) -> int:
        return self.H.space_dim

    def _reflected(self, arc: Arc) -> Arc:
        c = self.circle
        return c.arc_from_edges(c.reflect_edge(arc.edges[-1]), c.reflect_edge(arc.edges[0]))

    def apply(self, arc, labels, op, v):
        r = self._reflected(arc)
        if not (arc.contains_vertex(self.circle.top) or arc.contains_vertex(self.circle.bottom)):
            # monochrome arcs are labelled by counterclockwise position, which reflection reverses
            labels = [arc.length - 1 - l for l in labels]
        return np.conj(self.H.apply(r, labels, np.conj(op), np.conj(v)))


def conjugate_sector(H: Sector) -> Sector:
    """Conjugate sector; leg sectors stay leg sectors (positions are reflected)."""
    if isinstance(H, ConjugateSector):
        return ConjugateSector(H, name=f"{H.name}-bar")
    if not isinstance(H, LegSector):
        return ConjugateSector(H)
    c = H.circle
    sites = {}
    for key in H.sites:
        kind, x = key
        if kind == "edge":
            sites[key] = H.sites[("edge", c.reflect_edge(x))]
        elif kind == "top":
            sites[("bottom", x)] = H.sites[key]
        else:
            sites[("top", x)] = H.sites[key]
    return LegSector(c, H.bottom, H.top, H.legs, sites, name=f"{H.name}-bar")


# -- statistical dimensions ---------------------------------------------------

def _image(S: Sector, arc: Arc, tol: float):
    A, _ = S.algebra(arc)
    Ad = A.dense()
    hom = StarHomomorphism.from_function(Ad, lambda x: S.action_matrix(arc, A.labels, x), S.space_dim, tol=tol)
    return hom.image()


def _generated(S: Sector, arcs: Sequence[Arc], tol: float):
    imgs = [_image(S, a, tol) for a in arcs]
    out = imgs[0]
    for B in imgs[1:]:
        out = join(out, B, tol=tol)
    return out


def sector_dimension(S: Sector, left: Sequence[Arc] | None = None, right: Sequence[Arc] | None = None, *, tol: float = DEFAULT_TOL) -> dict:
    """Statistical dimension of ``S`` as a bimodule between the algebras of two arc families.

    Defaults to the upper half against the lower half.  Arcs within a
    family must have disjoint interiors and the two families must commute.
    For leg sectors whose arc algebras are full matrix algebras the
    multiplicity is the dimension of the legs hosting no position of either
    family; otherwise the multiplicity matrix is computed from the central
    projections of the two generated algebras.
    """
    c = S.circle
    left = list(left or [c.upper])
    right = list(right or [c.lower])
    if isinstance(S, LegSector):
        algs = [S.algebra(a) for a in left + right]
        if all(A.is_full() for A, _ in algs):
            lhost = {S.sites[p] for A, pos in algs[: len(left)] for p in pos.values()}
            rhost = {S.sites[p] for A, pos in algs[len(left) :] for p in pos.values()}
            if not lhost & rhost:
                free = [d for l, d in S.legs if l not in lhost | rhost]
                mult = int(np.prod(free)) if free else 1
                return {
                    "value": float(mult),
                    "multiplicity_matrix": [[mult]],
                    "factors": True,
                    "mode": "legs",
                    "convention": STATDIM_CONVENTION,
                }
    if S.space_dim > DENSE_SECTOR_LIMIT:
        raise SectorError(f"sector of dimension {S.space_dim} is too large for a dense dimension count")
    L = _generated(S, left, tol)
    R = _generated(S, right, tol)
    C = np.zeros((len(L.blocks), len(R.blocks)), dtype=int)
    for i, (z, (n, _)) in enumerate(zip(L.central_projections, L.blocks)):
        for j, (w, (m, _)) in enumerate(zip(R.central_projections, R.blocks)):
            val = np.trace(z @ w).real / (n * m)
            if abs(val - round(val)) > 1e-6:
                raise AlgebraError(f"non-integer multiplicity {val}")
            C[i, j] = int(round(val))
    value = float(C[0, 0]) if C.shape == (1, 1) else float(np.linalg.norm(C, 2))
    return {
        "value": value,
        "multiplicity_matrix": C.tolist(),
        "factors": C.shape == (1, 1),
        "mode": "dense",
        "convention": STATDIM_CONVENTION,
    }


# -- invertibility, zigzags and triangles -----------------------------------------

def invertibility_certificate(H: LegSector, *, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """``H ∘v H̄ ≅ 1_top`` and ``H̄ ∘v H ≅ 1_bottom`` by leg identification."""
    Hb = conjugate_sector(H)
    one = sector_certificate(fuse_sectors("v", H, Hb), identity_sector(H.top), tol=tol, seed=seed)
    two = sector_certificate(fuse_sectors("v", Hb, H), identity_sector(H.bottom), tol=tol, seed=seed)
    res = [c["residual"] for c in (one, two)]
    return {
        "kind": "invertible-sector",
        "sector": H.name,
        "space_dim": H.space_dim,
        "residual": None if None in res else max(res),
        "passes": one["passes"] and two["passes"],
        "composites": [one, two],
    }


def _snakes(N: LatticeNet):
    Du, Dv = unit_counit_defects(N)
    one = IdentityDefect(N)
    onev = IdentityDefect(dual_net(N))
    Duv = unit_counit_defects(dual_net(N))
    first = CompositeDefect(TensorDefect(one, Du), TensorDefect(Dv, one), name=f"snake_{N.name}")
    second = CompositeDefect(TensorDefect(Du, onev), TensorDefect(onev, Dv), name=f"snake_{N.name}^v")
    return [(first, one), (second, onev)]


def zigzag_check(N: LatticeNet, *, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """Both snake composites of the fold defects, each linked to the identity by an invertible sector.

    ``(1 ⊗ D_u) ⊛ (D_v ⊗ 1)`` is a defect ``N → N`` whose junction carries
    the two folds; the bridge sector to ``1_N`` is certified invertible by
    fusing it with its conjugate in both orders.
    """
    out = {"kind": "zigzag", "net": N.name, "steps": []}
    ok = True
    worst = 0.0
    try:
        snakes = _snakes(N)
    except (DefectError, AlgebraError) as exc:
        return {**out, "passes": False, "residual": None, "reason": str(exc)}
    for S, one in snakes:
        step = {"snake": S.name, "junction_legs": len(S.junction_legs())}
        try:
            H = bridge_sector(S, one)
            cert = invertibility_certificate(H, tol=tol, seed=seed)
        except (SectorError, AlgebraError) as exc:
            step.update(passes=False, reason=str(exc), residual=None)
            ok = False
            out["steps"].append(step)
            continue
        step.update(passes=cert["passes"], residual=cert["residual"], certificate=cert)
        ok &= cert["passes"]
        worst = max(worst, cert["residual"] if cert["residual"] is not None else float("inf"))
        out["steps"].append(step)
    return {**out, "passes": ok, "residual": worst}


def adjunction_sectors(D: Defect) -> dict:
    """Counits and units for ``D ⊣ D†`` and ``D† ⊣ D`` as bridge sectors."""
    Dd = adjoint_defect(D)
    DDd = CompositeDefect(D, Dd)
    DdD = CompositeDefect(Dd, D)
    oneN, oneM = IdentityDefect(D.left), IdentityDefect(D.right)
    return {
        "adjoint": Dd,
        "counit": bridge_sector(DDd, oneN, name=f"counit({D.name})"),
        "unit": bridge_sector(oneM, DdD, name=f"unit({D.name})"),
        "counit_dagger": bridge_sector(DdD, oneM, name=f"counit({Dd.name})"),
        "unit_dagger": bridge_sector(oneN, DDd, name=f"unit({Dd.name})"),
    }


def _strip(side: int):
    """Position map sending the junction legs of ``1 ⊛ X`` or ``X ⊛ 1`` to those of ``X``."""

    def f(key):
        kind, x = key
        if kind in ("top", "bottom"):
            tag, l = x
            return (kind, l)
        return key

    return f


def _triangle(D: Defect, unit: LegSector, counit: LegSector, tol, seed) -> dict:
    """``D ⊛ 1 ⇒ D ⊛ (D† ⊛ D) ≅ (D ⊛ D†) ⊛ D ⇒ 1 ⊛ D`` against the identity sector of ``D``."""
    one = identity_sector(D)
    left = fuse_sectors("h", one, unit)
    right = fuse_sectors("h", counit, one)
    assoc = bridge_sector(left.bottom, right.top, name="associator")
    T = fuse_sectors("v", fuse_sectors("v", left, assoc), right)
    # top is D ⊛ 1 (junction legs (0, l)); bottom is 1 ⊛ D (junction legs (1, l))
    cert = sector_certificate(T, one, tol=tol, seed=seed, position_map=_strip(0))
    cert["kind"] = "triangle"
    cert["defect"] = D.name
    cert["associator_invertible"] = invertibility_certificate(assoc, tol=tol, seed=seed)["passes"]
    cert["passes"] = cert["passes"] and cert["associator_invertible"]
    return cert


def triangle_certificates(D: Defect, *, tol: float = DEFAULT_TOL, seed: int = 0) -> list[dict]:
    """Triangle identities for ``D ⊣ D†`` and ``D† ⊣ D`` up to invertible sectors."""
    adj = adjunction_sectors(D)
    Dd = adj["adjoint"]
    return [
        _triangle(D, adj["unit"], adj["counit"], tol, seed),
        _triangle(Dd, adj["unit_dagger"], adj["counit_dagger"], tol, seed),
    ]


def conjugate_certificates(H: Sector, *, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """``H̄̄ ≅ H`` and equal statistical dimensions; for identity sectors also ``H̄ ≅ H``."""
    Hb = conjugate_sector(H)
    Hbb = conjugate_sector(Hb)
    out = {"kind": "conjugate"}
    if isinstance(H, LegSector) and isinstance(Hbb, LegSector):
        out["involution"] = sector_certificate(Hbb, H, tol=tol, seed=seed)
    else:
        out["involution"] = sector_certificate(Hbb, H, np.eye(H.space_dim), tol=tol, seed=seed)
    if same_defect(H.top, H.bottom) and isinstance(H, LegSector):
        out["self_conjugate"] = sector_certificate(Hb, H, tol=tol, seed=seed)
    d1, d2 = sector_dimension(H)["value"], sector_dimension(Hb)["value"]
    out["dimensions"] = [d1, d2]
    checks = [out["involution"]] + ([out["self_conjugate"]] if "self_conjugate" in out else [])
    out["residual"] = max(c["residual"] if c["residual"] is not None else float("inf") for c in checks)
    out["passes"] = all(c["passes"] for c in checks) and abs(d1 - d2) < 1e-9
    return out
