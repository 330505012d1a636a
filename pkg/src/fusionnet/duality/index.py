"""μ-index, vacuum and twisted sectors of nets, and enumeration of vacuum endosectors."""
from __future__ import annotations

import itertools

import numpy as np
import scipy.linalg as sla

from ..algebra import DEFAULT_TOL, AlgebraError, commutant, generate_closure
from ..latticenet.circle import GeometryError, LatticeCircle
from ..latticenet.defects import BLACK_FIRST, BicoloredInterval, IdentityDefect
from ..latticenet.nets import LatticeNet, group_closure
from ..latticenet.sectors import (
    DENSE_SECTOR_LIMIT,
    DenseSector,
    LegSector,
    Sector,
    SectorError,
    fuse_sectors,
    identity_sector,
    sector_certificate,
)
from .adjunction import STATDIM_CONVENTION, _image, sector_dimension

__all__ = [
    "vacuum_sector",
    "SubSector",
    "TwistedSector",
    "parent_vacuum",
    "sector_commutant",
    "decompose_sector",
    "equivalent_sectors",
    "mu_index",
    "rep_category",
    "RepCategoryBound",
]


class SubSector(Sector):
    """Compression of a sector to an invariant subspace with orthonormal basis ``Q``."""

    def __init__(self, S: Sector, Q: np.ndarray, name: str | None = None):
        super().__init__(S.circle, S.top, S.bottom, name or f"{S.name}|{Q.shape[1]}")
        self.S = S
        self.Q = np.asarray(Q, dtype=complex)

    @property
    def space_dim(self) -> int:
        return self.Q.shape[1]

    def apply(self, arc, labels, op, v):
        return self.Q.conj().T @ self.S.apply(arc, labels, op, self.Q @ v)

    def leakage(self, seed: int = 0) -> float:
        """Largest component of an action leaving the subspace (zero for an invariant subspace)."""
        rng = np.random.default_rng(seed)
        v = self.Q @ (rng.standard_normal((self.space_dim, 2)) + 0j)
        worst = 0.0
        for arc in self.arcs():
            A, _ = self.algebra(arc)
            for labs, g in A.local_generators():
                w = self.S.apply(arc, labs, g, v)
                worst = max(worst, float(np.linalg.norm(w - self.Q @ (self.Q.conj().T @ w))))
        return worst


class TwistedSector(Sector):
    """Sector twisted by a site unitary ``u`` across the point −i.

    Arcs through −i act through ``Ad(u^{⊗ black legs})``; other arcs act as
    in ``base``.  For a net of ``u``-invariant algebras this is again a
    sector, the lattice version of a twisted representation.
    """

    def __init__(self, base: Sector, u: np.ndarray, name: str | None = None):
        super().__init__(base.circle, base.top, base.bottom, name or f"{base.name}^u")
        self.base = base
        self.u = np.asarray(u, dtype=complex)

    @property
    def space_dim(self) -> int:
        return self.base.space_dim

    def apply(self, arc, labels, op, v):
        if arc.contains_vertex(self.circle.bottom):
            U = np.ones((1, 1), dtype=complex)
            d = self.u.shape[0]
            for l in labels:
                black = isinstance(l, tuple) and len(l) == 2 and l[0] == "b"
                U = np.kron(U, self.u if black else np.eye(d))
            op = U @ op @ U.conj().T
        return self.base.apply(arc, labels, op, v)


def parent_vacuum(net: LatticeNet) -> LegSector:
    """The identity-sector leg layout of the net without its symmetry, acted on by ``net``.

    Every arc algebra of ``net`` sits inside the full tensor algebra on its
    edges, so it acts by the same leg placements as the parent net.
    """
    c = net.circle
    parent = LatticeNet(c, net.site, name=f"{net.name}_parent", tol=net.tol)
    P = identity_sector(IdentityDefect(parent))
    one = IdentityDefect(net)
    return LegSector(c, one, one, P.legs, P.sites, name=f"L2({parent.name})|{net.name}")


def vacuum_sector(net: LatticeNet, *, tol: float = DEFAULT_TOL) -> Sector:
    """``L²(N(S¹₊))`` with upper arcs acting on the left and lower arcs through the reflection.

    Full upper-half algebras give the identity leg sector.  Otherwise the
    space is ``vec(N(S¹₊))`` inside the parent layout, spanned by the
    normalized matrix units.
    """
    one = IdentityDefect(net)
    q = net.n // 4
    A = one.algebra(BicoloredInterval(q, q, BLACK_FIRST))
    if A.is_full():
        return identity_sector(one)
    P = parent_vacuum(net)
    if P.space_dim > DENSE_SECTOR_LIMIT * 16:
        raise SectorError("vacuum space too large")
    Ad = A.dense()
    cols = []
    for i, (n, m) in enumerate(Ad.blocks):
        for a in range(n):
            for b in range(n):
                cols.append(Ad.matrix_unit(i, a, b).reshape(-1) / np.sqrt(m))
    Q = np.array(cols).T
    S = SubSector(P, Q, name=f"L2({net.name})")
    if S.leakage() > tol * 1e3:
        raise SectorError("vec(N(S¹₊)) is not invariant under the arc actions")
    return S


def _max_arcs(circle: LatticeCircle):
    """The two maximal admissible arcs; every admissible arc lies in one of them."""
    n, b = circle.n, circle.bottom
    t = circle.top
    return circle.arc(b + 1, n - 2), circle.arc(t + 1, n - 2)


def sector_commutant(S: Sector, *, tol: float = DEFAULT_TOL, seed: int = 0):
    """Commutant of all arc actions, as a :class:`RepresentedAlgebra` on the sector space.

    By compatibility the actions are generated by the two maximal admissible
    arcs.  The commutant of the first is computed structurally; the
    elements of it commuting with the second are found from a randomized
    linear system.
    """
    if S.space_dim > DENSE_SECTOR_LIMIT:
        raise SectorError(f"sector of dimension {S.space_dim} is too large for a dense commutant")
    a1, a2 = _max_arcs(S.circle)
    C1 = commutant(_image(S, a1, tol))
    basis = C1.basis
    rng = np.random.default_rng(seed)
    D = S.space_dim
    V = rng.standard_normal((D, 4)) + 1j * rng.standard_normal((D, 4))
    A2, _ = S.algebra(a2)
    rows = []
    for labs, g in A2.local_generators():
        G = S.action_matrix(a2, labs, g)
        GV = G @ V
        rows.append(np.stack([(B @ GV - G @ (B @ V)).reshape(-1) for B in basis], axis=1))
    M = np.vstack(rows) if rows else np.zeros((1, len(basis)))
    _, s, vh = np.linalg.svd(M, full_matrices=False)
    scale = max(1.0, s[0] if len(s) else 1.0)
    rank = int(np.sum(s > tol * 1e3 * scale))
    null = vh[rank:].conj().T
    elems = [sum(c * B for c, B in zip(col, basis)) for col in null.T]
    if not elems:
        raise AlgebraError("empty commutant")
    return generate_closure(elems + [np.eye(D, dtype=complex)], D, tol=tol, seed=seed)


def decompose_sector(S: Sector, *, tol: float = DEFAULT_TOL, seed: int = 0) -> list[dict]:
    """Irreducible summands ``{"sector", "multiplicity"}`` read off from the commutant's blocks."""
    C = sector_commutant(S, tol=tol, seed=seed)
    out = []
    for i, (n, m) in enumerate(C.blocks):
        f = C.block_frame(i)
        out.append({"sector": SubSector(S, f[:, :m], name=f"{S.name}#{i}"), "multiplicity": n})
    return out


def _signature(S: Sector, seed: int) -> np.ndarray:
    """Spectrum of ``ρ(x1) + ρ(x2)`` for seeded hermitian ``x_i`` on the maximal arcs.

    A unitary invariant of the sector; mixing the two arcs makes it sensitive
    to their relative position.
    """
    rng = np.random.default_rng(seed)
    H = np.zeros((S.space_dim, S.space_dim), dtype=complex)
    for arc in _max_arcs(S.circle):
        A, _ = S.algebra(arc)
        x = A.dense().random_element(rng, hermitian=True)
        H += S.action_matrix(arc, A.labels, x)
    return np.linalg.eigvalsh(H)


def equivalent_sectors(S1: Sector, S2: Sector, *, tol: float = DEFAULT_TOL, seed: int = 0) -> bool:
    """Irreducible ``S1 ≅ S2`` iff the commutant of ``S1 ⊕ S2`` is two by two matrices.

    Sectors whose seeded spectral signatures differ are told apart first.
    """
    if S1.space_dim != S2.space_dim:
        return False
    s1, s2 = _signature(S1, seed), _signature(S2, seed)
    if np.max(np.abs(s1 - s2)) > 1e-6 * max(1.0, np.max(np.abs(s1))):
        return False
    d = S1.space_dim + S2.space_dim

    def action(arc, labels, op):
        return sla.block_diag(S1.action_matrix(arc, labels, op), S2.action_matrix(arc, labels, op))

    Sum = DenseSector(S1.circle, S1.top, S1.bottom, d, action, name="sum")
    C = sector_commutant(Sum, tol=tol, seed=seed)
    return C.dim == 4


def _check_geometry(net: LatticeNet):
    if net.n % 8:
        raise GeometryError(f"quarter arcs need n divisible by 8, got {net.n}")


def mu_index(net: LatticeNet, *, tol: float = DEFAULT_TOL) -> dict:
    """``μ = d²`` with ``d`` the statistical dimension of the vacuum as a four-quarter bimodule.

    The vacuum ``L²(N(S¹₊))`` carries ``N(J1) ⊗ N(J3)`` on the left and
    ``N(J2)^op ⊗ N(J4)^op`` on the right, with ``J1..J4`` the quarters
    centred on ``+1, +i, −1, −i``.  Quarters through ``±1`` act partly on
    the left (upper edges) and partly through the reflection (lower edges).
    For product nets the multiplicity matrix is the Kronecker product of
    the factors' matrices, so the computation runs factor by factor.

    When a quarter algebra is not a factor the multiplicity is a matrix and
    its operator norm is used; the report says so under ``conventions``.
    """
    _check_geometry(net)
    if net.components:
        parts = [mu_index(c, tol=tol) for c in net.components]
        C = np.array([[1]])
        for p in parts:
            C = np.kron(C, np.array(p["multiplicity_matrix"]))
        d = float(np.linalg.norm(C, 2))
        factors = all(p["quarters_are_factors"] for p in parts)
        return {
            "net": net.name,
            "mu_index": _clean(d * d),
            "statistical_dimension": _clean(d),
            "multiplicity_matrix": C.tolist(),
            "quarters_are_factors": factors,
            "via": "tensor factors",
            "factors": parts,
            "conventions": _conventions(net, factors),
        }
    J = net.circle.quarters()
    factors = all(net.local_algebra(a.length).is_factor() for a in J)
    S = vacuum_sector(net, tol=tol)
    rep = sector_dimension(S, [J[0], J[2]], [J[1], J[3]], tol=tol)
    d = rep["value"]
    return {
        "net": net.name,
        "mu_index": _clean(d * d),
        "statistical_dimension": _clean(d),
        "multiplicity_matrix": rep["multiplicity_matrix"],
        "quarters_are_factors": factors,
        "via": f"four-quarter bimodule on L2 ({rep['mode']}, dimension {S.space_dim})",
        "conventions": _conventions(net, factors),
    }


def _clean(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-9 else float(x)


def _conventions(net: LatticeNet, factors: bool) -> dict:
    out = {
        "statdim_convention": STATDIM_CONVENTION,
        "trace_weights": "canonical trace on N(S1+) (normalized matrix units span L2)",
        "vacuum_model": "L2(N(S1+)) with lower arcs acting through the reflection across the real axis",
        "quarters": "J1..J4 centred on +1, +i, -1, -i, n/4 edges each",
    }
    if not factors:
        out["non_factor_note"] = (
            "quarter algebras are not factors; the value uses the operator-norm convention "
            "for the multiplicity matrix and is not a multiplicity"
        )
    return out


class RepCategoryBound(AlgebraError):
    """Search bound reached; ``partial`` holds the sectors found so far."""

    def __init__(self, message, partial):
        super().__init__(message)
        self.partial = partial


def rep_category(net: LatticeNet, *, max_sector_dim: int = DENSE_SECTOR_LIMIT, tol: float = DEFAULT_TOL, seed: int = 0) -> dict:
    """Irreducible sectors ``1_N → 1_N`` found in the twisted vacuum family.

    Seeds are the parent vacuum twisted by every element of the symmetry
    group (for a net without symmetry: the vacuum alone).  Each seed is
    decomposed through its commutant, irreducibles are identified up to
    equivalence, and each receives its statistical dimension (upper half
    against lower half).  The enumeration is complete only within this seed
    family and the dimension bound, both of which are reported.

    Fusion multiplicities are computed when the irreducibles are leg
    sectors over full half algebras (vertical fusion by leg
    identification); otherwise ``fusion`` is ``None`` with a reason.
    """
    _check_geometry(net)
    if net.components:
        parts = [rep_category(c, max_sector_dim=max_sector_dim, tol=tol, seed=seed) for c in net.components]
        return _product_reps(net, parts)
    G = group_closure(net.symmetry) if net.symmetry else [np.eye(net.site_dim)]
    q = net.n // 4
    upper_full = IdentityDefect(net).algebra(BicoloredInterval(q, q, BLACK_FIRST)).is_full()
    if upper_full and len(G) == 1:
        V = identity_sector(IdentityDefect(net))
        pieces = [{"sector": V, "multiplicity": 1}] if V.space_dim > DENSE_SECTOR_LIMIT else decompose_sector(V, tol=tol, seed=seed)
        if len(pieces) == 1 and pieces[0]["sector"].space_dim == V.space_dim:
            pieces = [{"sector": V, "multiplicity": 1}]  # irreducible: keep the leg form
        seeds = [("vacuum", V)]
        found = [(p["sector"], "vacuum") for p in pieces]
    else:
        P = parent_vacuum(net)
        if P.space_dim > max_sector_dim:
            raise RepCategoryBound(f"seed sectors of dimension {P.space_dim} exceed the bound {max_sector_dim}", [])
        seeds = [(f"twist_{k}", P if k == 0 else TwistedSector(P, g, name=f"L2|twist_{k}")) for k, g in enumerate(G)]
        found = []
        for tag, S in seeds:
            for p in decompose_sector(S, tol=tol, seed=seed):
                found.append((p["sector"], tag))
    irreps: list = []
    for S, tag in found:
        if any(S.space_dim == T.space_dim and equivalent_sectors(S, T, tol=tol, seed=seed) for T, _ in irreps):
            continue
        irreps.append((S, tag))
    entries = []
    for k, (S, tag) in enumerate(irreps):
        d = sector_dimension(S, tol=tol)
        entries.append({"index": k, "seed": tag, "space_dim": S.space_dim, "dimension": d["value"], "multiplicity_matrix": d["multiplicity_matrix"]})
    fusion, reason = _fusion_table([S for S, _ in irreps], tol, seed)
    total = sum(e["dimension"] ** 2 for e in entries)
    return {
        "net": net.name,
        "sectors": entries,
        "sum_of_squares": _clean(total),
        "fusion": fusion,
        "fusion_note": reason,
        "search": {"seeds": [t for t, _ in seeds], "max_sector_dim": max_sector_dim, "complete_within_seed_family": True},
        "conventions": {"statdim_convention": STATDIM_CONVENTION},
    }


def _fusion_table(irreps, tol, seed):
    if not all(isinstance(S, LegSector) for S in irreps):
        return None, "fusion over non-full half algebras is not realized; dimensions only"
    k = len(irreps)
    table = [[[0] * k for _ in range(k)] for _ in range(k)]
    for i, j in itertools.product(range(k), repeat=2):
        F = fuse_sectors("v", irreps[i], irreps[j])
        for l, T in enumerate(irreps):
            c = sector_certificate(F, T, tol=tol, seed=seed)
            table[i][j][l] = 1 if c["passes"] else 0
    return table, "vertical fusion by leg identification"


def _product_reps(net: LatticeNet, parts: list[dict]) -> dict:
    entries = [{"index": 0, "components": [], "dimension": 1.0}]
    for p in parts:
        entries = [
            {"index": 0, "components": e["components"] + [s["index"]], "dimension": e["dimension"] * s["dimension"]}
            for e in entries
            for s in p["sectors"]
        ]
    for k, e in enumerate(entries):
        e["index"] = k
    fusion = None
    note = "product of the factors' fusion tables"
    if all(p["fusion"] is not None for p in parts):
        fusion = np.array([[[1]]])
        for p in parts:
            F = np.array(p["fusion"])
            fusion = np.einsum("ijk,abc->iajbkc", fusion, F).reshape(
                fusion.shape[0] * F.shape[0], fusion.shape[1] * F.shape[1], fusion.shape[2] * F.shape[2]
            )
        fusion = fusion.tolist()
    else:
        note = "a factor has no fusion table; dimensions only"
    total = sum(e["dimension"] ** 2 for e in entries)
    return {
        "net": net.name,
        "sectors": entries,
        "sum_of_squares": _clean(total),
        "fusion": fusion,
        "fusion_note": note,
        "factors": parts,
        "search": {"seeds": "product of the factors' seed families"},
        "conventions": {"statdim_convention": STATDIM_CONVENTION},
    }
