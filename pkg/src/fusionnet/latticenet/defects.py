"""Defects between lattice nets: identity, junction and composite defects.

A bicolored interval is recorded abstractly by its numbers of white and
black edges and by which colour comes first counterclockwise.  Leg labels
are ``('w', j)`` and ``('b', j)`` with ``j`` the distance (in edges) from the
colour-change point, plus whatever junction legs the defect places at that
point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..algebra import (
    DEFAULT_TOL,
    AlgebraError,
    RepresentedAlgebra,
    StarHomomorphism,
    algebra_distance,
    commutant,
    generate_closure,
    inclusion_data,
    is_factor,
    relative_commutant,
)
from ..bimodule import _block_compressions
from ..legs import embed_algebra
from .legalgebra import DENSE_LIMIT, LegAlgebra
from .nets import CHECK_LIMIT, LatticeNet, _Axiom, vacuum_extension

__all__ = [
    "BicoloredInterval",
    "Defect",
    "IdentityDefect",
    "JunctionDefect",
    "CompositeDefect",
    "DefectError",
    "build_defect",
    "check_defect_axioms",
    "compose_defects",
    "fiber_product",
    "same_net",
    "defect_algebra_certificate",
]

WHITE_FIRST = "white_first"
BLACK_FIRST = "black_first"


class DefectError(AlgebraError):
    """Defect construction refused; ``witness`` names the offending configuration."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass(frozen=True)
class BicoloredInterval:
    """``white`` white edges and ``black`` black edges meeting at the colour point."""

    white: int
    black: int
    order: str = WHITE_FIRST

    def __post_init__(self):
        if self.white < 0 or self.black < 0 or self.white + self.black == 0:
            raise AlgebraError("a bicolored interval needs at least one edge")
        if self.order not in (WHITE_FIRST, BLACK_FIRST):
            raise AlgebraError(f"unknown orientation {self.order!r}")

    @property
    def genuine(self) -> bool:
        return self.white > 0 and self.black > 0

    @property
    def length(self) -> int:
        return self.white + self.black

    def edge_labels(self) -> list:
        """Edge legs in white-first order."""
        return [("w", j) for j in range(self.white, 0, -1)] + [("b", j) for j in range(1, self.black + 1)]

    def __str__(self) -> str:
        return f"[{self.white}w|{self.black}b]"


def same_net(N: LatticeNet, M: LatticeNet) -> bool:
    if N is M:
        return True
    if N.n != M.n or not N.site.same_as(M.site) or len(N.symmetry) != len(M.symmetry):
        return False
    return all(np.allclose(a, b) for a, b in zip(N.symmetry, M.symmetry))


class Defect:
    """Assignment of algebras to bicolored intervals, ``N`` on white and ``M`` on black.

    Subclasses provide :meth:`junction_legs` and :meth:`_genuine_algebra`
    (on white-first leg order).
    """

    kind = "defect"

    def __init__(self, left: LatticeNet, right: LatticeNet, name: str = "defect"):
        if left.n != right.n:
            raise DefectError("nets on different circles")
        self.left = left
        self.right = right
        self.name = name
        self._cache: dict = {}

    @property
    def n(self) -> int:
        return self.left.n

    def junction_legs(self) -> list[tuple]:
        return []

    def describe(self) -> dict:
        return {"kind": self.kind, "name": self.name, "left": self.left.name, "right": self.right.name}

    def leg_order(self, I: BicoloredInterval) -> list:
        labels = [("w", j) for j in range(I.white, 0, -1)]
        if I.genuine:
            labels += [l for l, _ in self.junction_legs()]
        labels += [("b", j) for j in range(1, I.black + 1)]
        return labels if I.order == WHITE_FIRST else labels[::-1]

    def algebra(self, I: BicoloredInterval) -> LegAlgebra:
        key = (I.white, I.black)
        if key not in self._cache:
            if not I.genuine:
                self._cache[key] = self._monochrome(I)
            else:
                self._cache[key] = self._genuine_algebra(I.white, I.black)
        return self._cache[key].reorder(self.leg_order(I))

    def _monochrome(self, I: BicoloredInterval) -> LegAlgebra:
        if I.white:
            return self.left.local_algebra(I.white).relabel(lambda i: ("w", I.white - i))
        return self.right.local_algebra(I.black).relabel(lambda i: ("b", i + 1))

    def _genuine_algebra(self, w: int, b: int) -> LegAlgebra:
        raise NotImplementedError


class IdentityDefect(Defect):
    """``D(I) = N(I)``: the bicoloring is forgotten."""

    kind = "identity"

    def __init__(self, net: LatticeNet, name: str | None = None):
        super().__init__(net, net, name or f"1_{net.name}")

    def _genuine_algebra(self, w, b):
        A = self.left.local_algebra(w + b)
        return A.relabel(lambda i: ("w", w - i) if i < w else ("b", i - w + 1))


class JunctionDefect(Defect):
    """``D(I) = N(I_w) ⊗ Q ⊗ M(I_b)`` with ``Q`` on legs at the colour point."""

    kind = "junction"

    def __init__(self, left: LatticeNet, right: LatticeNet, Q: LegAlgebra, name: str = "junction"):
        super().__init__(left, right, name)
        self.Q = Q

    def junction_legs(self):
        return list(self.Q.legs)

    def describe(self):
        d = super().describe()
        d["junction_blocks"] = [list(b) for b in self.Q.blocks]
        return d

    def _genuine_algebra(self, w, b):
        W = self._monochrome(BicoloredInterval(w, 0))
        B = self._monochrome(BicoloredInterval(0, b))
        return LegAlgebra.tensor(W, self.Q, B)


class CompositeDefect(Defect):
    """``(D ⊛ E)(I) = D([I_w]) ⊛_{M(J)} E([I_b])`` with a standard middle arc ``J`` of ``m`` edges.

    ``[I_w]`` is ``I_w`` followed by ``m`` black edges and ``[I_b]`` is ``m``
    white edges followed by ``I_b``; both copies of ``J`` carry the middle
    net ``M``.  When ``M(J)`` is a full matrix algebra on its legs the fiber
    product keeps exactly the legs away from ``J``, so it is computed leg by
    leg.
    """

    kind = "composite"

    def __init__(self, D: Defect, E: Defect, m: int | None = None, name: str | None = None):
        if not same_net(D.right, E.left):
            raise DefectError("middle nets of the composed defects differ", {"left": D.right.name, "right": E.left.name})
        super().__init__(D.left, E.right, name or f"({D.name}*{E.name})")
        self.D = D
        self.E = E
        self.m = m if m is not None else D.n // 4
        if self.m < 1:
            raise DefectError("middle arc needs at least one edge")
        V = D.right.local_algebra(self.m)
        if not V.is_full():
            raise DefectError(
                "composition needs a middle net whose interval algebras are full matrix algebras",
                {"middle_blocks": [list(b) for b in V.blocks]},
            )

    def junction_legs(self):
        return [((0, l), d) for l, d in self.D.junction_legs()] + [((1, l), d) for l, d in self.E.junction_legs()]

    def describe(self):
        d = super().describe()
        d["factors"] = [self.D.describe(), self.E.describe()]
        d["middle_arc_length"] = self.m
        return d

    def _genuine_algebra(self, w, b):
        m = self.m
        U = self.D.algebra(BicoloredInterval(w, m))
        W = self.E.algebra(BicoloredInterval(m, b))
        # V = M(J) is full, so V' ∩ U and V' ∩ W live on the legs away from J
        Ur = U.commutant_of_legs([("b", j) for j in range(1, m + 1)])
        Wr = W.commutant_of_legs([("w", j) for j in range(1, m + 1)])
        dj = {l for l, _ in self.D.junction_legs()}
        ej = {l for l, _ in self.E.junction_legs()}
        Ur = Ur.relabel(lambda l: (0, l) if l in dj else l)
        Wr = Wr.relabel(lambda l: (1, l) if l in ej else l)
        return LegAlgebra.tensor(Ur, Wr)


def build_defect(kind: str, data: dict) -> Defect:
    """Construct a defect.

    ``kind = "identity"`` takes ``{"net": N}``; ``kind = "junction"`` takes
    ``{"left": N, "right": M, "Q": RepresentedAlgebra or LegAlgebra}``.  A
    non-factor ``Q`` is refused with the Haag-duality counterexample.
    """
    if kind == "identity":
        return IdentityDefect(data["net"])
    if kind == "junction":
        Q = data["Q"]
        if isinstance(Q, RepresentedAlgebra):
            Q = LegAlgebra.single([("Q", Q.ambient_dim)], Q)
        D = JunctionDefect(data["left"], data["right"], Q, name=data.get("name", "junction"))
        if not Q.is_factor():
            rep = check_defect_axioms(D, axioms=("haag_duality",), stop_at_failure=True)
            ce = rep["axioms"]["haag_duality"]["counterexample"]
            raise DefectError("junction algebra is not a factor; Haag duality fails", ce or {})
        return D
    raise DefectError(f"unknown defect kind {kind!r}")


def compose_defects(D: Defect, E: Defect, m: int | None = None) -> CompositeDefect:
    return CompositeDefect(D, E, m)


# -- axiom checks ---------------------------------------------------------------

def _sub_labels(K: BicoloredInterval, s: int, e: int, D: Defect):
    """Sub-run ``[s, e)`` of the white-first edge positions of ``K``."""
    w = K.white
    whites = [w - p for p in range(s, e) if p < w]
    blacks = [p - w + 1 for p in range(s, e) if p >= w]
    return len(whites), len(blacks), whites, blacks


def _sub_algebra(D: Defect, K: BicoloredInterval, s: int, e: int) -> LegAlgebra:
    """``D`` of the sub-run ``[s, e)`` of ``K`` with the legs labelled as in ``K``."""
    nw, nb, whites, blacks = _sub_labels(K, s, e, D)
    if nw and nb:
        return D.algebra(BicoloredInterval(nw, nb))
    if nw:
        # whites listed from far to near; local leg i is the i-th in counterclockwise order
        return D.left.local_algebra(nw).relabel(lambda i: ("w", whites[i]))
    return D.right.local_algebra(nb).relabel(lambda i: ("b", blacks[i]))


def relative_commutant_residual(A: LegAlgebra, K: LegAlgebra, expected: LegAlgebra, tol: float = DEFAULT_TOL) -> float:
    """Distance between ``A' ∩ K`` and ``expected`` (all on labels of ``K``)."""
    if A.is_full():
        rc = K.commutant_of_legs(A.labels)
        return rc.distance(expected)
    Kd = K.dense()
    pos = K.positions(A.labels)
    Ad = embed_algebra(A.dense(), pos, K.dims)
    rc = relative_commutant(Ad, Kd, tol)
    ex = embed_algebra(expected.dense(), K.positions(expected.labels), K.dims)
    return float(algebra_distance(rc, ex))


def check_defect_axioms(
    D: Defect, *, tol: float = DEFAULT_TOL, axioms=None, dense_limit: int = CHECK_LIMIT, stop_at_failure: bool = False
) -> dict:
    """Per-axiom report over all genuinely bicolored ``K`` that fit on the circle.

    For each ``K`` every sub-run is considered; ``I`` ranges over genuinely
    bicolored sub-runs and ``J`` over sub-runs adjacent to ``I``.  With
    ``stop_at_failure`` the scan ends at the first counterexample.
    """
    wanted = set(axioms or ("isotony", "additivity", "haag_duality", "vacuum_sector"))
    thr = tol * 1e3
    iso, add, haag, vac = (_Axiom(a) for a in ("isotony", "additivity", "haag_duality", "vacuum_sector"))
    vac_skipped = 0
    maxlen = D.n - 1
    for L in range(2, maxlen + 1):
        if stop_at_failure and any(a.failure for a in (iso, add, haag, vac)):
            break
        for w in range(1, L):
            K = BicoloredInterval(w, L - w)
            AK = D.algebra(K)
            tag = {"K": str(K)}
            if "isotony" in wanted:
                for s in range(0, w):
                    for e in range(w + 1, L + 1):
                        if (s, e) == (0, L):
                            continue
                        A = _sub_algebra(D, K, s, e)
                        r = max((AK.local_residual(labs, g) for labs, g in A.local_generators()), default=0.0)
                        iso.record(r < thr, r, {**tag, "I": str(BicoloredInterval(w - s, e - w))})
            for cut in range(1, L):
                if cut == w:
                    continue  # a cut at the colour point leaves no genuinely bicolored side
                left = _sub_algebra(D, K, 0, cut)
                right = _sub_algebra(D, K, cut, L)
                I, J = (left, right) if cut > w else (right, left)
                names = {**tag, "I": str(_sub_name(K, *( (0, cut) if cut > w else (cut, L)))), "J": str(_sub_name(K, *((cut, L) if cut > w else (0, cut))))}
                if "additivity" in wanted:
                    r = AK.distance(LegAlgebra.tensor(left, right).reorder(AK.labels)) if _fits(AK, left, right) else float("inf")
                    add.record(r < thr, r, {**names, "reason": "generated algebra differs from D(I ∪ J)"})
                if "haag_duality" in wanted:
                    try:
                        r1 = relative_commutant_residual(J, AK, I, tol)
                        r2 = relative_commutant_residual(I, AK, J, tol)
                    except AlgebraError as exc:
                        r1, r2 = float("inf"), float("inf")
                    r = max(r1, r2)
                    haag.record(r < thr, r, {**names, "residual_I": r1, "residual_J": r2})
            if "vacuum_sector" in wanted:
                for k in range(1, w + 1):
                    status, det = _defect_vacuum(D, K, 0, k, D.left, tol, dense_limit)
                    vac_skipped += status == "skipped"
                    if status != "skipped":
                        vac.record(status == "pass", 0.0 if status == "pass" else 1.0, {**tag, "J": f"{k} white edges at the white end", **det})
                for k in range(1, L - w + 1):
                    status, det = _defect_vacuum(D, K, L - k, L, D.right, tol, dense_limit)
                    vac_skipped += status == "skipped"
                    if status != "skipped":
                        vac.record(status == "pass", 0.0 if status == "pass" else 1.0, {**tag, "J": f"{k} black edges at the black end", **det})
    out = {}
    for a in (iso, add, haag, vac):
        if a.name in wanted:
            out[a.name] = a.report()
    if "vacuum_sector" in out:
        out["vacuum_sector"]["skipped"] = vac_skipped
    if "additivity" in out:
        out["additivity"]["overlapping_status"] = "implied by the adjacent cases and isotony"
    return {
        "defect": D.describe(),
        "axioms": out,
        "passes": all(v["passes"] for v in out.values()),
    }


def _fits(AK, left, right) -> bool:
    return set(left.labels) | set(right.labels) == set(AK.labels)


def _sub_name(K: BicoloredInterval, s: int, e: int) -> BicoloredInterval:
    w = K.white
    nw = sum(1 for p in range(s, e) if p < w)
    return BicoloredInterval(nw, (e - s) - nw)


def _defect_vacuum(D: Defect, K: BicoloredInterval, s: int, e: int, net: LatticeNet, tol, dense_limit):
    """Vacuum-sector extension for the monochrome end segment ``[s, e)`` of ``K``."""
    J = _sub_algebra(D, K, s, e)
    AK = D.algebra(K)
    k = e - s
    if J.is_factor() and AK.is_factor():
        (nj, _), = J.blocks
        (nk, _), = AK.blocks
        lam = np.array([[nk // nj]])
    else:
        if AK.ambient_dim > dense_limit:
            return "skipped", {}
        Jd = embed_algebra(J.dense(), AK.positions(J.labels), AK.dims)
        lam, _ = inclusion_data(Jd, AK.dense(), tol)
    return vacuum_extension(net.local_algebra(k), lam, net.local_algebra(2 * k), net.site_dim, tol, dense_limit)


# -- generic fiber product --------------------------------------------------------

def fiber_product(
    U: RepresentedAlgebra,
    W: RepresentedAlgebra,
    right_V: StarHomomorphism,
    left_V: StarHomomorphism,
    *,
    tol: float = DEFAULT_TOL,
) -> RepresentedAlgebra:
    """``U ⊛_V W = (U' ⊗ W')'`` on ``H ⊠_V K``.

    Parameters
    ----------
    U, W : RepresentedAlgebra
        Faithful on ``H`` and ``K``.
    right_V : StarHomomorphism
        Out of ``opposite(V)`` into ``U`` (the right ``V``-action on ``H``).
    left_V : StarHomomorphism
        Out of ``V`` into ``W`` (the left ``V``-action on ``K``).

    ``U'`` and ``W'`` commute with the middle actions, so they descend to
    the fused space ``⊕_j H_j ⊗ K_j``; the result is the commutant of the
    algebra they generate there.
    """
    if right_V.target_dim != U.ambient_dim or left_V.target_dim != W.ambient_dim:
        raise AlgebraError("middle actions live on the wrong spaces")
    if right_V.source.blocks != left_V.source.blocks:
        raise AlgebraError("middle-action mismatch: the two sides see different middle algebras")
    for g in right_V.source.generators():
        if U.residual(right_V(g)) > tol * 1e3:
            raise AlgebraError("right middle action does not land in U")
    for g in left_V.source.generators():
        if W.residual(left_V(g)) > tol * 1e3:
            raise AlgebraError("left middle action does not land in W")
    rh, rk = right_V.multiplicities, left_V.multiplicities
    sizes = [a * b for a, b in zip(rh, rk)]
    dim = sum(sizes)
    if dim == 0:
        raise AlgebraError("fused space is zero")
    offs = np.cumsum([0] + sizes)

    def push(parts, side):
        out = np.zeros((dim, dim), dtype=complex)
        for j, p in enumerate(parts):
            if sizes[j]:
                blk = np.kron(p, np.eye(rk[j])) if side == 0 else np.kron(np.eye(rh[j]), p)
                out[offs[j] : offs[j + 1], offs[j] : offs[j + 1]] = blk
        return out

    gens = [push(_block_compressions(right_V, x), 0) for x in commutant(U).generators()]
    gens += [push(_block_compressions(left_V, x), 1) for x in commutant(W).generators()]
    gens.append(np.eye(dim, dtype=complex))
    return commutant(generate_closure(gens, dim, tol=tol))


def defect_algebra_certificate(D: Defect, E: Defect, merges: dict | None = None, tol: float = DEFAULT_TOL) -> dict:
    """Arc-by-arc comparison of two defects on the same abstract intervals.

    The unitary on each interval is the leg identification given by matching
    labels, with ``merges`` mapping a label of ``E`` to the list of labels
    of ``D`` whose tensor product it replaces.  Reports the worst
    generator residual of ``T D(I) T* = E(I)``.
    """
    merges = merges or {}
    worst = 0.0
    per = []
    for L in range(1, D.n):
        for w in range(0, L + 1):
            I = BicoloredInterval(w, L - w)
            A = D.algebra(I)
            B = E.algebra(I)
            if merges and I.genuine:
                A = merge_legs(A, merges)
            r = A.distance(B.reorder(A.labels)) if set(A.labels) == set(B.labels) else float("inf")
            worst = max(worst, r)
            per.append({"interval": str(I), "residual": r})
    return {"kind": "defect-isomorphism", "residual": worst, "passes": worst < tol * 1e3, "intervals": per}


def merge_legs(A: LegAlgebra, merges: dict) -> LegAlgebra:
    """Fuse groups of legs into single legs (index order = kron order of the group)."""
    from ..legs import leg_permutation
    from ..algebra import tensor_product

    groups = {new: list(old) for new, old in merges.items()}
    owner = {}
    for new, old in groups.items():
        for l in old:
            owner[l] = new
    # factors touching one merge group are combined
    factor_sets: list[list[int]] = []
    for i, (labs, _) in enumerate(A.factors):
        factor_sets.append([i])
    # union factors sharing a merge group
    parent = list(range(len(A.factors)))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    by_group: dict = {}
    for i, (labs, _) in enumerate(A.factors):
        for l in labs:
            g = owner.get(l)
            if g is not None:
                if g in by_group:
                    parent[find(i)] = find(by_group[g])
                else:
                    by_group[g] = i
    comps: dict = {}
    for i in range(len(A.factors)):
        comps.setdefault(find(i), []).append(i)
    new_legs = []
    seen = set()
    for l, d in A.legs:
        g = owner.get(l)
        if g is None:
            new_legs.append((l, d))
        elif g not in seen:
            seen.add(g)
            new_legs.append((g, int(np.prod([A.leg_dim(x) for x in groups[g]]))))
    factors = []
    for ids in comps.values():
        labs, T = A.local_algebra(ids)
        # target legs for this component, in merged form
        targets = []
        for l in labs:
            g = owner.get(l, l)
            if g not in targets:
                targets.append(g)
        expanded = [x for t in targets for x in (groups[t] if t in groups else [t])]
        dims = [A.leg_dim(x) for x in expanded]
        P = leg_permutation(dims, [expanded.index(x) for x in labs])
        factors.append((tuple(targets), RepresentedAlgebra(P @ T.frame, T.blocks, check=False)))
    return LegAlgebra(new_legs, factors)
