"""Dual nets, tensor products of defects, fold (unit and counit) defects and adjoints."""
from __future__ import annotations

from ..algebra import full_algebra
from ..latticenet.circle import GeometryError, LatticeCircle
from ..latticenet.defects import (
    BLACK_FIRST,
    WHITE_FIRST,
    BicoloredInterval,
    Defect,
    DefectError,
    merge_legs,
)
from ..latticenet.legalgebra import LegAlgebra
from ..latticenet.nets import LatticeNet, opposite_net, product_net

__all__ = [
    "dual_net",
    "trivial_net",
    "TensorDefect",
    "FoldDefect",
    "AdjointDefect",
    "tensor_defects",
    "unit_counit_defects",
    "adjoint_defect",
]


def dual_net(N: LatticeNet) -> LatticeNet:
    """``I ↦ N(I)^op`` edge by edge (transposed site, conjugated symmetry)."""
    D = opposite_net(N, name=f"{N.name}^v")
    if N.components:
        D.components = tuple(dual_net(c) for c in N.components)
    return D


def trivial_net(n: int) -> LatticeNet:
    """The unit net: ``ℂ`` on every arc (one-dimensional legs)."""
    return LatticeNet(LatticeCircle(n), full_algebra(1), name="1")


def _edge_labels(I: BicoloredInterval) -> list:
    return [("w", j) for j in range(1, I.white + 1)] + [("b", j) for j in range(1, I.black + 1)]


class TensorDefect(Defect):
    """``(D ⊗ E)(I) = D(I) ⊗ E(I)`` between the product nets.

    Edge legs of the two factors are merged (``D`` first), matching the
    product site ``S_D ⊗ S_E``; junction legs become ``(0, l)`` and ``(1, l)``.
    """

    kind = "tensor"

    def __init__(self, D: Defect, E: Defect, name: str | None = None):
        if D.n != E.n:
            raise DefectError("defects on different circles")
        super().__init__(product_net(D.left, E.left), product_net(D.right, E.right), name or f"({D.name}x{E.name})")
        self.D = D
        self.E = E

    def junction_legs(self):
        return [((0, l), d) for l, d in self.D.junction_legs()] + [((1, l), d) for l, d in self.E.junction_legs()]

    def describe(self):
        d = super().describe()
        d["factors"] = [self.D.describe(), self.E.describe()]
        return d

    def _genuine_algebra(self, w, b):
        I = BicoloredInterval(w, b)
        A = self.D.algebra(I).relabel(lambda l: (0, l))
        B = self.E.algebra(I).relabel(lambda l: (1, l))
        merges = {l: [(0, l), (1, l)] for l in _edge_labels(I)}
        return merge_legs(LegAlgebra.tensor(A, B), merges)


def tensor_defects(D: Defect, E: Defect) -> TensorDefect:
    return TensorDefect(D, E)


class FoldDefect(Defect):
    """Counit ``N ⊗ N^∨ → 1`` or unit ``1 → N^∨ ⊗ N`` built by folding around a half circle.

    For the counit, a bicolored interval with ``w`` white edges receives
    ``N`` of a run of ``w + n/2 + w`` edges: the white edges, the half
    circle on the black side, and the white edges again on the way back.
    The two copies of each white edge are merged into one leg of the
    product net; the half circle becomes the junction legs ``("fold", k)``.
    The unit is the mirror construction on the black side.

    The returned copy of ``N`` on the way back realizes ``N^∨ = N^op``
    through the lattice reflection, which needs the site algebra and the
    symmetry to be closed under transposition; the defect axiom checks
    detect any failure of this.
    """

    def __init__(self, net: LatticeNet, which: str):
        if which not in ("counit", "unit"):
            raise DefectError(f"unknown fold {which!r}")
        if net.n % 8:
            raise GeometryError(f"the half circle cannot host the fold for n={net.n}; need n divisible by 8")
        one = trivial_net(net.n)
        dual = dual_net(net)
        if which == "counit":
            super().__init__(product_net(net, dual), one, name=f"counit_{net.name}")
        else:
            super().__init__(one, product_net(dual, net), name=f"unit_{net.name}")
        self.kind = which
        self.net = net
        self.half = net.n // 2

    def junction_legs(self):
        return [(("fold", k), self.net.site_dim) for k in range(self.half)]

    def _genuine_algebra(self, w, b):
        h = self.half
        if self.kind == "counit":
            k, trivial, side = w, [(("b", j), 1) for j in range(1, b + 1)], "w"
        else:
            k, trivial, side = b, [(("w", j), 1) for j in range(1, w + 1)], "b"
        A = self.net.local_algebra(2 * k + h)

        def lab(p):
            if p < k:
                return ("first", k - p)
            if p < k + h:
                return ("fold", p - k)
            return ("second", p - k - h + 1)

        A = A.relabel(lab)
        # counit: (N, N^∨) per white edge; unit: (N^∨, N) per black edge
        merges = {(side, j): [("first", j), ("second", j)] for j in range(1, k + 1)}
        A = merge_legs(A, merges)
        return LegAlgebra.tensor(A, LegAlgebra.full(trivial))


def unit_counit_defects(N: LatticeNet) -> tuple[FoldDefect, FoldDefect]:
    """``(D_u: 1 → N^∨⊗N, D_v: N⊗N^∨ → 1)``."""
    return FoldDefect(N, "unit"), FoldDefect(N, "counit")


class AdjointDefect(Defect):
    """``D†(I) = D(I^rev)``: the same algebras with the colours exchanged."""

    kind = "adjoint"

    def __init__(self, D: Defect, name: str | None = None):
        super().__init__(D.right, D.left, name or f"{D.name}^+")
        self.D = D

    def junction_legs(self):
        return list(self.D.junction_legs())[::-1]

    def describe(self):
        d = super().describe()
        d["of"] = self.D.describe()
        return d

    def algebra(self, I: BicoloredInterval) -> LegAlgebra:
        flip = BLACK_FIRST if I.order == WHITE_FIRST else WHITE_FIRST
        A = self.D.algebra(BicoloredInterval(I.black, I.white, flip))
        swap = {"w": "b", "b": "w"}

        def relab(l):
            if isinstance(l, tuple) and len(l) == 2 and l[0] in swap and isinstance(l[1], int):
                return (swap[l[0]], l[1])
            return l

        return A.relabel(relab)


def adjoint_defect(D: Defect) -> Defect:
    """Colour reversal ``D†``."""
    return AdjointDefect(D)
