"""Algebras on tensor products of labelled legs, stored factor by factor.

Lattice algebras are tensor products of small local pieces (one per edge,
one per junction).  Keeping the pieces separate lets relative commutants,
leg deletions and containment tests run locally; the dense matrix form is
only built on request and only when it is small.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import numpy as np

from ..algebra import (
    DEFAULT_TOL,
    AlgebraError,
    RepresentedAlgebra,
    StarHomomorphism,
    full_algebra,
    relative_commutant,
    scalars,
    tensor_product,
)
from ..legs import embed_algebra, embed_operator, leg_permutation

__all__ = ["LegAlgebra", "apply_on_legs", "partial_trace", "DENSE_LIMIT"]

# largest ambient dimension converted to a dense RepresentedAlgebra
DENSE_LIMIT = 1024


def apply_on_legs(op: np.ndarray, positions: Sequence[int], dims: Sequence[int], v: np.ndarray) -> np.ndarray:
    """``(op ⊗ 1) v`` where ``op`` acts on the legs ``positions`` of ``⊗ dims``.

    ``v`` has shape ``(D,)`` or ``(D, k)``.
    """
    dims = list(dims)
    squeeze = v.ndim == 1
    vv = v.reshape(dims + [-1])
    k = len(positions)
    sub = [dims[p] for p in positions]
    t = np.asarray(op).reshape(sub + sub)
    out = np.tensordot(t, vv, axes=(list(range(k, 2 * k)), list(positions)))
    # tensordot puts the acted legs first; move them back
    rest = [i for i in range(len(dims) + 1) if i not in positions]
    order = [0] * (len(dims) + 1)
    for j, p in enumerate(positions):
        order[p] = j
    for j, r in enumerate(rest):
        order[r] = k + j
    out = np.transpose(out, order).reshape(-1, vv.shape[-1])
    return out[:, 0] if squeeze else out


def partial_trace(x: np.ndarray, keep: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    """Trace out every leg not in ``keep``; the kept legs stay in the order given."""
    dims = list(dims)
    n = len(dims)
    t = np.asarray(x).reshape(dims + dims)
    rows = list(range(n))
    cols = [i if i not in keep else n + i for i in range(n)]
    out = [rows[i] for i in keep] + [cols[i] for i in keep]
    r = np.einsum(t, rows + cols, out)
    kd = int(np.prod([dims[i] for i in keep])) if keep else 1
    return r.reshape(kd, kd)


class LegAlgebra:
    """Tensor product of local algebras placed on groups of labelled legs.

    Parameters
    ----------
    legs : sequence of (label, dim)
        Legs in the order of the ambient tensor product.
    factors : sequence of (labels, RepresentedAlgebra)
        Each algebra acts on the tensor product of its legs in the listed
        order; every leg belongs to exactly one factor.
    """

    def __init__(self, legs: Sequence[tuple[Hashable, int]], factors: Sequence[tuple[Sequence[Hashable], RepresentedAlgebra]]):
        self.legs = tuple((lab, int(d)) for lab, d in legs)
        self._dims = {lab: d for lab, d in self.legs}
        if len(self._dims) != len(self.legs):
            raise AlgebraError("leg labels must be unique")
        seen: set = set()
        fs = []
        for labs, A in factors:
            labs = tuple(labs)
            for lab in labs:
                if lab not in self._dims:
                    raise AlgebraError(f"factor uses unknown leg {lab!r}")
                if lab in seen:
                    raise AlgebraError(f"leg {lab!r} belongs to two factors")
                seen.add(lab)
            amb = int(np.prod([self._dims[l] for l in labs]))
            if A.ambient_dim != amb:
                raise AlgebraError(f"factor on {labs} has ambient {A.ambient_dim}, legs give {amb}")
            fs.append((labs, A))
        if seen != set(self._dims):
            raise AlgebraError(f"legs without a factor: {set(self._dims) - seen}")
        self.factors = tuple(fs)
        self._dense = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def full(cls, legs) -> "LegAlgebra":
        """``B(⊗ legs)``, one full matrix factor per leg."""
        legs = list(legs)
        return cls(legs, [((lab,), full_algebra(d)) for lab, d in legs])

    @classmethod
    def single(cls, legs, A: RepresentedAlgebra) -> "LegAlgebra":
        legs = list(legs)
        return cls(legs, [(tuple(l for l, _ in legs), A)])

    @classmethod
    def trivial(cls) -> "LegAlgebra":
        return cls([], [])

    @staticmethod
    def tensor(*algs: "LegAlgebra") -> "LegAlgebra":
        legs = [l for a in algs for l in a.legs]
        factors = [f for a in algs for f in a.factors]
        return LegAlgebra(legs, factors)

    # -- shape -------------------------------------------------------------
    @property
    def labels(self) -> tuple:
        return tuple(l for l, _ in self.legs)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(d for _, d in self.legs)

    def leg_dim(self, label) -> int:
        return self._dims[label]

    @property
    def ambient_dim(self) -> int:
        return int(np.prod(self.dims)) if self.legs else 1

    @property
    def dim(self) -> int:
        return int(np.prod([A.dim for _, A in self.factors])) if self.factors else 1

    @property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        out = [(1, 1)]
        for _, A in self.factors:
            out = [(n * a, m * b) for n, m in out for a, b in A.blocks]
        return tuple(out)

    def is_factor(self) -> bool:
        return all(len(A.blocks) == 1 for _, A in self.factors)

    def is_full(self) -> bool:
        return all(A.blocks == ((A.ambient_dim, 1),) for _, A in self.factors)

    def __repr__(self) -> str:
        fs = ", ".join(f"{list(l)}:{list(A.blocks)}" for l, A in self.factors)
        return f"LegAlgebra(legs={list(self.legs)}, factors=[{fs}])"

    # -- rearrangement -----------------------------------------------------
    def relabel(self, mapping) -> "LegAlgebra":
        f = mapping if callable(mapping) else (lambda l: mapping.get(l, l))
        return LegAlgebra([(f(l), d) for l, d in self.legs], [(tuple(f(l) for l in labs), A) for labs, A in self.factors])

    def reorder(self, labels: Sequence) -> "LegAlgebra":
        labels = list(labels)
        if sorted(map(repr, labels)) != sorted(map(repr, self.labels)):
            raise AlgebraError("reorder needs a permutation of the leg labels")
        return LegAlgebra([(l, self._dims[l]) for l in labels], self.factors)

    # -- dense form --------------------------------------------------------
    def dense(self, limit: int = DENSE_LIMIT) -> RepresentedAlgebra:
        """The algebra as a :class:`RepresentedAlgebra` on ``⊗ legs``."""
        if self._dense is not None:
            return self._dense
        if self.ambient_dim > limit:
            raise AlgebraError(f"dense form of a {self.ambient_dim}-dimensional leg space exceeds the limit {limit}")
        if not self.factors:
            self._dense = scalars(1)
            return self._dense
        T = self.factors[0][1]
        order = list(self.factors[0][0])
        for labs, A in self.factors[1:]:
            T = tensor_product(T, A)
            order += list(labs)
        pos = {l: i for i, l in enumerate(self.labels)}
        P = leg_permutation(self.dims, [pos[l] for l in order])
        self._dense = RepresentedAlgebra(P @ T.frame, T.blocks, check=False)
        return self._dense

    def positions(self, labels: Iterable) -> list[int]:
        pos = {l: i for i, l in enumerate(self.labels)}
        return [pos[l] for l in labels]

    def local_generators(self) -> list[tuple[tuple, np.ndarray]]:
        """``(labels, operator)`` pairs generating the algebra as a *-algebra."""
        return [(labs, g) for labs, A in self.factors for g in A.generators()]

    def embedded_generators(self) -> list[np.ndarray]:
        """Generators as dense operators on the whole leg space."""
        return [embed_operator(g, self.positions(labs), self.dims) for labs, g in self.local_generators()]

    # -- local structure ---------------------------------------------------
    def _factors_touching(self, labels) -> list[int]:
        s = set(labels)
        return [i for i, (labs, _) in enumerate(self.factors) if s & set(labs)]

    def local_algebra(self, factor_ids: Sequence[int]) -> tuple[tuple, RepresentedAlgebra]:
        """Tensor product of the chosen factors on the concatenation of their legs."""
        labs: list = []
        T = None
        for i in factor_ids:
            l, A = self.factors[i]
            labs += list(l)
            T = A if T is None else tensor_product(T, A)
        return tuple(labs), (T if T is not None else scalars(1))

    def local_residual(self, labels: Sequence, op: np.ndarray) -> float:
        """Distance of ``op ⊗ 1`` (``op`` on ``labels``) from the algebra."""
        ids = self._factors_touching(labels)
        labs, A = self.local_algebra(ids)
        missing = [l for l in labels if l not in labs]
        if missing:
            raise AlgebraError(f"unknown legs {missing}")
        dims = [self._dims[l] for l in labs]
        x = embed_operator(op, [labs.index(l) for l in labels], dims)
        return A.residual(x) / max(1.0, np.linalg.norm(op))

    def distance(self, other: "LegAlgebra") -> float:
        """Symmetric generator residual between two algebras on the same labelled legs."""
        if set(self.labels) != set(other.labels):
            return float("inf")
        if any(self._dims[l] != other.leg_dim(l) for l in self.labels):
            return float("inf")
        if self.dim != other.dim:
            return float("inf")
        worst = 0.0
        for labs, g in self.local_generators():
            worst = max(worst, other.local_residual(labs, g))
        for labs, g in other.local_generators():
            worst = max(worst, self.local_residual(labs, g))
        return worst

    def commutant_of_legs(self, labels: Sequence, tol: float = DEFAULT_TOL) -> "LegAlgebra":
        """``B(⊗ labels)' ∩ self``, returned as an algebra on the remaining legs.

        Factors away from ``labels`` survive unchanged, factors inside
        ``labels`` contribute scalars, and factors straddling the boundary are
        handled densely.
        """
        S = set(labels)
        keep_legs = [(l, d) for l, d in self.legs if l not in S]
        factors = []
        for labs, A in self.factors:
            inside = [l for l in labs if l in S]
            if not inside:
                factors.append((labs, A))
                continue
            rest = [l for l in labs if l not in S]
            if not rest:
                continue
            dims = [self._dims[l] for l in labs]
            pin = [labs.index(l) for l in inside]
            prest = [labs.index(l) for l in rest]
            din = int(np.prod([self._dims[l] for l in inside]))
            V = embed_algebra(full_algebra(din), pin, dims)
            C = relative_commutant(V, A, tol)
            drest = int(np.prod([self._dims[l] for l in rest]))
            hom = StarHomomorphism.from_function(C, lambda x, pr=prest, dm=dims: partial_trace(x, pr, dm) / din, drest, tol=tol)
            factors.append((tuple(rest), hom.image()))
        return LegAlgebra(keep_legs, factors)
