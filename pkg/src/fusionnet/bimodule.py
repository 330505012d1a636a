"""Bimodules over represented algebras and their finite-dimensional Connes fusion.

A bimodule carries a left action of ``A`` and a right action of ``B``; the
right action is stored as a *-homomorphism out of ``opposite(B)`` so that
every action is an ordinary homomorphism.  ``act_right(b)`` is the operator
``ξ ↦ ξ·b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
import scipy.linalg as sla
import scipy.stats as sst

from .algebra import (
    DEFAULT_TOL,
    AlgebraError,
    RepresentedAlgebra,
    StarHomomorphism,
    as_operator,
    canonical_trace_weights,
    commutator_residual,
    opposite,
)

STATDIM_CONVENTION = "factor pairs: multiplicity; otherwise operator norm of the multiplicity matrix"

__all__ = [
    "Bimodule",
    "Certificate",
    "Refusal",
    "STATDIM_CONVENTION",
    "make_bimodule",
    "standard_bimodule",
    "bimodule_from_multiplicities",
    "multiplicity_matrix",
    "statistical_dimension",
    "fuse",
    "fuse_by_quotient",
    "conjugate",
    "direct_sum",
    "joint_decomposition",
    "intertwiner_space",
    "unitary_equivalence",
    "intertwiner_by_solve",
    "equivariance_residual",
]


class Bimodule:
    """Hilbert space ℂ^d with commuting unital actions ``A ↷ H ↶ B``.

    Parameters
    ----------
    left_algebra, right_algebra : RepresentedAlgebra
    left_action : StarHomomorphism
        Out of ``left_algebra``.
    right_action : StarHomomorphism
        Out of ``opposite(right_algebra)``.
    """

    def __init__(self, left_algebra, right_algebra, left_action, right_action, *, tol=DEFAULT_TOL, check=True):
        if left_action.target_dim != right_action.target_dim:
            raise AlgebraError("left and right actions live on different spaces")
        if not left_action.source.same_as(left_algebra):
            raise AlgebraError("left action is not defined on the left algebra")
        if not right_action.source.same_as(opposite(right_algebra)):
            raise AlgebraError("right action must be defined on opposite(right algebra)")
        self.left_algebra = left_algebra
        self.right_algebra = right_algebra
        self.left_action = left_action
        self.right_action = right_action
        self.tol = tol
        self.commutation_residual = 0.0
        if check:
            ls = [left_action(g) for g in left_algebra.generators()]
            rs = [right_action(g) for g in right_action.source.generators()]
            self.commutation_residual = commutator_residual(ls, rs)
            if self.commutation_residual > tol * 1e3 * max(1, self.space_dim):
                raise AlgebraError(
                    f"left and right actions fail to commute (residual {self.commutation_residual:.2e})"
                )

    @property
    def space_dim(self) -> int:
        return self.left_action.target_dim

    def act_left(self, a) -> np.ndarray:
        return self.left_action(a)

    def act_right(self, b) -> np.ndarray:
        """Operator of ``ξ ↦ ξ·b`` for ``b`` in the right algebra."""
        return self.right_action(np.asarray(b).T)

    def __repr__(self) -> str:
        return (
            f"Bimodule(dim={self.space_dim}, left={list(self.left_algebra.blocks)}, "
            f"right={list(self.right_algebra.blocks)})"
        )


@dataclass
class Certificate:
    """A unitary ``H → K`` intertwining all declared actions, with its residuals."""

    unitary: np.ndarray
    residual: float
    unitarity: float
    kind: str = "unitary-equivalence"
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return True

    def passes(self, tol: float) -> bool:
        return self.residual < tol and self.unitarity < tol


@dataclass
class Refusal:
    """Negative answer with a witness (for example a differing multiplicity)."""

    reason: str
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return False

    def passes(self, tol: float) -> bool:
        return False


def _coefficient_map(A: RepresentedAlgebra, images: Sequence[np.ndarray]) -> Callable:
    imgs = [np.asarray(y, dtype=complex) for y in images]
    basis = A.basis
    if len(imgs) != len(basis):
        raise AlgebraError(f"expected {len(basis)} basis images, got {len(imgs)}")

    def rep(x):
        out = np.zeros_like(imgs[0])
        for b, y in zip(basis, imgs):
            out = out + np.vdot(b, x) * y
        return out

    return rep


def make_bimodule(left, right, left_images, right_images, dim=None, *, tol=DEFAULT_TOL) -> Bimodule:
    """Validated bimodule from action images.

    ``left_images[k]`` is the operator of ``left.basis[k]``;
    ``right_images[k]`` is the operator of ``ξ ↦ ξ·right.basis[k]``.  Either
    argument may instead be a callable ``x ↦ operator``.
    """
    lrep = left_images if callable(left_images) else _coefficient_map(left, left_images)
    if callable(right_images):
        rrep_b = right_images
    else:
        rrep_b = _coefficient_map(right, right_images)
    if dim is None:
        dim = as_operator(lrep(np.eye(left.ambient_dim))).shape[0]
    rop = opposite(right)
    L = StarHomomorphism.from_function(left, lrep, dim, tol=tol)
    R = StarHomomorphism.from_function(rop, lambda z: rrep_b(np.asarray(z).T), dim, tol=tol)
    return Bimodule(left, right, L, R, tol=tol)


def standard_bimodule(A: RepresentedAlgebra) -> Bimodule:
    """``L²(A)`` for the canonical trace.

    The space is ``⊕_i ℂ^{n_i} ⊗ ℂ^{n_i}`` (block ``i`` holds an ``n_i × n_i``
    matrix, row-major).  With the trace weights absorbed into the coordinates,
    left multiplication is ``x_i ⊗ 1`` and right multiplication by ``b`` is
    ``1 ⊗ b_iᵀ``.
    """
    sizes = [n for n, _ in A.blocks]
    d = sum(n * n for n in sizes)
    Wl = np.eye(d, dtype=complex)
    Wr = np.zeros((d, d), dtype=complex)
    off = 0
    for n in sizes:
        for c in range(n):
            for t in range(n):
                # column (c, t): opposite index c acts on the second leg, t labels the row
                Wr[off + t * n + c, off + c * n + t] = 1.0
        off += n * n
    L = StarHomomorphism(A, Wl, sizes)
    R = StarHomomorphism(opposite(A), Wr, sizes)
    H = Bimodule(A, A, L, R, check=False)
    H.trace_weights = canonical_trace_weights(A)
    return H


def bimodule_from_multiplicities(A: RepresentedAlgebra, B: RepresentedAlgebra, C, *, seed: int | None = None) -> Bimodule:
    """``⊕_ij ℂ^{n_i} ⊗ ℂ^{C_ij} ⊗ ℂ^{m_j}`` with ``A`` on the first leg and ``B`` on the last.

    With ``seed`` the whole space is rotated by a seeded Haar unitary, so the
    block structure is no longer visible in the coordinates.
    """
    C = np.asarray(C, dtype=int)
    if C.shape != (len(A.blocks), len(B.blocks)) or np.any(C < 0):
        raise AlgebraError(f"multiplicity matrix must be a non-negative {len(A.blocks)} x {len(B.blocks)} array")
    pieces = [(i, j, int(C[i, j])) for i in range(C.shape[0]) for j in range(C.shape[1]) if C[i, j] > 0]
    sizes = [A.blocks[i][0] * c * B.blocks[j][0] for i, j, c in pieces]
    dim = sum(sizes)
    if dim == 0:
        raise AlgebraError("multiplicity matrix is zero")
    U = np.eye(dim, dtype=complex)
    if seed is not None:
        U = sst.unitary_group.rvs(dim, random_state=np.random.default_rng(seed)) if dim > 1 else U

    def left(a):
        blocks = [np.kron(A.block_part(a, i), np.eye(c * B.blocks[j][0])) for i, j, c in pieces]
        return U @ sla.block_diag(*blocks) @ U.conj().T

    def right(z):
        zt = np.asarray(z).T
        blocks = [np.kron(np.eye(A.blocks[i][0] * c), B.block_part(zt, j).T) for i, j, c in pieces]
        return U @ sla.block_diag(*blocks) @ U.conj().T

    L = StarHomomorphism.from_function(A, left, dim)
    R = StarHomomorphism.from_function(opposite(B), right, dim)
    return Bimodule(A, B, L, R)


def trace_vector(A: RepresentedAlgebra) -> np.ndarray:
    """Cyclic vector of ``L²(A)`` implementing the canonical trace."""
    w = canonical_trace_weights(A)
    parts = [np.sqrt(wi) * np.eye(n).reshape(-1) for wi, (n, _) in zip(w, A.blocks)]
    return np.concatenate(parts).astype(complex)


def multiplicity_matrix(H: Bimodule, tol: float = 1e-6) -> np.ndarray:
    """``c_ij = dim(z_i H w_j) / (n_i m_j)`` as an integer matrix."""
    A, B = H.left_algebra, H.right_algebra
    zs = [H.act_left(z) for z in A.central_projections]
    ws = [H.act_right(w) for w in B.central_projections]
    C = np.zeros((len(zs), len(ws)), dtype=int)
    for i, (z, (n, _)) in enumerate(zip(zs, A.blocks)):
        for j, (w, (m, _)) in enumerate(zip(ws, B.blocks)):
            val = np.trace(z @ w).real / (n * m)
            c = int(round(val))
            if abs(val - c) > tol:
                raise AlgebraError(f"non-integer multiplicity {val} at ({i}, {j})")
            C[i, j] = c
    return C


def statistical_dimension(H: Bimodule) -> float:
    """Multiplicity for factor–factor bimodules, else ``‖C‖₂`` (see ``STATDIM_CONVENTION``)."""
    C = multiplicity_matrix(H)
    if C.shape == (1, 1):
        return float(C[0, 0])
    return float(np.linalg.norm(C, 2))


def _block_compressions(hom: StarHomomorphism, op: np.ndarray) -> list[np.ndarray]:
    """For ``op`` commuting with the image of ``hom``: its components on the multiplicity legs."""
    out = []
    off = 0
    W = hom.frame
    for (n, _), r in zip(hom.source.blocks, hom.multiplicities):
        if r == 0:
            out.append(np.zeros((0, 0), dtype=complex))
            continue
        f = W[:, off : off + n * r]
        chunk = (f.conj().T @ op @ f).reshape(n, r, n, r)
        out.append(np.einsum("ctcu->tu", chunk) / n)
        off += n * r
    return out


def fuse(H: Bimodule, K: Bimodule, *, tol: float = DEFAULT_TOL) -> Bimodule:
    """Relative tensor product ``H ⊠_B K``.

    Writing ``H = ⊕_j ℂ^{n_j} ⊗ H_j`` for the right ``B``-action and
    ``K = ⊕_j ℂ^{n_j} ⊗ K_j`` for the left one, the fused space is
    ``⊕_j H_j ⊗ K_j``; the trace-induced inner product only rescales each
    summand, which the orthonormal coordinates absorb.
    """
    if not H.right_algebra.same_as(K.left_algebra):
        raise AlgebraError("middle algebras of the two bimodules differ")
    rh = H.right_action.multiplicities
    rk = K.left_action.multiplicities
    sizes = [a * b for a, b in zip(rh, rk)]
    dim = sum(sizes)
    offs = np.cumsum([0] + sizes)

    def left(a):
        parts = _block_compressions(H.right_action, H.act_left(a))
        out = np.zeros((dim, dim), dtype=complex)
        for j, p in enumerate(parts):
            if sizes[j]:
                out[offs[j] : offs[j + 1], offs[j] : offs[j + 1]] = np.kron(p, np.eye(rk[j]))
        return out

    def right(z):
        parts = _block_compressions(K.left_action, K.right_action(z))
        out = np.zeros((dim, dim), dtype=complex)
        for j, p in enumerate(parts):
            if sizes[j]:
                out[offs[j] : offs[j + 1], offs[j] : offs[j + 1]] = np.kron(np.eye(rh[j]), p)
        return out

    if dim == 0:
        raise AlgebraError("fusion is the zero space")
    L = StarHomomorphism.from_function(H.left_algebra, left, dim, tol=tol)
    R = StarHomomorphism.from_function(K.right_action.source, right, dim, tol=tol)
    return Bimodule(H.left_algebra, K.right_algebra, L, R, tol=tol)


def fuse_by_quotient(H: Bimodule, K: Bimodule, *, tol: float = DEFAULT_TOL) -> Bimodule:
    """Independent construction of ``H ⊠_B K`` as the quotient of ``H ⊗ K``.

    The balancing relations ``ξb ⊗ η − ξ ⊗ bη`` span an invariant subspace;
    its orthogonal complement carries the fused bimodule.  Intended for small
    dimensions (it works on the full ``dim H · dim K`` space).
    """
    if not H.right_algebra.same_as(K.left_algebra):
        raise AlgebraError("middle algebras of the two bimodules differ")
    dh, dk = H.space_dim, K.space_dim
    rel = []
    for b in H.right_algebra.basis:
        rel.append(np.kron(H.act_right(b), np.eye(dk)) - np.kron(np.eye(dh), K.act_left(b)))
    R = np.hstack(rel)
    u, s, _ = np.linalg.svd(R, full_matrices=True)
    rank = int(np.sum(s > tol * max(1.0, s[0]) * 10))
    P = u[:, rank:]
    dim = P.shape[1]
    L = StarHomomorphism.from_function(
        H.left_algebra, lambda a: P.conj().T @ np.kron(H.act_left(a), np.eye(dk)) @ P, dim, tol=tol
    )
    Rt = StarHomomorphism.from_function(
        K.right_action.source, lambda z: P.conj().T @ np.kron(np.eye(dh), K.right_action(z)) @ P, dim, tol=tol
    )
    return Bimodule(H.left_algebra, K.right_algebra, L, Rt, tol=tol)


def conjugate(H: Bimodule, *, tol: float = DEFAULT_TOL) -> Bimodule:
    """``H̄`` as a B–A bimodule: ``b·ξ̄ = (ξ·b*)‾`` and ``ξ̄·a = (a*·ξ)‾``."""
    d = H.space_dim
    L = StarHomomorphism.from_function(
        H.right_algebra, lambda b: H.act_right(np.asarray(b).conj().T).conj(), d, tol=tol
    )
    R = StarHomomorphism.from_function(
        opposite(H.left_algebra), lambda z: H.act_left(np.asarray(z).conj()).conj(), d, tol=tol
    )
    return Bimodule(H.right_algebra, H.left_algebra, L, R, tol=tol)


def direct_sum(H: Bimodule, K: Bimodule, *, tol: float = DEFAULT_TOL) -> Bimodule:
    if not (H.left_algebra.same_as(K.left_algebra) and H.right_algebra.same_as(K.right_algebra)):
        raise AlgebraError("direct sum needs the same algebra pair")
    d = H.space_dim + K.space_dim
    L = StarHomomorphism.from_function(H.left_algebra, lambda a: sla.block_diag(H.act_left(a), K.act_left(a)), d, tol=tol)
    R = StarHomomorphism.from_function(
        H.right_action.source, lambda z: sla.block_diag(H.right_action(z), K.right_action(z)), d, tol=tol
    )
    return Bimodule(H.left_algebra, H.right_algebra, L, R, tol=tol)


def joint_decomposition(H: Bimodule, tol: float = DEFAULT_TOL):
    """Decompose ``H`` as a representation of ``A ⊗ B^op``.

    Returns ``(W, labels)`` where ``labels`` lists ``(i, j, n_i, m_j, c_ij)``
    in column order; within a label the columns are ``(a, b, t)`` with the
    left matrix index ``a``, right index ``b`` and multiplicity ``t``.
    """
    A = H.left_algebra
    Bop = H.right_action.source
    cols = []
    labels = []
    for i, (n, _) in enumerate(A.blocks):
        for j, (m, _) in enumerate(Bop.blocks):
            p = H.act_left(A.matrix_unit(i, 0, 0)) @ H.right_action(Bop.matrix_unit(j, 0, 0))
            p = (p + p.conj().T) / 2
            w, v = np.linalg.eigh(p)
            sel = w > 0.5
            c = int(sel.sum())
            if c == 0:
                continue
            q = v[:, sel]
            for a in range(n):
                la = H.act_left(A.matrix_unit(i, a, 0))
                for b in range(m):
                    cols.append(la @ H.right_action(Bop.matrix_unit(j, b, 0)) @ q)
            labels.append((i, j, n, m, c))
    W = np.hstack(cols) if cols else np.zeros((H.space_dim, 0))
    if W.shape[1] != H.space_dim:
        raise AlgebraError("bimodule actions are not unital")
    return W, labels


def equivariance_residual(T: np.ndarray, H: Bimodule, K: Bimodule) -> float:
    """``max ‖T ρ_H(g) − ρ_K(g) T‖`` over generators of both actions."""
    worst = 0.0
    for g in H.left_algebra.generators():
        worst = max(worst, float(np.linalg.norm(T @ H.act_left(g) - K.act_left(g) @ T)))
    for g in H.right_action.source.generators():
        worst = max(worst, float(np.linalg.norm(T @ H.right_action(g) - K.right_action(g) @ T)))
    return worst


def _same_pair(H: Bimodule, K: Bimodule) -> bool:
    return H.left_algebra.same_as(K.left_algebra) and H.right_algebra.same_as(K.right_algebra)


def intertwiner_space(H: Bimodule, K: Bimodule, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """HS-orthonormal basis of the bimodule maps ``H → K``; its size is ``Σ c^H_ij c^K_ij``."""
    if not _same_pair(H, K):
        raise AlgebraError("intertwiners need bimodules over the same algebra pair")
    WH, lh = joint_decomposition(H, tol)
    WK, lk = joint_decomposition(K, tol)
    offh = {}
    o = 0
    for lab in lh:
        offh[lab[:2]] = (o, lab)
        o += lab[2] * lab[3] * lab[4]
    out = []
    o = 0
    for i, j, n, m, ck in lk:
        if (i, j) in offh:
            oh, (_, _, _, _, ch) = offh[(i, j)]
            for s in range(ck):
                for t in range(ch):
                    X = np.zeros((ck, ch))
                    X[s, t] = 1.0 / np.sqrt(n * m)
                    blockmap = np.kron(np.eye(n * m), X)
                    T = WK[:, o : o + n * m * ck] @ blockmap @ WH[:, oh : oh + n * m * ch].conj().T
                    out.append(T)
        o += n * m * ck
    return out


def unitary_equivalence(H: Bimodule, K: Bimodule, tol: float = DEFAULT_TOL):
    """Explicit unitary intertwiner ``H → K`` or a multiplicity-mismatch refusal.

    The unitary is assembled from the joint isotypic decompositions of both
    bimodules; its equivariance residual is measured, not assumed.
    """
    if not _same_pair(H, K):
        return Refusal("algebra pairs differ")
    CH, CK = multiplicity_matrix(H), multiplicity_matrix(K)
    if CH.shape != CK.shape or np.any(CH != CK):
        diff = np.argwhere(CH != CK)
        i, j = (int(v) for v in diff[0])
        return Refusal(
            "multiplicity mismatch",
            {"entry": [i, j], "left": int(CH[i, j]), "right": int(CK[i, j])},
        )
    WH, lh = joint_decomposition(H, tol)
    WK, lk = joint_decomposition(K, tol)
    if [l[:2] for l in lh] != [l[:2] for l in lk]:
        return Refusal("isotypic components differ")
    T = WK @ WH.conj().T
    res = equivariance_residual(T, H, K)
    uni = float(np.linalg.norm(T.conj().T @ T - np.eye(T.shape[1])))
    return Certificate(T, res, uni)


def intertwiner_by_solve(H: Bimodule, K: Bimodule, seed: int = 0, tol: float = DEFAULT_TOL):
    """Least-squares intertwiner search followed by polar unitarization.

    Brute force over the full ``dim K × dim H`` unknowns; used as an
    independent check of :func:`unitary_equivalence` on small inputs.
    """
    dh, dk = H.space_dim, K.space_dim
    eqs = []
    # row-major vec: vec(T X) = (1 ⊗ Xᵀ) vec T, vec(Y T) = (Y ⊗ 1) vec T
    pairs = [(H.act_left(g), K.act_left(g)) for g in H.left_algebra.generators()]
    pairs += [(H.right_action(g), K.right_action(g)) for g in H.right_action.source.generators()]
    for X, Y in pairs:
        eqs.append(np.kron(np.eye(dk), X.T) - np.kron(Y, np.eye(dh)))
    M = np.vstack(eqs)
    _, s, vh = np.linalg.svd(M)
    s_full = np.concatenate([s, np.zeros(vh.shape[0] - len(s))])
    null = vh[s_full < tol * max(1.0, s_full[0]) * 10].conj().T
    if null.shape[1] == 0:
        return Refusal("no nonzero intertwiner")
    rng = np.random.default_rng(seed)
    c = rng.standard_normal(null.shape[1]) + 1j * rng.standard_normal(null.shape[1])
    T = (null @ c).reshape(dk, dh)
    if dk != dh or np.linalg.matrix_rank(T, tol=1e-8 * np.linalg.norm(T)) < dh:
        return Refusal("no invertible intertwiner", {"null_dim": int(null.shape[1])})
    U, _ = sla.polar(T)
    res = equivariance_residual(U, H, K)
    uni = float(np.linalg.norm(U.conj().T @ U - np.eye(dh)))
    return Certificate(U, res, uni, kind="polar-intertwiner", details={"null_dim": int(null.shape[1])})
