"""Separability idempotents of finite-dimensional algebras given by structure constants."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..algebra import DEFAULT_TOL, AbstractAlgebra
from ..bimodule import Refusal

__all__ = ["SeparabilityIdempotent", "separability_system", "separability_check"]


@dataclass
class SeparabilityIdempotent:
    """``e = Σ e[i, j] b_i ⊗ b_j`` with ``a·e = e·a`` for all ``a`` and ``mult(e) = 1``."""

    element: np.ndarray
    residual: float
    solution_space_dim: int
    details: dict = field(default_factory=dict)

    kind = "separability-idempotent"

    @property
    def ok(self) -> bool:
        return True

    def passes(self, tol: float) -> bool:
        return self.residual < tol


def separability_system(A: AbstractAlgebra) -> tuple[np.ndarray, np.ndarray]:
    """Linear system ``M vec(e) = b`` for a separability idempotent.

    Rows come in ``dim(A) + 1`` groups: ``(L_a ⊗ 1 − 1 ⊗ R_a) vec(e) = 0``
    for every basis element ``a`` (the left action on the first factor, the
    right action on the second), then ``Σ e[i, j] c[i, j, :] = unit``.
    """
    k = A.dim
    eye = np.eye(k)
    blocks = []
    for i in range(k):
        a = eye[i]
        blocks.append(np.kron(A.left_matrix(a), eye) - np.kron(eye, A.right_matrix(a)))
    blocks.append(A.structure_constants.reshape(k * k, k).T)
    M = np.vstack(blocks)
    b = np.concatenate([np.zeros(k * k * k, dtype=complex), A.unit])
    return M, b


def separability_check(A: AbstractAlgebra, *, tol: float = DEFAULT_TOL):
    """Solve for a separability idempotent, or certify that none exists.

    Returns
    -------
    SeparabilityIdempotent
        When the least-squares solution satisfies the system to ``tol``
        (relative to ``‖b‖``).  ``element`` is the minimum-norm solution as
        a ``k x k`` coefficient matrix.
    Refusal
        Otherwise, with the Fredholm witness ``y = b − M M⁺ b``: it satisfies
        ``Mᴴ y = 0`` while ``⟨y, b⟩ = ‖y‖² > 0``, so ``M e = b`` has no
        solution.
    """
    M, b = separability_system(A)
    k = A.dim
    e, *_ = np.linalg.lstsq(M, b, rcond=None)
    r = b - M @ e
    scale = max(1.0, float(np.linalg.norm(b)))
    residual = float(np.linalg.norm(r)) / scale
    s = np.linalg.svd(M, compute_uv=False)
    rank = int(np.sum(s > 1e-10 * max(1.0, s[0])))
    if residual < tol:
        return SeparabilityIdempotent(
            element=e.reshape(k, k),
            residual=residual,
            solution_space_dim=k * k - rank,
            details={"algebra_dim": k, "system_shape": list(M.shape)},
        )
    # b minus its projection on range(M); orthogonal to the range by construction
    y = r
    return Refusal(
        reason="no separability idempotent: the linear system is inconsistent",
        witness={
            "vector": y,
            "adjoint_residual": float(np.linalg.norm(M.conj().T @ y)),
            "pairing": float(np.real(np.vdot(y, b))),
            "lstsq_residual": residual,
            "system_shape": list(M.shape),
        },
    )
