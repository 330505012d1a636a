"""Helpers for operators and algebras on tensor products of small legs."""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .algebra import RepresentedAlgebra, scalars, tensor_product

__all__ = ["leg_permutation", "embed_operator", "embed_algebra", "reverse_legs"]


def leg_permutation(dims: Sequence[int], order: Sequence[int]) -> np.ndarray:
    """Unitary ``P`` with ``P (v_{order[0]} ⊗ v_{order[1]} ⊗ …) = v_0 ⊗ v_1 ⊗ …``.

    ``dims`` are the leg dimensions in natural order; the input of ``P`` lists
    the legs in ``order``.
    """
    dims = list(dims)
    order = list(order)
    total = int(np.prod(dims)) if dims else 1
    in_dims = [dims[i] for i in order]
    idx = np.arange(total).reshape(in_dims) if dims else np.arange(1)
    # axis k of the input tensor is natural leg order[k]
    inv = np.argsort(order)
    natural = idx.transpose(inv).reshape(-1) if dims else idx
    P = np.zeros((total, total))
    P[np.arange(total), natural] = 1.0
    return P


def _rest(order_dims, positions):
    return [i for i in range(len(order_dims)) if i not in set(positions)]


def embed_operator(x: np.ndarray, positions: Sequence[int], dims: Sequence[int]) -> np.ndarray:
    """``x`` acting on the legs ``positions`` (in that order) of ``⊗ dims``."""
    rest = _rest(dims, positions)
    order = list(positions) + rest
    rdim = int(np.prod([dims[i] for i in rest])) if rest else 1
    P = leg_permutation(dims, order)
    return P @ np.kron(x, np.eye(rdim)) @ P.T


def embed_algebra(A: RepresentedAlgebra, positions: Sequence[int], dims: Sequence[int]) -> RepresentedAlgebra:
    """``A ⊗ 1`` placed on the legs ``positions`` of ``⊗ dims``."""
    rest = _rest(dims, positions)
    order = list(positions) + rest
    rdim = int(np.prod([dims[i] for i in rest])) if rest else 1
    P = leg_permutation(dims, order)
    T = tensor_product(A, scalars(rdim)) if rdim > 1 else A
    return RepresentedAlgebra(P @ T.frame, T.blocks, check=False)


def reverse_legs(x: np.ndarray, dims: Sequence[int]) -> np.ndarray:
    """Conjugate ``x`` by the leg-order reversal of ``⊗ dims``."""
    k = len(dims)
    d = list(dims)
    total = int(np.prod(d))
    idx = np.arange(total).reshape(d).transpose(list(range(k))[::-1]).reshape(-1)
    R = np.zeros((total, total))
    R[np.arange(total), idx] = 1.0
    return R @ x @ R.T
