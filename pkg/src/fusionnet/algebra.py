"""Finite-dimensional *-algebras represented on Hilbert spaces.

Every algebra is stored in spatial Wedderburn form

    A = U (⊕_i M_{n_i} ⊗ 1_{m_i}) U*

where ``U`` is a unitary *frame* on the ambient space and ``blocks`` lists the
pairs ``(n_i, m_i)`` of block size and multiplicity.  Inside block ``i`` the
frame columns are ordered ``a * m_i + s`` with ``a < n_i`` the matrix index and
``s < m_i`` the multiplicity index.  Commutants, centers, relative commutants,
tensor products and joins are all computed structurally from this data, so
they stay cheap even when the algebra itself has tens of thousands of
dimensions.

A generic word-closure routine (:func:`generate_closure`) produces this form
from an arbitrary list of generating operators.
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.linalg as sla

DEFAULT_TOL = 1e-9

__all__ = [
    "DEFAULT_TOL",
    "AlgebraError",
    "RepresentedAlgebra",
    "StarHomomorphism",
    "AbstractAlgebra",
    "as_operator",
    "scalars",
    "full_algebra",
    "diagonal_algebra",
    "from_blocks",
    "generate_closure",
    "wedderburn",
    "commutant",
    "center",
    "is_factor",
    "relative_commutant",
    "inclusion_data",
    "decompose_representation",
    "tensor_product",
    "opposite",
    "join",
    "l2",
    "canonical_trace_weights",
    "canonical_trace",
    "algebra_distance",
    "commutator_residual",
]


class AlgebraError(ValueError):
    """Raised for invalid algebraic input (dimension mismatch, non-inclusion, ...)."""


def as_operator(x, dim: int | None = None) -> np.ndarray:
    """Validate ``x`` as a finite square complex matrix, optionally of size ``dim``."""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise AlgebraError(f"operator must be a square matrix, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise AlgebraError(f"operator has dimension {arr.shape[0]}, expected {dim}")
    if not np.all(np.isfinite(arr)):
        raise AlgebraError("operator has non-finite entries")
    return arr


def _offsets(sizes: Sequence[int]) -> list[int]:
    out = [0]
    for s in sizes:
        out.append(out[-1] + s)
    return out


def _unitarity_residual(u: np.ndarray) -> float:
    return float(np.linalg.norm(u.conj().T @ u - np.eye(u.shape[1])))


class RepresentedAlgebra:
    """A unital *-subalgebra of B(ℂ^d) in spatial Wedderburn form.

    Parameters
    ----------
    frame : (d, d) array
        Unitary whose columns adapt the ambient space to the block structure.
    blocks : sequence of (n, m)
        Block sizes and multiplicities, with ``sum(n * m) == d``.
    check : bool
        Verify unitarity of ``frame``.
    """

    def __init__(self, frame, blocks, *, check: bool = True, tol: float = DEFAULT_TOL):
        frame = as_operator(frame)
        blocks = tuple((int(n), int(m)) for n, m in blocks)
        if any(n < 1 or m < 1 for n, m in blocks):
            raise AlgebraError(f"block sizes and multiplicities must be positive: {blocks}")
        total = sum(n * m for n, m in blocks)
        if total != frame.shape[0]:
            raise AlgebraError(
                f"blocks {blocks} need ambient dimension {total}, frame has {frame.shape[0]}"
            )
        if check:
            res = _unitarity_residual(frame)
            if res > max(tol, 1e-9) * 100 * max(1, frame.shape[0]):
                raise AlgebraError(f"frame is not unitary (residual {res:.2e})")
        frame = frame.copy()
        frame.setflags(write=False)
        self._frame = frame
        self._blocks = blocks

    # -- structure ---------------------------------------------------------
    @property
    def frame(self) -> np.ndarray:
        return self._frame

    @property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        return self._blocks

    @property
    def ambient_dim(self) -> int:
        return self._frame.shape[0]

    @property
    def dim(self) -> int:
        """Vector-space dimension, ``sum n_i**2``."""
        return sum(n * n for n, _ in self._blocks)

    @property
    def offsets(self) -> list[int]:
        return _offsets([n * m for n, m in self._blocks])

    @property
    def contains_identity(self) -> bool:
        return True

    def block_frame(self, i: int) -> np.ndarray:
        off = self.offsets
        return self._frame[:, off[i] : off[i + 1]]

    @cached_property
    def central_projections(self) -> list[np.ndarray]:
        out = []
        for i in range(len(self._blocks)):
            f = self.block_frame(i)
            out.append(f @ f.conj().T)
        return out

    # -- elements ----------------------------------------------------------
    def parts(self, x) -> list[np.ndarray]:
        """Block components of the conditional expectation of ``x`` onto the algebra.

        For ``x`` in the algebra these are exactly its Wedderburn components.
        """
        x = as_operator(x, self.ambient_dim)
        out = []
        for i, (n, m) in enumerate(self._blocks):
            f = self.block_frame(i)
            chunk = (f.conj().T @ x @ f).reshape(n, m, n, m)
            out.append(np.einsum("asbs->ab", chunk) / m)
        return out

    def block_part(self, x, i: int) -> np.ndarray:
        """The ``i``-th entry of :meth:`parts` alone."""
        x = as_operator(x, self.ambient_dim)
        n, m = self._blocks[i]
        f = self.block_frame(i)
        chunk = (f.conj().T @ x @ f).reshape(n, m, n, m)
        return np.einsum("asbs->ab", chunk) / m

    def element(self, parts: Sequence[np.ndarray]) -> np.ndarray:
        """Assemble ``U (⊕ x_i ⊗ 1) U*`` from block components."""
        if len(parts) != len(self._blocks):
            raise AlgebraError("wrong number of block components")
        d = self.ambient_dim
        out = np.zeros((d, d), dtype=complex)
        for i, ((n, m), p) in enumerate(zip(self._blocks, parts)):
            p = np.asarray(p, dtype=complex)
            if p.shape != (n, n):
                raise AlgebraError(f"block {i} component must be {n}x{n}")
            f = self.block_frame(i)
            fp = np.tensordot(f.reshape(d, n, m), p, axes=([1], [0]))  # (d, m, n)
            out += fp.transpose(0, 2, 1).reshape(d, n * m) @ f.conj().T
        return out

    def project(self, x) -> np.ndarray:
        """Hilbert–Schmidt orthogonal projection of ``x`` onto the algebra."""
        return self.element(self.parts(x))

    def residual(self, x) -> float:
        """Relative HS distance of ``x`` from the algebra."""
        x = as_operator(x, self.ambient_dim)
        return float(np.linalg.norm(x - self.project(x)) / max(1.0, np.linalg.norm(x)))

    def contains(self, x, tol: float = DEFAULT_TOL) -> bool:
        return self.residual(x) < tol * max(1, self.ambient_dim)

    def matrix_unit(self, i: int, a: int, b: int) -> np.ndarray:
        n, m = self._blocks[i]
        f = self.block_frame(i)
        return f[:, a * m : (a + 1) * m] @ f[:, b * m : (b + 1) * m].conj().T

    def generators(self) -> list[np.ndarray]:
        """A small *-generating set: the matrix units ``e^i_{a0}``."""
        return [self.matrix_unit(i, a, 0) for i, (n, _) in enumerate(self._blocks) for a in range(n)]

    @cached_property
    def basis(self) -> list[np.ndarray]:
        """Hilbert–Schmidt orthonormal basis (normalized matrix units)."""
        out = []
        for i, (n, m) in enumerate(self._blocks):
            for a in range(n):
                for b in range(n):
                    out.append(self.matrix_unit(i, a, b) / np.sqrt(m))
        return out

    def random_element(self, rng: np.random.Generator, hermitian: bool = False) -> np.ndarray:
        parts = []
        for n, _ in self._blocks:
            p = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            if hermitian:
                p = p + p.conj().T
            parts.append(p)
        return self.element(parts)

    def same_as(self, other: "RepresentedAlgebra", tol: float = DEFAULT_TOL) -> bool:
        """True when ``other`` is the same algebra with the same block labelling."""
        if self is other:
            return True
        if self.ambient_dim != other.ambient_dim or self._blocks != other._blocks:
            return False
        return bool(np.allclose(self._frame, other._frame, atol=tol * 100))

    def __repr__(self) -> str:
        return f"RepresentedAlgebra(ambient_dim={self.ambient_dim}, blocks={list(self._blocks)})"


# -- constructors ----------------------------------------------------------

def from_blocks(blocks, frame=None) -> RepresentedAlgebra:
    """Multi-matrix algebra ``⊕ M_n ⊗ 1_m`` in the given (default standard) frame."""
    d = sum(int(n) * int(m) for n, m in blocks)
    if frame is None:
        frame = np.eye(d)
    return RepresentedAlgebra(frame, blocks)


def scalars(dim: int) -> RepresentedAlgebra:
    return from_blocks([(1, dim)])


def full_algebra(dim: int) -> RepresentedAlgebra:
    return from_blocks([(dim, 1)])


def diagonal_algebra(dim: int) -> RepresentedAlgebra:
    return from_blocks([(1, 1)] * dim)


# -- representations -------------------------------------------------------

def decompose_representation(
    A: RepresentedAlgebra,
    rep: Callable[[np.ndarray], np.ndarray],
    dim: int,
    tol: float = DEFAULT_TOL,
) -> tuple[np.ndarray, list[int]]:
    """Spatially decompose a unital *-representation of ``A`` on ℂ^dim.

    Returns ``(W, mults)`` with ``rep(x) = W (⊕_k x_k ⊗ 1_{mults[k]}) W*``.
    Blocks with zero multiplicity are absent from ``W``.  The construction
    is exact: ``W`` is read off from the images of the matrix units.
    """
    cols = []
    mults = []
    for k, (n, _) in enumerate(A.blocks):
        p = as_operator(rep(A.matrix_unit(k, 0, 0)), dim)
        p = (p + p.conj().T) / 2
        w, v = np.linalg.eigh(p)
        if np.any(np.minimum(np.abs(w), np.abs(w - 1)) > 1e-6):
            raise AlgebraError("image of a minimal projection is not a projection")
        sel = w > 0.5
        r = int(sel.sum())
        mults.append(r)
        if r == 0:
            continue
        q = v[:, sel]
        cols.append(q)
        for c in range(1, n):
            cols.append(as_operator(rep(A.matrix_unit(k, c, 0)), dim) @ q)
    W = np.hstack(cols) if cols else np.zeros((dim, 0), dtype=complex)
    if W.shape[1] != dim:
        raise AlgebraError(
            f"representation is not unital: images of block units span {W.shape[1]} of {dim} dimensions"
        )
    res = _unitarity_residual(W)
    if res > 1e-6 * dim:
        raise AlgebraError(f"representation is not a *-representation (residual {res:.2e})")
    return W, mults


class StarHomomorphism:
    """Unital *-homomorphism ``x ↦ W (⊕_k x_k ⊗ 1_{r_k}) W*`` out of ``source``.

    Parameters
    ----------
    source : RepresentedAlgebra
    frame : (D, D) unitary
    multiplicities : sequence of int
        One entry per block of ``source``; zero means the block is killed.
    target : RepresentedAlgebra, optional
        An algebra on ℂ^D containing the image.
    """

    def __init__(self, source: RepresentedAlgebra, frame, multiplicities, target=None):
        self.source = source
        self.frame = as_operator(frame)
        self.multiplicities = tuple(int(r) for r in multiplicities)
        if len(self.multiplicities) != len(source.blocks):
            raise AlgebraError("one multiplicity per source block is required")
        need = sum(n * r for (n, _), r in zip(source.blocks, self.multiplicities))
        if need != self.frame.shape[0]:
            raise AlgebraError("homomorphism frame does not match multiplicities")
        self.target = target
        if target is not None:
            if target.ambient_dim != self.frame.shape[0]:
                raise AlgebraError("target ambient dimension mismatch")
            for g in source.generators():
                if not target.contains(self(g)):
                    raise AlgebraError("image of the homomorphism is not inside the target")

    @classmethod
    def from_function(cls, source, rep, dim, target=None, tol=DEFAULT_TOL):
        """Build from any callable representation by spatial decomposition."""
        W, mults = decompose_representation(source, rep, dim, tol)
        return cls(source, W, mults, target)

    @property
    def target_dim(self) -> int:
        return self.frame.shape[0]

    def __call__(self, x) -> np.ndarray:
        return self.from_parts(self.source.parts(x))

    def from_parts(self, parts) -> np.ndarray:
        D = self.target_dim
        out = np.zeros((D, D), dtype=complex)
        off = 0
        for (n, _), r, p in zip(self.source.blocks, self.multiplicities, parts):
            if r == 0:
                continue
            f = self.frame[:, off : off + n * r]
            out += f @ np.kron(p, np.eye(r)) @ f.conj().T
            off += n * r
        return out

    def image(self) -> RepresentedAlgebra:
        blocks = [(n, r) for (n, _), r in zip(self.source.blocks, self.multiplicities) if r > 0]
        return RepresentedAlgebra(self.frame, blocks, check=False)

    def is_injective(self) -> bool:
        return all(r > 0 for r in self.multiplicities)

    def compose(self, inner: "StarHomomorphism") -> "StarHomomorphism":
        """``self ∘ inner``; requires ``inner`` to land in ``self.source``."""
        return StarHomomorphism.from_function(
            inner.source, lambda x: self(inner(x)), self.target_dim, target=self.target
        )

    def check(self, seed: int = 0) -> dict:
        """Multiplicativity, unitality and *-compatibility residuals on random samples."""
        rng = np.random.default_rng(seed)
        a = self.source.random_element(rng)
        b = self.source.random_element(rng)
        d = self.source.ambient_dim
        mult = np.linalg.norm(self(a @ b) - self(a) @ self(b))
        unit = np.linalg.norm(self(np.eye(d)) - np.eye(self.target_dim))
        star = np.linalg.norm(self(a.conj().T) - self(a).conj().T)
        return {"multiplicative": float(mult), "unital": float(unit), "star": float(star)}

    def coefficient_matrix(self) -> np.ndarray:
        """Matrix of the map on HS-basis coefficient vectors (small cases only)."""
        if self.target is None:
            raise AlgebraError("coefficient matrix needs a target algebra")
        tb = self.target.basis
        cols = []
        for b in self.source.basis:
            y = self(b)
            cols.append([np.vdot(t, y) for t in tb])
        return np.array(cols, dtype=complex).T


# -- closure and Wedderburn ------------------------------------------------

def _orth_extend(Q: np.ndarray, C: np.ndarray, tol: float) -> np.ndarray:
    """Orthonormal columns spanning the part of span(C) outside span(Q)."""
    if C.shape[1] == 0:
        return C
    scale = max(1.0, float(np.max(np.linalg.norm(C, axis=0))))
    if Q.shape[1]:
        C = C - Q @ (Q.conj().T @ C)
        C = C - Q @ (Q.conj().T @ C)
    u, s, _ = np.linalg.svd(C, full_matrices=False)
    keep = s > tol * scale
    return u[:, keep]


def _closure_basis(gens: list[np.ndarray], d: int, tol: float) -> np.ndarray:
    """Columns: HS-orthonormal vectorized basis of the unital *-algebra generated."""
    letters = []
    for g in gens:
        letters.append(g)
        if np.linalg.norm(g - g.conj().T) > tol * max(1.0, np.linalg.norm(g)):
            letters.append(g.conj().T)
    letters = [g / max(1.0, np.linalg.norm(g, 2)) for g in letters]
    Q = np.eye(d, dtype=complex).reshape(-1, 1) / np.sqrt(d)
    new = _orth_extend(Q, np.stack([g.reshape(-1) for g in letters], axis=1), tol)
    Q = np.hstack([Q, new])
    while new.shape[1]:
        if Q.shape[1] > d * d:
            raise AlgebraError("closure did not converge; tolerance misconfigured")
        cand = []
        for col in new.T:
            w = col.reshape(d, d)
            for g in letters:
                cand.append((w @ g).reshape(-1))
                cand.append((g @ w).reshape(-1))
        new = _orth_extend(Q, np.stack(cand, axis=1), tol)
        Q = np.hstack([Q, new])
    return Q


def _cluster(values: np.ndarray, gap: float) -> list[np.ndarray]:
    order = np.argsort(values)
    groups = [[order[0]]]
    for a, b in zip(order[:-1], order[1:]):
        if values[b] - values[a] > gap:
            groups.append([b])
        else:
            groups[-1].append(b)
    return [np.array(g) for g in groups]


def _structure_from_basis(
    basis: Sequence[np.ndarray], d: int, tol: float, rng: np.random.Generator
) -> RepresentedAlgebra:
    """Randomized Wedderburn decomposition of a *-algebra given by an HS-orthonormal basis."""
    k = len(basis)

    def rand_elem(herm=False):
        c = rng.standard_normal(k) + 1j * rng.standard_normal(k)
        x = sum(ci * b for ci, b in zip(c, basis))
        return x + x.conj().T if herm else x

    # averaging over an orthonormal basis maps A into its center
    h = rand_elem(herm=True)
    z = sum(b @ h @ b.conj().T for b in basis)
    z = (z + z.conj().T) / 2
    w, v = np.linalg.eigh(z)
    scale = max(1.0, float(np.max(np.abs(w))))
    groups = _cluster(w, 10 * tol * scale * d)
    frames = []
    blocks = []
    for g in groups:
        V = v[:, g]
        zp = V @ V.conj().T
        rank = len(g)
        # dim(z A) = n^2 read from the compressed basis
        zb = np.stack([(zp @ b).reshape(-1) for b in basis], axis=1)
        s = np.linalg.svd(zb, compute_uv=False)
        dim_block = int(np.sum(s > tol * max(1.0, s[0]) * d))
        n = int(round(np.sqrt(dim_block)))
        if n * n != dim_block or rank % n:
            raise AlgebraError(
                "spectral gap failure in Wedderburn split; use a smaller tolerance or a new seed"
            )
        m = rank // n
        # minimal projections from a random self-adjoint element of z A
        hh = V.conj().T @ rand_elem(herm=True) @ V
        ew, ev = np.linalg.eigh((hh + hh.conj().T) / 2)
        chunks = [np.arange(a * m, (a + 1) * m) for a in range(n)]
        spread = max(float(np.ptp(ew[c])) for c in chunks)
        gaps = [ew[(a + 1) * m] - ew[a * m + m - 1] for a in range(n - 1)]
        if gaps and min(gaps) <= max(spread, tol * scale) * 10:
            raise AlgebraError(
                "spectral gap failure in Wedderburn split; use a smaller tolerance or a new seed"
            )
        u = V @ ev[:, chunks[0]]  # orthonormal basis of the first minimal projection
        p1 = u @ u.conj().T
        cols = [u]
        for a in range(1, n):
            pa_vecs = V @ ev[:, chunks[a]]
            pa = pa_vecs @ pa_vecs.conj().T
            y = pa @ rand_elem() @ p1
            yu = y @ u
            c = np.linalg.norm(yu[:, 0])
            cols.append(yu / c)
        block = np.hstack(cols)  # columns (a, s) in order a*m + s
        frames.append(block)
        blocks.append((n, m))
    frame = np.hstack(frames)
    alg = RepresentedAlgebra(frame, blocks, check=False)
    res = _unitarity_residual(frame)
    if res > 1e-6 * d:
        raise AlgebraError(f"Wedderburn frame not unitary (residual {res:.2e})")
    worst = max(alg.residual(b) for b in basis)
    if worst > 1e-6:
        raise AlgebraError(f"Wedderburn reconstruction failed (residual {worst:.2e})")
    return alg


def generate_closure(
    generators: Iterable, ambient_dim: int | None = None, *, tol: float = DEFAULT_TOL, seed: int = 0
) -> RepresentedAlgebra:
    """Smallest unital *-algebra containing ``generators``.

    Words in the generators and their adjoints are added until the
    Hilbert–Schmidt span stops growing; rank decisions use the singular value
    threshold ``tol * largest``.  The Wedderburn structure is then extracted
    with a seeded randomized split.

    Examples
    --------
    >>> generate_closure([], 3).blocks
    ((1, 3),)
    """
    gens = [np.asarray(g, dtype=complex) for g in generators]
    if ambient_dim is None:
        if not gens:
            raise AlgebraError("ambient_dim is required when there are no generators")
        ambient_dim = gens[0].shape[0]
    gens = [as_operator(g, ambient_dim) for g in gens]
    d = ambient_dim
    if not gens:
        return scalars(d)
    Q = _closure_basis(gens, d, tol)
    basis = [np.ascontiguousarray(q.reshape(d, d)) for q in Q.T]
    return _structure_from_basis(basis, d, tol, np.random.default_rng(seed))


def wedderburn(A, *, tol: float = DEFAULT_TOL, seed: int = 0):
    """Central projections and ``(n_i, m_i)`` blocks.

    ``A`` may be a :class:`RepresentedAlgebra` or a list of operators
    spanning a *-algebra (then decomposed with the seeded randomized split).
    """
    if not isinstance(A, RepresentedAlgebra):
        ops = [as_operator(x) for x in A]
        d = ops[0].shape[0]
        Q = _orth_extend(np.zeros((d * d, 0), dtype=complex), np.stack([o.reshape(-1) for o in ops], 1), tol)
        A = _structure_from_basis([q.reshape(d, d) for q in Q.T], d, tol, np.random.default_rng(seed))
    return list(A.central_projections), list(A.blocks)


# -- structural operations -------------------------------------------------

def commutant(A: RepresentedAlgebra) -> RepresentedAlgebra:
    """``A' = U (⊕ 1_{n_i} ⊗ M_{m_i}) U*``, i.e. blocks ``(m_i, n_i)``."""
    cols = []
    for i, (n, m) in enumerate(A.blocks):
        f = A.block_frame(i)
        # reorder legs (a, s) -> (s, a)
        perm = np.arange(n * m).reshape(n, m).T.reshape(-1)
        cols.append(f[:, perm])
    return RepresentedAlgebra(np.hstack(cols), [(m, n) for n, m in A.blocks], check=False)


def center(A: RepresentedAlgebra) -> RepresentedAlgebra:
    return RepresentedAlgebra(A.frame, [(1, n * m) for n, m in A.blocks], check=False)


def is_factor(A: RepresentedAlgebra) -> bool:
    return len(A.blocks) == 1


def _check_inside(A: RepresentedAlgebra, B: RepresentedAlgebra, tol: float) -> None:
    if A.ambient_dim != B.ambient_dim:
        raise AlgebraError("algebras act on different spaces")
    # a generic element of A lies in B only if all of A does
    rng = np.random.default_rng(12345)
    worst = max(B.residual(A.random_element(rng)) for _ in range(2))
    if worst > tol * 1e3 * max(1, A.ambient_dim):
        raise AlgebraError(f"first algebra is not contained in the second (residual {worst:.2e})")


def _restriction_data(A: RepresentedAlgebra, B: RepresentedAlgebra, tol: float):
    """For A ⊆ B: per block j of B, decomposition of x ↦ x_j (block j part in B)."""
    _check_inside(A, B, tol)
    out = []
    for j, (nj, _) in enumerate(B.blocks):
        W, mults = decompose_representation(A, lambda x, j=j: B.block_part(x, j), nj, tol)
        out.append((W, mults))
    return out


def relative_commutant(A: RepresentedAlgebra, B: RepresentedAlgebra, tol: float = DEFAULT_TOL) -> RepresentedAlgebra:
    """``A' ∩ B`` for ``A ⊆ B``."""
    data = _restriction_data(A, B, tol)
    cols = []
    blocks = []
    for j, ((nj, mj), (W, mults)) in enumerate(zip(B.blocks, data)):
        G = B.block_frame(j) @ np.kron(W, np.eye(mj))
        off = 0
        for (nk, _), r in zip(A.blocks, mults):
            if r == 0:
                continue
            idx = np.empty(r * nk * mj, dtype=int)
            for t in range(r):
                for c in range(nk):
                    for s in range(mj):
                        idx[t * nk * mj + c * mj + s] = (off + c * r + t) * mj + s
            cols.append(G[:, idx])
            blocks.append((r, nk * mj))
            off += nk * r
    return RepresentedAlgebra(np.hstack(cols), blocks, check=False)


def inclusion_data(A: RepresentedAlgebra, B: RepresentedAlgebra, tol: float = DEFAULT_TOL):
    """Inclusion matrix ``Λ`` (rows: blocks of A, columns: blocks of B) and index ``‖Λ‖²``."""
    data = _restriction_data(A, B, tol)
    lam = np.array([[data[j][1][k] for j in range(len(B.blocks))] for k in range(len(A.blocks))], dtype=int)
    index = float(np.linalg.norm(lam, 2) ** 2)
    return lam, index


def tensor_product(A: RepresentedAlgebra, B: RepresentedAlgebra) -> RepresentedAlgebra:
    """``A ⊗ B`` on ℂ^{dA} ⊗ ℂ^{dB}; blocks ``(n_i n_j, m_i m_j)``."""
    dB = B.ambient_dim
    offA, offB = A.offsets, B.offsets
    big = np.kron(A.frame, B.frame)
    cols = []
    blocks = []
    for i, (ni, mi) in enumerate(A.blocks):
        for j, (nj, mj) in enumerate(B.blocks):
            a, s, b, t = np.meshgrid(np.arange(ni), np.arange(mi), np.arange(nj), np.arange(mj), indexing="ij")
            old = (offA[i] + a * mi + s) * dB + offB[j] + b * mj + t
            new = ((a * nj + b) * (mi * mj) + s * mj + t)
            idx = np.empty(ni * nj * mi * mj, dtype=int)
            idx[new.reshape(-1)] = old.reshape(-1)
            cols.append(big[:, idx])
            blocks.append((ni * nj, mi * mj))
    return RepresentedAlgebra(np.hstack(cols), blocks, check=False)


def opposite(A: RepresentedAlgebra) -> RepresentedAlgebra:
    """The opposite algebra realized as ``{xᵀ : x ∈ A}``; ``x ↦ xᵀ`` is the anti-isomorphism."""
    return RepresentedAlgebra(A.frame.conj(), A.blocks, check=False)


def commutator_residual(xs: Sequence[np.ndarray], ys: Sequence[np.ndarray]) -> float:
    worst = 0.0
    for x in xs:
        for y in ys:
            worst = max(worst, float(np.linalg.norm(x @ y - y @ x)))
    return worst


def join(A: RepresentedAlgebra, B: RepresentedAlgebra, *, tol: float = DEFAULT_TOL, seed: int = 0) -> RepresentedAlgebra:
    """Algebra generated by ``A`` and ``B`` on a common space.

    Commuting pairs are joined structurally (``⊕ M_{n_i} ⊗ π_i(B)``);
    otherwise falls back to :func:`generate_closure`.
    """
    if A.ambient_dim != B.ambient_dim:
        raise AlgebraError("join needs algebras on the same space")
    ga, gb = A.generators(), B.generators()
    if commutator_residual(ga, gb) < tol * 1e3:
        cols = []
        blocks = []
        for i, (ni, mi) in enumerate(A.blocks):
            F = A.block_frame(i)

            def comp(b, F=F, ni=ni, mi=mi):
                return np.einsum("asat->st", (F.conj().T @ b @ F).reshape(ni, mi, ni, mi)) / ni

            W, mults = decompose_representation(B, comp, mi, tol)
            G = F @ np.kron(np.eye(ni), W)
            off = 0
            for (nj, _), r in zip(B.blocks, mults):
                if r == 0:
                    continue
                a, c, t = np.meshgrid(np.arange(ni), np.arange(nj), np.arange(r), indexing="ij")
                old = a * mi + off + c * r + t
                new = (a * nj + c) * r + t
                idx = np.empty(ni * nj * r, dtype=int)
                idx[new.reshape(-1)] = old.reshape(-1)
                cols.append(G[:, idx])
                blocks.append((ni * nj, r))
                off += nj * r
        return RepresentedAlgebra(np.hstack(cols), blocks, check=False)
    return generate_closure(ga + gb, A.ambient_dim, tol=tol, seed=seed)


def algebra_distance(A: RepresentedAlgebra, B: RepresentedAlgebra) -> float:
    """Symmetric subspace residual: worst relative distance of a basis element of one from the other.

    Uses the full HS bases while they fit in memory (about 2**22 matrix
    entries) and generators plus a dimension comparison beyond that.
    """
    if A.ambient_dim != B.ambient_dim:
        return float("inf")
    if A.dim != B.dim:
        return float("inf")
    if A.dim * A.ambient_dim**2 <= 2**22:
        xs, ys = A.basis, B.basis
    else:
        xs, ys = A.generators(), B.generators()
    return max(max(B.residual(x) for x in xs), max(A.residual(y) for y in ys))


def canonical_trace_weights(A: RepresentedAlgebra) -> np.ndarray:
    """Per-block weights ``n_i / Σ n_j²`` of the canonical tracial state."""
    ns = np.array([n for n, _ in A.blocks], dtype=float)
    return ns / np.sum(ns**2)


def canonical_trace(A: RepresentedAlgebra, x) -> complex:
    w = canonical_trace_weights(A)
    return complex(sum(wi * np.trace(p) for wi, p in zip(w, A.parts(x))))


def l2(A: RepresentedAlgebra):
    """Standard form of ``A`` as an A–A bimodule (see :func:`fusionnet.bimodule.standard_bimodule`)."""
    from .bimodule import standard_bimodule

    return standard_bimodule(A)


# -- abstract (not necessarily semisimple) algebras -------------------------

class AbstractAlgebra:
    """Algebra given by structure constants ``e_i e_j = Σ_k c[i, j, k] e_k``.

    Parameters
    ----------
    structure_constants : (k, k, k) array
    unit : (k,) array
        Coefficients of the unit.
    """

    def __init__(self, structure_constants, unit, tol: float = DEFAULT_TOL):
        c = np.asarray(structure_constants, dtype=complex)
        if c.ndim != 3 or len(set(c.shape)) != 1:
            raise AlgebraError("structure constants must be a k x k x k tensor")
        u = np.asarray(unit, dtype=complex)
        if u.shape != (c.shape[0],):
            raise AlgebraError("unit must be a coefficient vector")
        self.structure_constants = c
        self.unit = u
        self.tol = tol
        eye = np.eye(self.dim)
        left = np.einsum("i,ijk->jk", u, c)
        right = np.einsum("j,ijk->ik", u, c)
        if np.linalg.norm(left - eye) > tol * 10 or np.linalg.norm(right - eye) > tol * 10:
            raise AlgebraError("unit laws fail")
        assoc = np.einsum("ijm,mkl->ijkl", c, c) - np.einsum("jkm,iml->ijkl", c, c)
        if np.linalg.norm(assoc) > tol * 10 * self.dim:
            raise AlgebraError("structure constants are not associative")

    @property
    def dim(self) -> int:
        return self.structure_constants.shape[0]

    def multiply(self, a, b) -> np.ndarray:
        return np.einsum("i,j,ijk->k", a, b, self.structure_constants)

    def left_matrix(self, a) -> np.ndarray:
        """Matrix of ``x ↦ a x`` on coefficient vectors."""
        return np.einsum("i,ijk->kj", a, self.structure_constants)

    def right_matrix(self, a) -> np.ndarray:
        """Matrix of ``x ↦ x a``."""
        return np.einsum("j,ijk->ki", a, self.structure_constants)

    @classmethod
    def from_matrices(cls, mats: Sequence[np.ndarray], tol: float = DEFAULT_TOL) -> "AbstractAlgebra":
        """Structure constants of the span of ``mats`` (must be a unital algebra basis)."""
        mats = [np.asarray(m, dtype=complex) for m in mats]
        B = np.stack([m.reshape(-1) for m in mats], axis=1)
        k = len(mats)
        c = np.zeros((k, k, k), dtype=complex)
        for i in range(k):
            for j in range(k):
                coef, res, *_ = np.linalg.lstsq(B, (mats[i] @ mats[j]).reshape(-1), rcond=None)
                if np.linalg.norm(B @ coef - (mats[i] @ mats[j]).reshape(-1)) > 1e-8:
                    raise AlgebraError("span is not closed under multiplication")
                c[i, j] = coef
        d = mats[0].shape[0]
        unit, *_ = np.linalg.lstsq(B, np.eye(d).reshape(-1), rcond=None)
        return cls(c, unit, tol)

    @classmethod
    def matrix_algebra(cls, n: int) -> "AbstractAlgebra":
        """``M_n`` in the matrix-unit basis ``e_{ij}`` (index ``i*n + j``)."""
        k = n * n
        c = np.zeros((k, k, k))
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    c[i * n + j, j * n + l, i * n + l] = 1
        unit = np.eye(n).reshape(-1)
        return cls(c, unit)

    @classmethod
    def diagonal(cls, n: int) -> "AbstractAlgebra":
        c = np.zeros((n, n, n))
        for i in range(n):
            c[i, i, i] = 1
        return cls(c, np.ones(n))

    @classmethod
    def dual_numbers(cls) -> "AbstractAlgebra":
        """``ℂ[x]/(x²)`` with basis ``(1, x)``."""
        c = np.zeros((2, 2, 2))
        c[0, 0, 0] = c[0, 1, 1] = c[1, 0, 1] = 1
        return cls(c, [1, 0])

    @classmethod
    def upper_triangular(cls) -> "AbstractAlgebra":
        """2x2 upper-triangular matrices with basis ``(e11, e12, e22)``."""
        return cls.from_matrices([np.array([[1, 0], [0, 0]]), np.array([[0, 1], [0, 0]]), np.array([[0, 0], [0, 1]])])
