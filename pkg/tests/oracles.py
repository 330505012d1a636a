"""Brute-force reference computations, independent of the library internals.

Everything here works on dense matrices with plain numpy/scipy: null spaces
of stacked commutator systems, closures by repeated products, centers found
inside an explicit basis.  The routines are slow and only meant for the small
sizes used in the tests; the tests freeze their outputs.
"""
from __future__ import annotations

import itertools

import numpy as np
import scipy.linalg as sla

TOL = 1e-9


# -- linear algebra on spans ----------------------------------------------------------

def orth_span(mats, tol=TOL) -> np.ndarray:
    """Orthonormal columns spanning ``{vec(x)}``; empty input gives zero columns."""
    mats = list(mats)
    if not mats:
        return np.zeros((0, 0), dtype=complex)
    M = np.stack([np.asarray(x, dtype=complex).reshape(-1) for x in mats], axis=1)
    if M.shape[0] <= 4 * M.shape[1]:
        u, s, _ = np.linalg.svd(M, full_matrices=False)
        if s.size == 0 or s[0] == 0:
            return np.zeros((M.shape[0], 0), dtype=complex)
        return u[:, s > tol * max(1.0, s[0])]
    # tall and thin: the Gram matrix is much cheaper and the spans used here are well separated
    w, V = np.linalg.eigh(M.conj().T @ M)
    keep = w > 1e-10 * max(1.0, w[-1])
    return (M @ V[:, keep]) / np.sqrt(w[keep])


def as_matrices(Q: np.ndarray, d: int) -> list[np.ndarray]:
    """Columns of ``Q`` as contiguous ``d x d`` matrices (strided views make matmul very slow)."""
    return list(np.ascontiguousarray(Q.T).reshape(-1, d, d))


def span_distance(P: np.ndarray, Q: np.ndarray) -> float:
    """Spectral distance between the projections onto two column spans."""
    if P.shape[1] != Q.shape[1]:
        return float("inf")
    return float(np.linalg.norm(P @ P.conj().T - Q @ Q.conj().T, 2))


def commutant_basis(gens, d: int, tol=TOL) -> list[np.ndarray]:
    """Orthonormal basis of ``{x : [g, x] = 0}`` from the null space of the stacked system.

    Row-major ``vec``: ``vec(g x - x g) = (g ⊗ 1 - 1 ⊗ gᵀ) vec x``.
    """
    eye = np.eye(d)
    if not gens:
        return as_matrices(np.eye(d * d), d)
    # accumulate the Gram matrix instead of stacking: the kernel is the same
    G = np.zeros((d * d, d * d), dtype=complex)
    for g in gens:
        K = np.kron(g, eye) - np.kron(eye, g.T)
        G += K.conj().T @ K
    w, V = np.linalg.eigh(G)
    return as_matrices(V[:, w < max(tol, 1e-10) * max(1.0, w[-1])], d)


def closure_basis(gens, d: int, tol=TOL, max_rounds: int = 64) -> list[np.ndarray]:
    """Unital *-algebra generated by ``gens``: grow the span by products until it stabilizes."""
    span = [np.eye(d, dtype=complex)] + [np.asarray(g, dtype=complex) for g in gens]
    span += [g.conj().T for g in span[1:]]
    Q = orth_span(span, tol)
    for _ in range(max_rounds):
        basis = as_matrices(Q, d)
        prods = [a @ b for a, b in itertools.product(basis, [np.asarray(g) for g in gens] + [g.conj().T for g in gens])]
        Q2 = orth_span(basis + prods, tol)
        if Q2.shape[1] == Q.shape[1]:
            return basis
        Q = Q2
    raise RuntimeError("closure did not stabilize")


def generic_elements(basis, count: int = 3, seed: int = 0) -> list[np.ndarray]:
    """Random combinations of ``basis``; a few of them generate the algebra almost surely."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        c = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
        out.append(sum(ck * b for ck, b in zip(c, basis)))
    return out


def center_projections(basis, tol=1e-8, seed: int = 0) -> list[np.ndarray]:
    """Minimal central projections of the algebra spanned by ``basis``.

    The center is solved for inside the span (commuting with a few generic
    elements, accumulated as a Gram matrix), then a generic hermitian central
    element is diagonalized.
    """
    k = len(basis)
    G = np.zeros((k, k), dtype=complex)
    for r in generic_elements(basis, 2, seed):
        M = np.stack([(b @ r - r @ b).reshape(-1) for b in basis], axis=1)
        G += M.conj().T @ M
    w, V = np.linalg.eigh(G)
    C = V[:, w < tol * max(1.0, w[-1])]
    rng = np.random.default_rng(seed + 1)
    coeff = C @ rng.standard_normal(C.shape[1])
    z = sum(ck * b for ck, b in zip(coeff, basis))
    z = z + z.conj().T
    w, V = np.linalg.eigh(z)
    out = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i] - w[i - 1] > 1e-6 * max(1.0, abs(w).max()):
            out.append(V[:, start:i] @ V[:, start:i].conj().T)
            start = i
    return out


def block_sizes(basis, projections) -> list[tuple[int, int]]:
    """``(n, m)`` per central projection: ``n² = dim(pA)`` and ``n·m = rank p``."""
    out = []
    for P in projections:
        dim = orth_span([P @ b for b in basis]).shape[1]
        n = int(round(np.sqrt(dim)))
        rank = int(round(np.trace(P).real))
        out.append((n, rank // n))
    return out


# -- double commutant ---------------------------------------------------------------------------

def double_commutant_residual(gens, d: int) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    """Distance between the algebra generated by ``gens`` and its brute-force double commutant."""
    A = closure_basis(gens, d)
    gens = [np.asarray(g, dtype=complex) for g in gens]
    Ac = commutant_basis(gens + [g.conj().T for g in gens], d)
    Acc = commutant_basis(generic_elements(Ac, 4), d)
    return span_distance(orth_span(A), orth_span(Acc)), A, Ac


# -- relative tensor product ------------------------------------------------------------------

def relative_tensor_dimension(right_ops, left_ops, dh: int, dk: int) -> int:
    """``dim H ⊠_B K`` as the codimension of the balancing relations ``ξb ⊗ η - ξ ⊗ bη``.

    ``right_ops[k]`` and ``left_ops[k]`` are the operators of the same basis
    element of ``B`` on ``H`` (from the right) and on ``K`` (from the left).
    """
    rel = np.hstack([np.kron(R, np.eye(dk)) - np.kron(np.eye(dh), L) for R, L in zip(right_ops, left_ops)])
    s = np.linalg.svd(rel, compute_uv=False)
    rank = int(np.sum(s > 1e-9 * max(1.0, s[0])))
    return dh * dk - rank


# -- lattice vacuum -------------------------------------------------------------------------

def fixed_point_basis(d: int, k: int, group) -> list[np.ndarray]:
    """Basis of ``{x ∈ M_d^{⊗k} : g^{⊗k} x g^{⊗k}* = x}`` by averaging matrix units."""
    D = d**k
    if not group:
        return [np.eye(D)[:, [i]] @ np.eye(D)[[j], :] for i in range(D) for j in range(D)]
    Us = []
    for g in group:
        U = np.array([[1.0]])
        for _ in range(k):
            U = np.kron(U, g)
        Us.append(U)
    avg = []
    for i in range(D):
        for j in range(D):
            E = np.zeros((D, D), dtype=complex)
            E[i, j] = 1
            avg.append(sum(U @ E @ U.conj().T for U in Us) / len(Us))
    Q = orth_span(avg)
    return as_matrices(Q, D)


def group_elements(gens, d: int) -> list[np.ndarray]:
    """Finite group generated by unitary matrices (brute-force closure)."""
    els = [np.eye(d, dtype=complex)]
    frontier = list(els)
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = a @ np.asarray(g, dtype=complex)
                if all(np.linalg.norm(b - e) > 1e-9 for e in els):
                    els.append(b)
                    new.append(b)
        frontier = new
    return els


def place(x: np.ndarray, legs: list[int], d: int, n_legs: int) -> np.ndarray:
    """Operator ``x`` (on ``len(legs)`` legs, in that order) acting on ``legs`` of ``(ℂ^d)^{⊗n_legs}``."""
    k = len(legs)
    rest = [l for l in range(n_legs) if l not in legs]
    order = list(legs) + rest
    full = np.kron(x, np.eye(d ** len(rest)))
    t = full.reshape([d] * (2 * n_legs))
    inv = np.argsort(order)
    t = t.transpose(list(inv) + [n_legs + i for i in inv])
    return t.reshape(d**n_legs, d**n_legs)


def quarter_edges(n: int) -> list[list[int]]:
    """Edges of the quarters centred on +1, +i, -1, -i (edge ``e`` spans angles ``[2πe/n, 2π(e+1)/n]``)."""
    q = n // 4
    h = q // 2
    return [[(c * q - h + t) % n for t in range(q)] for c in range(4)]


def vacuum_quarter_actions(d: int, n: int, group_gens=()):
    """Dense model of ``L²(N(S¹₊))`` with the four quarter algebras acting on it.

    ``N(I)`` is the fixed-point algebra of ``M_d^{⊗|I|}`` under the diagonal
    group action.  The space is ``vec(N(S¹₊)) ⊂ ℂ^{D} ⊗ ℂ^{D}`` with
    ``D = d^{n/2}``: upper edges act by left multiplication on row legs,
    and a lower edge ``e`` acts on the column leg of its mirror edge
    ``n-1-e`` (right multiplication composed with the transpose that
    realizes the reflection).

    Returns the isometry ``Q`` onto the space and, per quarter, the list of
    compressed basis operators.
    """
    half = n // 2
    group = group_elements(group_gens, d) if group_gens else []
    U = fixed_point_basis(d, half, group)
    Q = orth_span(U)
    legs = 2 * half
    quarters = []
    for edges in quarter_edges(n):
        algebra = fixed_point_basis(d, len(edges), group)
        pos = [e if e < half else half + (n - 1 - e) for e in edges]
        ops = []
        for x in algebra:
            X = place(x, pos, d, legs)
            # the space must be invariant
            leak = np.linalg.norm(X @ Q - Q @ (Q.conj().T @ X @ Q))
            if leak > 1e-8:
                raise AssertionError(f"quarter {edges} does not preserve the vacuum space (leak {leak:.2e})")
            ops.append(Q.conj().T @ X @ Q)
        quarters.append(ops)
    return Q, quarters


def four_quarter_multiplicity(d: int, n: int, group_gens=()):
    """Multiplicity matrix of ``L²`` as a ``(J1 ∨ J3)``–``(J2 ∨ J4)`` bimodule.

    ``c_ij = tr(p_i q_j) / (a_i b_j)`` for the minimal central projections
    ``p_i`` (block size ``a_i``) of the left algebra and ``q_j`` (block size
    ``b_j``) of the right one.  Also returns the locality residual between
    the two joins.
    """
    Q, (J1, J2, J3, J4) = vacuum_quarter_actions(d, n, group_gens)
    dim = Q.shape[1]

    def join(X, Y):
        # X and Y commute, so products of basis elements span the join
        return as_matrices(orth_span([x @ y for x in X for y in Y]), dim)

    L = join(J1, J3)
    R = join(J2, J4)
    locality = max(np.linalg.norm(a @ b - b @ a) for a in J1 + J3 for b in J2 + J4)
    P = center_projections(L)
    Pq = center_projections(R)
    a = block_sizes(L, P)
    b = block_sizes(R, Pq)
    C = np.zeros((len(P), len(Pq)))
    for i, p in enumerate(P):
        for j, q in enumerate(Pq):
            C[i, j] = np.trace(p @ q).real / (a[i][0] * b[j][0])
    return C, {"space_dim": dim, "locality": float(locality), "left_blocks": a, "right_blocks": b}


def mu_oracle(d: int, n: int, group_gens=()) -> float:
    """μ = ‖C‖₂² for the four-quarter multiplicity matrix ``C``."""
    C, _ = four_quarter_multiplicity(d, n, group_gens)
    return float(np.linalg.norm(C, 2) ** 2)


# -- separability closed forms ----------------------------------------------------------------

def matrix_algebra_idempotent(n: int) -> np.ndarray:
    """``(1/n) Σ_ij e_ij ⊗ e_ji`` in the matrix-unit basis (index ``i*n + j``)."""
    k = n * n
    e = np.zeros((k, k), dtype=complex)
    for i in range(n):
        for j in range(n):
            e[i * n + j, j * n + i] = 1.0 / n
    return e


def diagonal_idempotent(n: int) -> np.ndarray:
    """``Σ_i e_i ⊗ e_i``."""
    return np.eye(n, dtype=complex)
