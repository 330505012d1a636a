"""Algebras with a second, vertically written product.

A :class:`TwoAlgebra` is a unital algebra ``A`` with a unital homomorphism
``mu: A ⊗ A → A`` (written ``col(a, b)``) and an invertible ``v`` such that

1. ``v col(col(a, b), c) v⁻¹ = col(a, col(b, c))``
2. ``v v = col(1, v) v col(v, 1)``

Elements are coefficient vectors over the basis of an
:class:`~fusionnet.algebra.AbstractAlgebra`; ``mu`` is a ``k × k²`` matrix
acting on ``kron(a, b)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import DEFAULT_TOL, AbstractAlgebra, AlgebraError, RepresentedAlgebra

__all__ = [
    "TwoAlgebra",
    "RescaleError",
    "vertical_product",
    "verify_two_algebra",
    "bracket",
    "eh_commutation_check",
    "pentagon_rescale",
    "pentagon_factor",
    "from_comultiplication",
    "matrix_character_two_algebra",
]


class RescaleError(AlgebraError):
    """Pentagon rescaling impossible; ``decomposition`` holds the central data of λ."""

    def __init__(self, message, decomposition=None):
        super().__init__(message)
        self.decomposition = decomposition or {}


def _inverse(alg: AbstractAlgebra, x, tol=DEFAULT_TOL):
    L = alg.left_matrix(np.asarray(x, dtype=complex))
    if np.linalg.matrix_rank(L, tol=tol * max(1.0, np.linalg.norm(L))) < alg.dim:
        return None
    y = np.linalg.solve(L, alg.unit)
    if np.linalg.norm(alg.multiply(y, x) - alg.unit) > 1e-8 * max(1.0, np.linalg.norm(y)):
        return None
    return y


@dataclass
class TwoAlgebra:
    """Horizontal algebra, vertical homomorphism ``mu`` and distinguished ``v``."""

    algebra: AbstractAlgebra
    mu: np.ndarray
    v: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if isinstance(self.algebra, RepresentedAlgebra):
            self.algebra = AbstractAlgebra.from_matrices(self.algebra.basis)
        k = self.algebra.dim
        self.mu = np.asarray(self.mu, dtype=complex)
        self.v = np.asarray(self.v, dtype=complex)
        if self.mu.shape != (k, k * k):
            raise AlgebraError(f"mu must be a {k} x {k * k} matrix")
        if self.v.shape != (k,):
            raise AlgebraError("v must be a coefficient vector")

    @property
    def unit(self):
        return self.algebra.unit

    def mul(self, *xs):
        out = xs[0]
        for x in xs[1:]:
            out = self.algebra.multiply(out, x)
        return out

    def col(self, a, b):
        return self.mu @ np.kron(a, b)

    def inverse(self, x):
        return _inverse(self.algebra, x, self.tol)


def vertical_product(T: TwoAlgebra, a, b) -> np.ndarray:
    return T.col(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def verify_two_algebra(T: TwoAlgebra, sample_elements=None) -> dict:
    """Residuals of the homomorphism property and both axioms.

    Multilinearity lets basis tuples stand in for all elements; extra
    ``sample_elements`` are checked on top.  Failures are report entries.
    """
    k = T.algebra.dim
    eye = np.eye(k)
    elems = [eye[i] for i in range(k)]
    if sample_elements is not None:
        elems += [np.asarray(s, dtype=complex) for s in sample_elements]
    one = T.unit
    report = {"dim": k}
    hom = 0.0
    for a, b, c, d in itertools.product(elems, repeat=4):
        lhs = T.col(T.mul(a, b), T.mul(c, d))
        rhs = T.mul(T.col(a, c), T.col(b, d))
        hom = max(hom, float(np.linalg.norm(lhs - rhs)))
    report["mu_homomorphism"] = hom
    report["mu_unital"] = float(np.linalg.norm(T.col(one, one) - one))
    vinv = T.inverse(T.v)
    report["v_invertible"] = vinv is not None
    if vinv is None:
        report["axiom1"] = float("inf")
        report["axiom2"] = float("inf")
    else:
        ax1 = 0.0
        for a, b, c in itertools.product(elems, repeat=3):
            lhs = T.mul(T.v, T.col(T.col(a, b), c), vinv)
            rhs = T.col(a, T.col(b, c))
            ax1 = max(ax1, float(np.linalg.norm(lhs - rhs)))
        report["axiom1"] = ax1
        lhs = T.mul(T.v, T.v)
        rhs = T.mul(T.col(one, T.v), T.v, T.col(T.v, one))
        report["axiom2"] = float(np.linalg.norm(lhs - rhs))
    tol = T.tol * 100
    report["passes"] = bool(
        report["v_invertible"]
        and report["mu_homomorphism"] < tol
        and report["mu_unital"] < tol
        and report["axiom1"] < tol
        and report["axiom2"] < tol
    )
    return report


def bracket(T: TwoAlgebra, a) -> np.ndarray:
    """``[a] = col(col(1, a), 1)``."""
    one = T.unit
    return T.col(T.col(one, np.asarray(a, dtype=complex)), one)


def eh_commutation_check(T: TwoAlgebra, a, b) -> float:
    """Residual of ``(v[a]v⁻¹)[b] = [b](v[a]v⁻¹)``."""
    vinv = T.inverse(T.v)
    if vinv is None:
        raise AlgebraError("v is not invertible")
    w = T.mul(T.v, bracket(T, a), vinv)
    bb = bracket(T, b)
    return float(np.linalg.norm(T.mul(w, bb) - T.mul(bb, w)))


def pentagon_factor(algebra: AbstractAlgebra, mu, v_hat) -> np.ndarray:
    """``λ = col(v̂⁻¹, 1) v̂⁻¹ col(1, v̂⁻¹) v̂ v̂``."""
    T = TwoAlgebra(algebra, mu, v_hat)
    vi = T.inverse(T.v)
    if vi is None:
        raise AlgebraError("v_hat is not invertible")
    one = T.unit
    return T.mul(T.col(vi, one), vi, T.col(one, vi), T.v, T.v)


def _central_decomposition(algebra: AbstractAlgebra, x, tol):
    """Split the (central) element ``x`` along the eigenvalues of its multiplication operator."""
    L = algebra.left_matrix(x)
    vals = np.linalg.eigvals(L)
    distinct = []
    for val in vals:
        if all(abs(val - d) > 1e-6 for d in distinct):
            distinct.append(complex(val))
    return [[float(np.real(d)), float(np.imag(d))] for d in distinct]


def pentagon_rescale(algebra, mu, v_hat, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Rescale ``v_hat`` by the scalar ``λ`` so that axiom 2 holds.

    Raises :class:`RescaleError` when ``λ`` is not central, or is central but
    not a multiple of the unit.
    """
    if isinstance(algebra, RepresentedAlgebra):
        algebra = AbstractAlgebra.from_matrices(algebra.basis)
    lam = pentagon_factor(algebra, mu, v_hat)
    k = algebra.dim
    eye = np.eye(k)
    comm = max(
        float(np.linalg.norm(algebra.multiply(lam, eye[i]) - algebra.multiply(eye[i], lam))) for i in range(k)
    )
    if comm > tol * 100 * max(1.0, np.linalg.norm(lam)):
        raise RescaleError(f"lambda is not central (commutator {comm:.2e})")
    # scalar test: λ = c·1 with c read off against the unit
    u = algebra.unit
    c = np.vdot(u, lam) / np.vdot(u, u)
    if np.linalg.norm(lam - c * u) > tol * 100 * max(1.0, abs(c)):
        raise RescaleError(
            "lambda is central but not scalar",
            {"eigenvalues": _central_decomposition(algebra, lam, tol)},
        )
    return c * np.asarray(v_hat, dtype=complex)


# -- fixture builders --------------------------------------------------------

def from_comultiplication(n_points: int, delta, v=None, tol: float = DEFAULT_TOL, check_coassociative: bool = True) -> TwoAlgebra:
    """Commutative 2-algebra of functions on ``{0..n-1}`` with ``col(f, g)(x) = f(δ₁x) g(δ₂x)``.

    ``delta`` is a sequence of pairs or a callable.  With ``v = 1`` axiom 1 is
    coassociativity of ``δ``, checked here unless disabled.
    """
    d = [tuple(delta(x)) if callable(delta) else tuple(delta[x]) for x in range(n_points)]
    if check_coassociative:
        for x in range(n_points):
            l = (d[d[x][0]][0], d[d[x][0]][1], d[x][1])
            r = (d[x][0], d[d[x][1]][0], d[d[x][1]][1])
            if l != r:
                raise AlgebraError(f"delta is not coassociative at point {x}: {l} vs {r}")
    mu = np.zeros((n_points, n_points * n_points))
    for x, (i, j) in enumerate(d):
        mu[x, i * n_points + j] = 1.0
    alg = AbstractAlgebra.diagonal(n_points)
    vv = np.ones(n_points) if v is None else np.asarray(v, dtype=complex)
    return TwoAlgebra(alg, mu, vv, tol)


def matrix_character_two_algebra(n: int, v=None, tol: float = DEFAULT_TOL) -> TwoAlgebra:
    """Noncommutative instance on ``M_n ⊕ ℂ``: ``col(a, b) = (a_M b_ℂ, a_ℂ b_ℂ)``.

    Basis: matrix units of ``M_n`` (index ``i*n + j``) followed by the unit
    of the ``ℂ`` summand.
    """
    k = n * n + 1
    c = np.zeros((k, k, k))
    for i in range(n):
        for j in range(n):
            for l in range(n):
                c[i * n + j, j * n + l, i * n + l] = 1
    c[k - 1, k - 1, k - 1] = 1
    unit = np.concatenate([np.eye(n).reshape(-1), [1.0]])
    alg = AbstractAlgebra(c, unit)
    mu = np.zeros((k, k * k))
    for x in range(n * n):
        mu[x, x * k + (k - 1)] = 1.0  # a_M · b_ℂ
    mu[k - 1, (k - 1) * k + (k - 1)] = 1.0
    vv = unit.astype(complex) if v is None else np.asarray(v, dtype=complex)
    return TwoAlgebra(alg, mu, vv, tol)
