"""Repairing the second 2-algebra axiom by a scalar.

Start from a valid noncommutative 2-algebra on ``M_2 ⊕ ℂ`` and spoil ``v``
by a scalar.  The pentagon factor ``λ`` is then that scalar's inverse times
the unit, and rescaling restores the axiom.  When ``λ`` is central but not
scalar no rescaling exists; the error lists its eigenvalues.
"""
import numpy as np

from fusionnet.twoalgebra import (
    RescaleError,
    TwoAlgebra,
    from_comultiplication,
    matrix_character_two_algebra,
    pentagon_rescale,
    verify_two_algebra,
)

T = matrix_character_two_algebra(2)
print("valid instance passes:", verify_two_algebra(T)["passes"])

spoiled = TwoAlgebra(T.algebra, T.mu, (2 - 1j) * T.v)
print(f"spoiled v: axiom 2 residual {verify_two_algebra(spoiled)['axiom2']:.3f}")

v = pentagon_rescale(T.algebra, T.mu, spoiled.v)
fixed = TwoAlgebra(T.algebra, T.mu, v)
print(f"rescaled v: axiom 2 residual {verify_two_algebra(fixed)['axiom2']:.1e}")

D = from_comultiplication(2, lambda x: (x, x))
try:
    pentagon_rescale(D.algebra, D.mu, np.array([2.0, 3.0]))
except RescaleError as exc:
    print("refused:", exc, exc.decomposition)
