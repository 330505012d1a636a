"""Finite-dimensional models of conformal nets, defects and their fusion.

Subpackages
-----------
algebra
    Finite-dimensional *-algebras in spatial Wedderburn form.
bimodule
    Bimodules between them, fusion, conjugation and statistical dimension.
twoalgebra
    Algebras with a compatible vertical product and their axiom checks.
latticenet
    Nets on a discretized circle, defects between them and sectors.
duality
    μ-index, representation category, folds, adjunctions and separability.
"""
from .algebra import (
    AbstractAlgebra,
    AlgebraError,
    RepresentedAlgebra,
    StarHomomorphism,
    commutant,
    from_blocks,
    full_algebra,
    generate_closure,
)

__version__ = "0.1.0"
