"""Recover a C*-algebra hidden behind a random change of basis.

We build ``M_2 ⊕ (M_1 ⊗ 1_3)`` inside ``M_5``, rotate it by a Haar unitary,
keep only two random elements and ask the library for the algebra they
generate.  The block structure comes back, and so does the commutant.
"""
import numpy as np
import scipy.stats as sst

from fusionnet.algebra import algebra_distance, commutant, from_blocks, generate_closure

rng = np.random.default_rng(2024)
blocks = [(2, 1), (1, 3)]
U = sst.unitary_group.rvs(5, random_state=rng)
hidden = from_blocks(blocks, U)
print("hidden blocks (n_i, m_i):", hidden.blocks)

gens = [hidden.random_element(rng) for _ in range(2)]
print("entries of a generator are dense:", np.count_nonzero(np.abs(gens[0]) > 1e-12), "of 25 nonzero")

A = generate_closure(gens, 5, seed=0)
print("recovered blocks:", A.blocks, "dimension", A.dim)
print("distance to the hidden algebra:", f"{algebra_distance(A, hidden):.1e}")

Ac = commutant(A)
print("commutant blocks (multiplicities and sizes swap):", Ac.blocks)
print("bicommutant distance:", f"{algebra_distance(commutant(Ac), A):.1e}")
