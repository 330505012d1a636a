"""The μ-index of a net against the size of its sector category.

For the tensor-product net every arc algebra is a full matrix algebra, the
vacuum is the only irreducible sector and ``μ = 1``.  The Z/2 orbifold has
non-factor arc algebras.  Its four-quarter multiplicity matrix has operator
norm 2, so ``μ = 4``, and four dimension-one sectors account for it.
"""
import numpy as np

from fusionnet.algebra import full_algebra
from fusionnet.duality import mu_index, rep_category
from fusionnet.latticenet import build_orbifold_net, build_tensor_net

tensor = build_tensor_net(8, full_algebra(2))
orbifold = build_orbifold_net(tensor, [np.diag([1.0, -1.0])])

for net in (tensor, orbifold):
    mu = mu_index(net)
    rep = rep_category(net)
    dims = [s["dimension"] for s in rep["sectors"]]
    print(f"{net.name}: quarters are factors: {mu['quarters_are_factors']}")
    print(f"  multiplicity matrix {mu['multiplicity_matrix']}")
    print(f"  mu = {mu['mu_index']:g}, sector dimensions {dims}, sum of squares {rep['sum_of_squares']:g}")
