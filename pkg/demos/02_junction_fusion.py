"""Composing junction defects multiplies their junction algebras.

On the trivial net the junction defect with junction algebra ``M_k`` is the
simplest nontrivial defect.  Composing ``M_2`` with ``M_3`` should give a
defect isomorphic to the ``M_6`` junction, and the composite must not depend
on how long the middle arc is.  We also check that L² of the composite is the
Connes fusion of the two L² spaces.
"""
from fusionnet.algebra import full_algebra
from fusionnet.latticenet import (
    build_defect,
    build_tensor_net,
    compose_defects,
    defect_algebra_certificate,
    verify_l2_fusion,
)

net = build_tensor_net(8, full_algebra(1), name="trivial")
J = {k: build_defect("junction", {"left": net, "right": net, "Q": full_algebra(k), "name": f"J{k}"}) for k in (2, 3, 6)}

C = compose_defects(J[2], J[3])
C_long = compose_defects(J[2], J[3], C.m + 1)
indep = defect_algebra_certificate(C, C_long)
print(f"middle arc {C.m} vs {C.m + 1}: residual {indep['residual']:.1e}, passes {indep['passes']}")

merges = {"Q": [(0, "Q"), (1, "Q")]}
same = defect_algebra_certificate(C, J[6], merges=merges)
print(f"J2 * J3 vs J6: residual {same['residual']:.1e}, passes {same['passes']}")

wrong = defect_algebra_certificate(compose_defects(J[2], J[2]), J[6], merges=merges)
print(f"J2 * J2 vs J6: passes {wrong['passes']} (dimensions 4 and 6 differ)")

cert = verify_l2_fusion(J[2], J[3])
print(f"L2 fusion: space dimension {cert['space_dim']}, residual {cert['residual']:.1e}, passes {cert['passes']}")
