"""Conformal nets discretized on a circle of edges, their defects and sectors."""
from .circle import Arc, GeometryError, LatticeCircle
from .defects import (
    BicoloredInterval,
    CompositeDefect,
    Defect,
    DefectError,
    IdentityDefect,
    JunctionDefect,
    build_defect,
    check_defect_axioms,
    compose_defects,
    defect_algebra_certificate,
    fiber_product,
    same_net,
)
from .legalgebra import DENSE_LIMIT, LegAlgebra, apply_on_legs, partial_trace
from .nets import (
    LatticeNet,
    build_orbifold_net,
    build_tensor_net,
    check_net_axioms,
    corrupt_inclusion,
    group_closure,
    opposite_net,
    product_net,
    solve_extension,
)
from .sectors import (
    DenseSector,
    LegSector,
    Sector,
    SectorError,
    check_sector,
    corrupt_sector,
    direct_sum_sectors,
    fuse_sectors,
    identity_sector,
    same_defect,
    sector_certificate,
    verify_interchange,
    verify_l2_fusion,
)
