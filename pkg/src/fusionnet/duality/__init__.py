from .adjunction import (
    STATDIM_CONVENTION,
    ConjugateSector,
    adjunction_sectors,
    bridge_sector,
    conjugate_certificates,
    conjugate_sector,
    invertibility_certificate,
    sector_dimension,
    triangle_certificates,
    zigzag_check,
)
from .finiteness import center_dimensions, finiteness_report, split_extension
from .folds import (
    AdjointDefect,
    FoldDefect,
    TensorDefect,
    adjoint_defect,
    dual_net,
    tensor_defects,
    trivial_net,
    unit_counit_defects,
)
from .index import (
    RepCategoryBound,
    SubSector,
    TwistedSector,
    decompose_sector,
    equivalent_sectors,
    mu_index,
    parent_vacuum,
    rep_category,
    sector_commutant,
    vacuum_sector,
)
from .report import TRACE_WEIGHTS, dualizability_report
from .separability import SeparabilityIdempotent, separability_check, separability_system
