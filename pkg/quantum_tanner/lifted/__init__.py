from .group_algebra import GroupAlgebraMatrix
from .lifted_product import (
    LiftedProductCode,
    LpDecodeOutcome,
    LpError,
    LpSyndrome,
    ab_to_squares,
    build_lp,
    lp_decode,
    lp_decode_error,
    lp_stabilizer_equivalent,
    lp_syndrome,
    project_syndrome,
    pseudo_right_inverse,
    qtanner_from_lp,
    simplify_error,
    squares_to_ab,
)
