from .code import (
    QuantumTannerCode,
    TheoremConditions,
    build_qtanner,
    error_from_support,
    stabilizer_equivalent,
    syndrome_z,
    theorem_conditions,
)
from .distance import DistanceEstimate, correctable_weight, estimate_distance, exhaustive_logical_search
