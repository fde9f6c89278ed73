from .linear_code import (
    EXHAUSTIVE_DIMENSION_CAP,
    LinearCode,
    encode,
    full_code,
    min_distance,
    parity_check_code,
    puncture,
    random_code,
    repetition_code,
    tensor_code,
    zero_code,
)
from .dual_tensor import COSET_TABLE_CAP, DualTensorCode, column_norm, coset_leader_decode, dual_tensor_code, row_norm
from .robustness import (
    ROBUSTNESS_ENUMERATION_CAP,
    Decomposition,
    RobustnessReport,
    check_puncture_resistance,
    check_robustness,
    decompose_r_plus_c,
    find_cover,
)
from .sampling import sample_component_pair
