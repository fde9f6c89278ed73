from .codes.dual_tensor import DualTensorCode, coset_leader_decode
from .codes.linear_code import LinearCode, parity_check_code, repetition_code
from .codes.robustness import check_puncture_resistance, check_robustness
from .complex.group import FiniteGroup, build_group
from .complex.left_right import build_complex
from .decoder.config import DecoderConfig
from .decoder.decoder import DecodeOutcome, decode, decode_error
from .gf2.bit_matrix import BitMatrix
from .gf2.bit_vector import BitVector
from .lifted.lifted_product import LiftedProductCode, build_lp, lp_decode, lp_syndrome, simplify_error
from .qtanner.code import QuantumTannerCode, build_qtanner, stabilizer_equivalent, syndrome_z
from .harness.config import ExperimentConfig
from .harness.experiment import run_experiment


__all__ = [
    "DualTensorCode",
    "coset_leader_decode",
    "LinearCode",
    "parity_check_code",
    "repetition_code",
    "check_puncture_resistance",
    "check_robustness",
    "FiniteGroup",
    "build_group",
    "build_complex",
    "DecoderConfig",
    "DecodeOutcome",
    "decode",
    "decode_error",
    "BitMatrix",
    "BitVector",
    "LiftedProductCode",
    "build_lp",
    "lp_decode",
    "lp_syndrome",
    "simplify_error",
    "QuantumTannerCode",
    "build_qtanner",
    "stabilizer_equivalent",
    "syndrome_z",
    "ExperimentConfig",
    "run_experiment",
]
