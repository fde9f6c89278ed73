from .config import DEFAULT_EPSILON, DecoderConfig
from .decoder import DecodeOutcome, decode, decode_error, reconstruct, replay
from .diagnostics import DiagnosticsReport, diagnostics, recompute_norm
from .state import PHASES, MismatchState, StepRecord, compute_mismatch
from .steps import first_parallel_step, greedy_fix, lookahead_step, second_parallel_step, sequential_pass
