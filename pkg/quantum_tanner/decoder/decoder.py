"""
The mismatch decoder for Z-type errors on a quantum Tanner code.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from ..gf2.bit_vector import BitVector
from ..qtanner.code import syndrome_z
from .config import DecoderConfig
from .state import compute_mismatch
from .steps import first_parallel_step, lookahead_step, second_parallel_step, sequential_pass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DecodeOutcome:
    """
    Attributes:
        ehat (BitVector): Error estimate; its syndrome equals the input when converged.
        converged (bool): ``zhat`` reached zero.
        rounds (dict): Fired sequential updates, parallel procedures and lookahead moves.
        initial_mismatch_weight (int): ``|Z|``.
        final_mismatch_weight (int): ``|zhat|`` on exit.
        iterations (int): Decoder iterations run.
        step_log (tuple): Applied updates, empty unless recorded.
        epsilon (float): Robustness exponent used.
        gamma (float): Puncturing exponent used.
    """

    ehat: BitVector
    converged: bool
    rounds: dict
    initial_mismatch_weight: int
    final_mismatch_weight: int
    iterations: int
    step_log: tuple = field(default=(), repr=False)
    epsilon: float = 0.0
    gamma: float = 0.0

    def to_dict(self, include_steps=False):
        out = {
            'converged': self.converged,
            'ehat': [int(i) for i in self.ehat.support()],
            'rounds': dict(self.rounds),
            'initial_mismatch_weight': self.initial_mismatch_weight,
            'final_mismatch_weight': self.final_mismatch_weight,
            'iterations': self.iterations,
            'epsilon': self.epsilon,
            'gamma': self.gamma,
        }
        if include_steps:
            out['steps'] = [record.to_dict() for record in self.step_log]
        return out


def reconstruct(q, state):
    """
    Assembles the error estimate from the ``X0`` estimates and the booked parts.

    ``ehat = sum_{v in X0} eps_v + rhat0 + chat1``. Restricted to a check view,
    the booked parts are whole rows of ``C_B`` or whole columns of ``C_A``, so
    they are invisible to the local checks and every ``X0`` slice of the
    syndrome is reproduced; once ``zhat = 0`` the same holds on ``X1``.
    """

    ehat = state.rhat0 ^ state.chat1
    views = q.complex.views
    x0 = q.check_classes[0]
    for v in range(q.order):
        ehat.xor_mask(views[x0, v], int(state.eps[0, v]))
    return ehat


def replay(step_log, initial):
    """
    Recomputes ``zhat`` by re-applying every logged update to ``initial``.
    """

    zhat = initial.copy()
    for record in step_log:
        for square in record.squares:
            zhat.flip(square)
    return zhat


def decode(q, s, cfg: Optional[DecoderConfig] = None):
    """
    Decodes a syndrome of Z-type errors.

    Sequential passes run while they make progress; when they stall, both
    parallel steps run once. When neither changes ``zhat`` the lookahead
    (if enabled) tries a two-move escape, otherwise the decoder gives up.

    Args:
        q (QuantumTannerCode): The code.
        s (BitVector): Syndrome ``hx e``.
        cfg (DecoderConfig, optional): Tuning parameters.

    Returns:
        DecodeOutcome: The estimate; non-convergence is reported, not raised.

    Examples:
        >>> outcome = decode(q, syndrome_z(q, e))  # doctest: +SKIP
        >>> stabilizer_equivalent(q, e, outcome.ehat)  # doctest: +SKIP
        True
    """

    cfg = DecoderConfig() if cfg is None else cfg
    state = compute_mismatch(q, s, record_steps=cfg.record_steps, check_invariants=cfg.check_invariants)
    initial = state.weight
    cap = cfg.round_cap(initial)
    iterations = 0
    while state.weight and iterations < cap:
        iterations += 1
        state.round = iterations
        sequential_pass(state, q, cfg)
        if not state.weight:
            break
        snapshot = state.zhat.copy()
        first_parallel_step(state, q, cfg)
        second_parallel_step(state, q, cfg)
        state.rounds['parallel'] += 1
        if state.zhat != snapshot:
            continue
        if cfg.lookahead and lookahead_step(state, q, cfg):
            continue
        logger.debug('decoder stalled with |zhat| = %d after %d iterations', state.weight, iterations)
        break
    converged = state.weight == 0
    if not converged:
        logger.debug('no convergence: |Z| = %d, |zhat| = %d', initial, state.weight)
    return DecodeOutcome(
        ehat=reconstruct(q, state),
        converged=converged,
        rounds=dict(state.rounds),
        initial_mismatch_weight=initial,
        final_mismatch_weight=state.weight,
        iterations=iterations,
        step_log=tuple(state.step_log),
        epsilon=cfg.epsilon,
        gamma=cfg.effective_gamma,
    )


def decode_error(q, e, cfg=None):
    """Decodes the syndrome of a known error."""

    return decode(q, syndrome_z(q, e), cfg)
