import itertools
import math

import numpy as np
import pytest

from quantum_tanner.codes.linear_code import parity_check_code, repetition_code
from quantum_tanner.complex.group import build_group
from quantum_tanner.complex.left_right import CLASS_NAMES, V00, V11, build_complex
from quantum_tanner.decoder.config import DecoderConfig
from quantum_tanner.decoder.decoder import decode, decode_error, replay
from quantum_tanner.decoder.diagnostics import diagnostics, recompute_norm
from quantum_tanner.decoder.state import (
    PARALLEL_FIRST,
    PARALLEL_SECOND,
    PHASES,
    MismatchState,
    StepRecord,
    compute_mismatch,
)
from quantum_tanner.decoder.steps import (
    first_parallel_step,
    greedy_fix,
    lookahead_step,
    second_parallel_step,
    sequential_pass,
)
from quantum_tanner.gf2.bit_vector import BitVector
from quantum_tanner.qtanner.code import build_qtanner, stabilizer_equivalent, syndrome_z
from quantum_tanner.qtanner.distance import correctable_weight


@pytest.mark.parametrize('settings', [
    {'epsilon': 0},
    {'epsilon': 0.5},
    {'gamma': 0},
    {'gamma': 1.5},
    {'max_rounds': -1},
])
def test_decoder_config_rejects(settings):
    with pytest.raises(ValueError):
        DecoderConfig(**settings)


def test_decoder_config_thresholds():
    cfg = DecoderConfig()
    assert cfg.effective_gamma == pytest.approx(0.75)
    assert cfg.robustness_threshold(3) == pytest.approx(3 ** 1.25)
    assert cfg.robustness_threshold(1) == 1.0
    assert cfg.subset_cap(3) == 1
    assert cfg.subset_cap(16) == 4
    assert cfg.round_cap(5) == 60
    assert DecoderConfig(max_rounds=3).round_cap(5) == 3


def test_decoder_config_dict_roundtrip():
    cfg = DecoderConfig(epsilon=0.2, lookahead=False)
    data = cfg.to_dict()
    assert data['gamma'] == pytest.approx(0.8)
    data.pop('gamma')
    assert DecoderConfig.from_dict(data) == cfg
    with pytest.raises(ValueError):
        DecoderConfig.from_dict({'alpha': 1})


def _mismatch_instances():
    out = []
    for spec, gens in [('Z6', (1, 3, 5)), ('D4', (1, 3, 4)), ('Z8', (1, 4, 7))]:
        gens_b = (4, 5, 7) if spec == 'D4' else gens
        x = build_complex(build_group(spec), gens, gens_b)
        out.append(build_qtanner(x, repetition_code(3), parity_check_code(3)))
    return out


def _check_mismatch_bound(q, rng, trials):
    for _ in range(trials):
        e = BitVector.random(q.n, rng, weight=int(rng.integers(1, q.n // 3)))
        state = compute_mismatch(q, syndrome_z(q, e), record_steps=False)
        assert state.weight <= 4 * e.weight()


def test_decoder_mismatch_bound(reference_code, rng):
    _check_mismatch_bound(reference_code, rng, 300)


@pytest.mark.slow
def test_decoder_mismatch_bound_audit(rng):
    instances = _mismatch_instances()
    per_instance = math.ceil(10_000 / len(instances))
    for q in instances:
        _check_mismatch_bound(q, rng, per_instance)


def test_decoder_mismatch_rejects_wrong_length(reference_code):
    with pytest.raises(ValueError):
        compute_mismatch(reference_code, BitVector.zeros(5))


def test_decoder_corrects_every_low_weight_error(reference_code):
    q = reference_code
    t = correctable_weight(q)
    assert t == 1
    for weight in range(1, t + 1):
        for support in itertools.combinations(range(q.n), weight):
            e = BitVector.from_support(q.n, support)
            outcome = decode_error(q, e)
            assert outcome.converged
            assert syndrome_z(q, outcome.ehat) == syndrome_z(q, e)
            assert stabilizer_equivalent(q, e, outcome.ehat)


def test_decoder_stabilizer_errors_decode_to_nothing(reference_code, rng):
    q = reference_code
    hz = q.hz.to_dense()
    for _ in range(1000):
        e = hz.T @ BitVector.random(hz.n_rows, rng)
        outcome = decode_error(q, e)
        assert outcome.converged
        assert outcome.initial_mismatch_weight == 0
        assert outcome.iterations == 0
        assert stabilizer_equivalent(q, e, outcome.ehat)


def test_decoder_zero_syndrome(reference_code):
    outcome = decode(reference_code, BitVector.zeros(reference_code.hx.n_rows))
    assert outcome.converged
    assert not outcome.ehat


def test_decoder_replay_reproduces_mismatch(reference_code, rng):
    q = reference_code
    for _ in range(30):
        e = BitVector.random(q.n, rng, weight=int(rng.integers(1, 6)))
        s = syndrome_z(q, e)
        outcome = decode(q, s)
        initial = compute_mismatch(q, s).zhat
        assert initial.weight() == outcome.initial_mismatch_weight
        assert replay(outcome.step_log, initial).weight() == outcome.final_mismatch_weight
        for record in outcome.step_log:
            assert record.phase in PHASES
            assert StepRecord.from_dict(record.to_dict()) == record


def test_decoder_invariants_hold_throughout(reference_code, rng):
    q = reference_code
    cfg = DecoderConfig(check_invariants=True)
    for _ in range(30):
        e = BitVector.random(q.n, rng, weight=int(rng.integers(1, 8)))
        s = syndrome_z(q, e)
        outcome = decode(q, s, cfg)
        if outcome.converged:
            assert syndrome_z(q, outcome.ehat) == s


def test_decoder_round_cap_zero_gives_up(reference_code, rng):
    q = reference_code
    while True:
        e = BitVector.random(q.n, rng, weight=4)
        if compute_mismatch(q, syndrome_z(q, e)).weight:
            break
    outcome = decode_error(q, e, DecoderConfig(max_rounds=0))
    assert not outcome.converged
    assert outcome.iterations == 0
    assert outcome.final_mismatch_weight == outcome.initial_mismatch_weight


def test_decoder_steps_are_optional(reference_code, rng):
    q = reference_code
    e = BitVector.random(q.n, rng, weight=3)
    outcome = decode_error(q, e, DecoderConfig(record_steps=False))
    assert outcome.step_log == ()
    data = outcome.to_dict(include_steps=True)
    assert data['steps'] == []
    assert set(data['rounds']) == {'sequential', 'parallel', 'lookahead'}


def test_decoder_outcome_is_deterministic(reference_code):
    q = reference_code
    rng = np.random.default_rng(5)
    e = BitVector.random(q.n, rng, weight=5)
    first = decode_error(q, e).to_dict(include_steps=True)
    second = decode_error(q, e).to_dict(include_steps=True)
    assert first == second


def test_decoder_diagnostics_track_norm(reference_code, rng):
    q = reference_code
    for _ in range(20):
        e = BitVector.random(q.n, rng, weight=int(rng.integers(1, 6)))
        state = compute_mismatch(q, syndrome_z(q, e))
        report = diagnostics(state, q)
        assert report.mismatch_weight == state.zhat.weight()
        assert report.norm == 0
        sequential_pass(state, q, DecoderConfig())
        assert recompute_norm(state, q) == state.norm
        report = diagnostics(state, q)
        assert report.mismatch_weight == state.weight
        assert set(report.to_dict()['active']) == {'00', '01', '10', '11'}
        state.verify()


def test_decoder_greedy_fix_removes_a_row_codeword(reference_code):
    dt = reference_code.local
    word = dt.row_codewords(0)[0]
    assert greedy_fix(dt, word) == (0, word)
    assert greedy_fix(dt, 0) == (0, 0)


def test_decoder_moves_do_nothing_without_mismatch(reference_code):
    q = reference_code
    state = compute_mismatch(q, BitVector.zeros(q.hx.n_rows))
    cfg = DecoderConfig()
    assert not sequential_pass(state, q, cfg)
    assert not first_parallel_step(state, q, cfg)
    assert not second_parallel_step(state, q, cfg)
    assert not lookahead_step(state, q, cfg)
    assert state.step_log == []


def test_decoder_extended_sequential_pass(reference_code, rng):
    q = reference_code
    cfg = DecoderConfig(extend_to_v1=True, check_invariants=True)
    for _ in range(20):
        e = BitVector.random(q.n, rng, weight=int(rng.integers(1, 5)))
        s = syndrome_z(q, e)
        outcome = decode(q, s, cfg)
        if outcome.converged:
            assert syndrome_z(q, outcome.ehat) == s


def _fresh_state(q, support):
    zhat = BitVector.from_support(q.n, support)
    return MismatchState(q, zhat, np.zeros((2, q.order), dtype=np.uint64), check_invariants=True)


def _spread_permutation(q, cls, v):
    """Squares of one view, one per row and column, with distinct corners elsewhere."""

    view = q.complex.views[cls, v]
    n_b = q.local.n_b
    corners = q.complex.corners
    for perm in itertools.permutations(range(n_b)):
        squares = [int(view[a * n_b + b]) for a, b in enumerate(perm)]
        if all(len(set(corners[squares, c].tolist())) == len(squares) for c in range(4) if c != cls):
            return squares
    raise AssertionError('no spread permutation in this view')


def test_decoder_first_parallel_step_breaks_a_sequential_stall(z6_complex):
    # even-weight local code: every single square is a coset leader
    q = build_qtanner(z6_complex, parity_check_code(3), parity_check_code(3))
    check = q.check_classes[0]
    state = _fresh_state(q, _spread_permutation(q, check, 0))
    cfg = DecoderConfig()
    assert not sequential_pass(state, q, cfg)
    assert state.step_log == []
    assert first_parallel_step(state, q, cfg)
    (record,) = state.step_log
    assert record.phase == PARALLEL_FIRST
    assert (record.vertex_class, record.vertex) == (CLASS_NAMES[check], 0)
    assert (record.weight_before, record.weight_after) == (3, 1)
    assert state.weight == state.zhat.weight() == 1


def _column_squares(q, v, b):
    dt = q.local
    placed = dt.column_codewords(b)[0]
    view = q.complex.views[V00, v]
    return [int(view[k]) for k in range(dt.n_a * dt.n_b) if (placed >> k) & 1]


def test_decoder_second_parallel_step_clears_disjoint_columns(reference_code):
    q = reference_code
    dt = q.local
    corners = q.complex.corners
    left = _column_squares(q, 0, 0)
    right = next(
        _column_squares(q, v, b)
        for v in range(1, q.order)
        for b in range(dt.n_b)
        if not set(corners[_column_squares(q, v, b), V11].tolist()) & set(corners[left, V11].tolist())
    )
    state = _fresh_state(q, left + right)
    assert state.weight == 2 * dt.n_a
    assert second_parallel_step(state, q, DecoderConfig())
    assert not state.zhat
    assert [r.phase for r in state.step_log] == [PARALLEL_SECOND] * 2
    assert [r.vertex_class for r in state.step_log] == [CLASS_NAMES[V00]] * 2
    assert state.step_log[0].weight_before == 2 * dt.n_a
    assert state.step_log[-1].weight_after == 0
