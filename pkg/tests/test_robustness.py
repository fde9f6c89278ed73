import itertools
import math

import numpy as np
import pytest

from quantum_tanner.codes.dual_tensor import DualTensorCode
from quantum_tanner.codes.linear_code import parity_check_code, puncture, random_code, repetition_code
from quantum_tanner.codes.robustness import (
    check_puncture_resistance,
    check_robustness,
    decompose_r_plus_c,
    find_cover,
)
from quantum_tanner.codes.sampling import sample_component_pair
from quantum_tanner.gf2.bit_vector import BitVector
from quantum_tanner.utils.errors import CapExceededError
from quantum_tanner.utils.math_utils import ensure_rng


def _low_weight_codewords(ca, cb, w):
    na, nb = ca.length, cb.length
    length = na * nb
    words = np.arange(1, 1 << length, dtype=np.int64)
    grids = ((words[:, None] >> np.arange(length)) & 1).reshape(-1, na, nb)
    pa = ca.par.to_bits().astype(np.int64)
    pb = cb.par.to_bits().astype(np.int64)
    syndromes = np.einsum('ia,nab,jb->nij', pa, grids, pb) % 2
    keep = ~syndromes.reshape(len(words), pa.shape[0] * pb.shape[0]).any(axis=1) & (grids.sum(axis=(1, 2)) <= w)
    return grids[keep]


def _has_cover(grid, da, db):
    weight = int(grid.sum())
    max_rows = 0 if math.isinf(db) else weight // db
    max_cols = 0 if math.isinf(da) else weight // da
    na, nb = grid.shape
    for i in range(min(max_rows, na) + 1):
        for rows in itertools.combinations(range(na), i):
            for j in range(min(max_cols, nb) + 1):
                for cols in itertools.combinations(range(nb), j):
                    rest = grid.copy()
                    rest[list(rows)] = 0
                    rest[:, list(cols)] = 0
                    if not rest.any():
                        return True
    return False


def _brute_robust(ca, cb, w):
    return all(_has_cover(g, ca.min_dist, cb.min_dist) for g in _low_weight_codewords(ca, cb, w))


def _brute_puncture_resistant(ca, cb, w, p):
    na, nb = ca.length, cb.length
    for removed in range(min(p, na, nb) + 1):
        for drop_a in itertools.combinations(range(na), removed):
            for drop_b in itertools.combinations(range(nb), removed):
                pa = puncture(ca, [i for i in range(na) if i not in drop_a])
                pb = puncture(cb, [j for j in range(nb) if j not in drop_b])
                if not _brute_robust(pa, pb, w):
                    return False
    return True


def _pairs(rng, count):
    out = [(repetition_code(3), parity_check_code(3)), (parity_check_code(4), parity_check_code(4))]
    while len(out) < count:
        na, nb = (int(x) for x in rng.integers(3, 5, size=2))
        out.append((random_code(na, int(rng.integers(1, na)), rng), random_code(nb, int(rng.integers(1, nb)), rng)))
    return out


def test_robustness_matches_brute_force(rng):
    for ca, cb in _pairs(rng, 10):
        for w in range(1, ca.length * cb.length + 1, 2):
            report = check_robustness(ca, cb, w)
            assert report.certified
            assert report.holds == _brute_robust(ca, cb, w)
            if not report.holds:
                assert report.witness.weight() <= w
                assert not _has_cover(report.witness.to_bits().reshape(ca.length, cb.length), ca.min_dist, cb.min_dist)


def test_robustness_puncture_resistance_matches_brute_force(rng):
    for ca, cb in _pairs(rng, 6):
        for w in (2, 4, 6):
            report = check_puncture_resistance(ca, cb, w, 1)
            assert report.p == 1
            assert report.holds == _brute_puncture_resistant(ca, cb, w, 1)
            if not report.holds:
                assert len(report.removed_a) == len(report.removed_b)


def test_robustness_puncture_depth_zero_is_robustness(code_a, code_b):
    assert check_puncture_resistance(code_a, code_b, 4, 0).holds == check_robustness(code_a, code_b, 4).holds


def test_robustness_report_to_dict(code_a, code_b):
    data = check_robustness(code_a, code_b, 3).to_dict()
    assert data['mode'] == 'certified'
    assert data['distances'] == [3, 2]
    assert data['p'] == 0


def test_robustness_cap_requires_sampling(rng):
    big = random_code(8, 4, rng)
    with pytest.raises(CapExceededError):
        check_robustness(big, big, 4)
    report = check_robustness(big, big, 4, sampled=True, rng=rng, n_samples=50)
    assert not report.certified


def test_robustness_find_cover_for_row_codeword(code_a, code_b):
    dt = DualTensorCode(code_a, code_b)
    word = dt.row_codewords(1)[0]
    a_set, b_set = find_cover(dt, word)
    assert a_set == (1,)
    assert b_set == ()


def test_robustness_decompose_r_plus_c(rng):
    for ca, cb in _pairs(rng, 6):
        dt = DualTensorCode(ca, cb)
        for grid in _low_weight_codewords(ca, cb, dt.length)[:40]:
            x = BitVector.from_bits(grid.ravel())
            decomposition = decompose_r_plus_c(dt, x)
            if decomposition is None:
                continue
            assert decomposition.r ^ decomposition.c == x
            r_grid = decomposition.r.to_bits().reshape(dt.n_a, dt.n_b)
            c_grid = decomposition.c.to_bits().reshape(dt.n_a, dt.n_b)
            assert set(np.flatnonzero(r_grid.any(axis=1))) <= set(decomposition.a_set)
            assert set(np.flatnonzero(c_grid.any(axis=0))) <= set(decomposition.b_set)
            assert all(cb.contains(BitVector.from_bits(row)) for row in r_grid)
            assert all(ca.contains(BitVector.from_bits(col)) for col in c_grid.T)


def test_robustness_sample_component_pair(rng):
    ca, cb = sample_component_pair(6, 0.5, 0.3, rng)
    assert ca.dimension == 3
    assert cb.dimension == 3
    for code in (ca, cb, ca.dual(), cb.dual()):
        assert code.min_dist >= math.ceil(0.3 * 6)


def test_robustness_sampling_without_rng_is_reproducible():
    big = random_code(8, 4, np.random.default_rng(3))
    first = check_robustness(big, big, 4, sampled=True, n_samples=50)
    second = check_robustness(big, big, 4, sampled=True, n_samples=50)
    assert first == second
    assert first.to_dict() == second.to_dict()


def test_robustness_default_stream_is_seeded():
    assert np.array_equal(ensure_rng().integers(0, 1 << 30, size=8), ensure_rng().integers(0, 1 << 30, size=8))
    generator = np.random.default_rng(5)
    assert ensure_rng(generator) is generator
