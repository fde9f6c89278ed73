"""
Robustness certification for dual tensor codes.

A dual tensor code is ``w``-robust when every codeword ``x`` with ``|x| <= w``
is supported on ``(A' x B) U (A x B')`` for some ``|A'| <= |x| / d_B`` and
``|B'| <= |x| / d_A``. It resists puncturing up to ``p`` when every punctured
pair ``(C_A restricted to A', C_B restricted to B')`` with
``|A'| = |B'| = |A| - w'``, ``w' <= p``, is still ``w``-robust.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from ..gf2.bit_matrix import BitMatrix, solve
from ..gf2.bit_vector import BitVector
from ..utils.errors import CapExceededError
from ..utils.math_utils import ensure_rng, enumerate_span, popcount_array, unpack_bits
from .dual_tensor import DualTensorCode
from .linear_code import puncture

logger = logging.getLogger(__name__)

ROBUSTNESS_ENUMERATION_CAP = 22
ROBUSTNESS_SAMPLES = 20000


@dataclass(frozen=True)
class RobustnessReport:
    """
    Verdict of a robustness or puncture-resistance check.

    Attributes:
        w (int): Weight threshold tested.
        p (int): Puncturing depth tested, 0 for plain robustness.
        holds (bool): Whether no violation was found.
        certified (bool): True for exhaustive checks, False for sampled ones.
        checked (int): Number of codewords examined.
        witness (BitVector | None): A codeword with no admissible cover.
        removed_a (tuple): Punctured ``A`` coordinates of the failing pair.
        removed_b (tuple): Punctured ``B`` coordinates of the failing pair.
        distances (tuple): ``(d_A, d_B)`` of the pair the witness belongs to.
    """

    w: int
    p: int
    holds: bool
    certified: bool
    checked: int
    witness: Optional[BitVector] = None
    removed_a: tuple = ()
    removed_b: tuple = ()
    distances: tuple = field(default=())

    def to_dict(self):
        return {
            'w': self.w,
            'p': self.p,
            'holds': self.holds,
            'mode': 'certified' if self.certified else 'sampled',
            'checked': self.checked,
            'witness': None if self.witness is None else [int(i) for i in self.witness.support()],
            'removed_a': list(self.removed_a),
            'removed_b': list(self.removed_b),
            'distances': [None if math.isinf(d) else int(d) for d in self.distances],
        }


class Decomposition(NamedTuple):
    r: BitVector
    c: BitVector
    a_set: tuple
    b_set: tuple


def _bound(weight, distance):
    if math.isinf(distance):
        return 0
    return int(weight // distance)


def _covers(grid, weight, d_a, d_b):
    """
    Yields every ``(A', B')`` cover of the support within the cardinality bounds.

    ``A'`` ranges over subsets of the nonzero rows in increasing size; ``B'``
    is then forced to be the set of columns still uncovered.
    """

    max_rows = _bound(weight, d_b)
    max_cols = _bound(weight, d_a)
    rows = [int(a) for a in np.flatnonzero(grid.any(axis=1))]
    for size in range(min(max_rows, len(rows)) + 1):
        for a_set in itertools.combinations(rows, size):
            rest = grid.copy()
            rest[list(a_set)] = 0
            b_set = tuple(int(b) for b in np.flatnonzero(rest.any(axis=0)))
            if len(b_set) <= max_cols:
                yield a_set, b_set


def find_cover(dt, x):
    """
    Smallest-``|A'|`` admissible cover of a local word, or ``None``.

    Args:
        dt (DualTensorCode): The local code, for its shape and distances.
        x (BitVector | int): The word.

    Returns:
        tuple | None: ``(A', B')`` as sorted tuples.
    """

    grid = dt.grid(x)
    weight = int(grid.sum())
    return next(_covers(grid, weight, dt.code_a.min_dist, dt.code_b.min_dist), None)


def _codewords_upto(dt, w):
    if dt.basis.n_rows > ROBUSTNESS_ENUMERATION_CAP:
        raise CapExceededError(
            f'dual tensor dimension {dt.basis.n_rows} exceeds the enumeration cap {ROBUSTNESS_ENUMERATION_CAP}'
        )
    span = enumerate_span(dt.basis.words)[1:]
    weights = popcount_array(span)
    low = span[weights <= w]
    return unpack_bits(low, dt.length).reshape(-1, dt.n_a, dt.n_b)


def _sample_codewords(dt, w, rng, n_samples):
    # random sums of at most ceil(w / d) rows and columns
    d_a, d_b = dt.code_a.min_dist, dt.code_b.min_dist
    max_cols = 0 if math.isinf(d_a) else math.ceil(w / d_a)
    max_rows = 0 if math.isinf(d_b) else math.ceil(w / d_b)
    for _ in range(n_samples):
        mask = 0
        n_cols = int(rng.integers(0, min(max_cols, dt.n_b) + 1))
        n_rows = int(rng.integers(0, min(max_rows, dt.n_a) + 1))
        for b in rng.choice(dt.n_b, size=n_cols, replace=False):
            words = dt.column_codewords(int(b))
            if words:
                mask ^= words[int(rng.integers(len(words)))]
        for a in rng.choice(dt.n_a, size=n_rows, replace=False):
            words = dt.row_codewords(int(a))
            if words:
                mask ^= words[int(rng.integers(len(words)))]
        if mask and bin(mask).count('1') <= w:
            yield dt.grid(mask)


def _robustness(dt, w, sampled, rng, n_samples):
    d_a, d_b = dt.code_a.min_dist, dt.code_b.min_dist
    if sampled:
        rng = ensure_rng(rng)
        grids = _sample_codewords(dt, w, rng, n_samples)
    else:
        grids = _codewords_upto(dt, w)
    checked = 0
    for grid in grids:
        checked += 1
        weight = int(grid.sum())
        if next(_covers(grid, weight, d_a, d_b), None) is None:
            return False, checked, BitVector.from_bits(grid.ravel())
    return True, checked, None


def _needs_sampling(dt, sampled):
    if dt.basis.n_rows <= ROBUSTNESS_ENUMERATION_CAP:
        return False
    if not sampled:
        raise CapExceededError(
            f'dual tensor dimension {dt.basis.n_rows} exceeds the enumeration cap {ROBUSTNESS_ENUMERATION_CAP}'
        )
    return True


def check_robustness(ca, cb, w, sampled=False, rng=None, n_samples=ROBUSTNESS_SAMPLES):
    """
    Decides ``w``-robustness of ``C_A (x) F^B + F^A (x) C_B``.

    Exhaustive over all codewords of weight ``<= w`` when the dual tensor
    dimension is at most ``ROBUSTNESS_ENUMERATION_CAP``; otherwise, with
    ``sampled`` set, over random low-weight codewords, and the report is
    labeled sampled.

    Args:
        ca (LinearCode): Column code.
        cb (LinearCode): Row code.
        w (int): Weight threshold.
        sampled (bool): Allow the sampled mode above the cap.
        rng (np.random.Generator, optional): Randomness for sampling.
        n_samples (int): Sampled codewords.

    Returns:
        RobustnessReport: The verdict.
    """

    dt = DualTensorCode(ca, cb, build_table=False)
    use_sampling = _needs_sampling(dt, sampled)
    holds, checked, witness = _robustness(dt, w, use_sampling, rng, n_samples)
    if not holds:
        logger.info('robustness w=%d fails for %r, witness weight %d', w, dt, witness.weight())
    return RobustnessReport(
        w=w, p=0, holds=holds, certified=not use_sampling, checked=checked, witness=witness,
        distances=(ca.min_dist, cb.min_dist),
    )


def check_puncture_resistance(ca, cb, w, p, sampled=False, rng=None, n_samples=ROBUSTNESS_SAMPLES):
    """
    Decides ``w``-robustness with ``p``-resistance to puncturing.

    Every pair of coordinate removals of equal size ``w' <= p`` is tried, in
    increasing ``w'`` and lexicographic order; the first failing pair is
    reported.

    Returns:
        RobustnessReport: The verdict; ``removed_a`` / ``removed_b`` name the
        failing puncture.
    """

    n_a, n_b = ca.length, cb.length
    total = 0
    certified = True
    for removed in range(min(p, n_a, n_b) + 1):
        for drop_a in itertools.combinations(range(n_a), removed):
            keep_a = [i for i in range(n_a) if i not in drop_a]
            pa = puncture(ca, keep_a)
            for drop_b in itertools.combinations(range(n_b), removed):
                keep_b = [j for j in range(n_b) if j not in drop_b]
                pb = puncture(cb, keep_b)
                dt = DualTensorCode(pa, pb, build_table=False)
                use_sampling = _needs_sampling(dt, sampled)
                certified = certified and not use_sampling
                holds, checked, witness = _robustness(dt, w, use_sampling, rng, n_samples)
                total += checked
                if not holds:
                    logger.info('puncture %s x %s breaks %d-robustness', drop_a, drop_b, w)
                    return RobustnessReport(
                        w=w, p=p, holds=False, certified=certified, checked=total, witness=witness,
                        removed_a=drop_a, removed_b=drop_b, distances=(pa.min_dist, pb.min_dist),
                    )
    return RobustnessReport(
        w=w, p=p, holds=True, certified=certified, checked=total, distances=(ca.min_dist, cb.min_dist),
    )


def decompose_r_plus_c(dt, x):
    """
    Writes a dual tensor codeword as ``x = r + c`` with few rows and columns.

    Rows of ``r`` lie in ``A'`` and are ``C_B`` codewords; columns of ``c``
    lie in ``B'`` and are ``C_A`` codewords, where ``|A'| <= |x| / d_B`` and
    ``|B'| <= |x| / d_A``. Covers are tried smallest ``|A'|`` first and each
    is tested for a linear solution.

    Args:
        dt (DualTensorCode): The local code.
        x (BitVector): A codeword.

    Returns:
        Decomposition | None: ``None`` when no admissible decomposition exists.
    """

    n_a, n_b = dt.n_a, dt.n_b
    grid = dt.grid(x)
    weight = int(grid.sum())
    target = grid.ravel()
    row_gens = dt.code_b.gen.to_bits()
    col_gens = dt.code_a.gen.to_bits()
    for a_set, b_set in _covers(grid, weight, dt.code_a.min_dist, dt.code_b.min_dist):
        # unknowns: C_B message per row of A', then C_A message per column of B'
        columns = []
        for a in a_set:
            for g in row_gens:
                block = np.zeros((n_a, n_b), dtype=np.uint8)
                block[a] = g
                columns.append(block.ravel())
        for b in b_set:
            for g in col_gens:
                block = np.zeros((n_a, n_b), dtype=np.uint8)
                block[:, b] = g
                columns.append(block.ravel())
        if not columns:
            if not target.any():
                zero = BitVector(dt.length)
                return Decomposition(zero, zero.copy(), (), ())
            continue
        system = BitMatrix.from_bits(np.array(columns, dtype=np.uint8).T)
        coeffs = solve(system, BitVector.from_bits(target))
        if coeffs is None:
            continue
        bits = coeffs.to_bits()
        n_row_vars = len(a_set) * row_gens.shape[0]
        cols = np.array(columns, dtype=np.uint8)
        r = (bits[:n_row_vars] @ cols[:n_row_vars]) & 1 if n_row_vars else np.zeros(dt.length, dtype=np.uint8)
        c = (bits[n_row_vars:] @ cols[n_row_vars:]) & 1 if len(columns) > n_row_vars else np.zeros(dt.length, dtype=np.uint8)
        return Decomposition(BitVector.from_bits(r), BitVector.from_bits(c), tuple(a_set), tuple(b_set))
    return None
