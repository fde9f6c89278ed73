"""
Distance bounds for the Z-type logical operators, ``min |w|`` over ``ker hx`` minus ``rowspace(hz)``.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..gf2.bit_matrix import BitMatrix, kernel_basis, row_reduce
from ..gf2.bit_vector import BitVector
from ..utils.math_utils import ensure_rng

logger = logging.getLogger(__name__)

EXHAUSTIVE_CANDIDATE_CAP = 2_000_000
DEFAULT_TRIALS = 200


@dataclass(frozen=True)
class DistanceEstimate:
    """
    Attributes:
        lower_witnessed (int): Largest ``t`` such that no logical operator of
            weight ``<= t`` exists, established by exhaustive enumeration.
        upper (int | float): Weight of the lightest logical found, ``inf`` if none.
        witness (BitVector | None): That logical operator.
        exact (bool): ``lower_witnessed + 1 == upper``.
    """

    lower_witnessed: int
    upper: float
    witness: Optional[BitVector]
    exact: bool

    def to_dict(self):
        return {
            'lower_witnessed': self.lower_witnessed,
            'upper': None if math.isinf(self.upper) else int(self.upper),
            'witness': None if self.witness is None else [int(i) for i in self.witness.support()],
            'exact': self.exact,
        }


def _column_syndromes(q):
    cols = [0] * q.n
    for r, support in enumerate(q.hx.supports):
        bit = 1 << r
        for j in support:
            cols[int(j)] ^= bit
    return cols


def exhaustive_logical_search(q, max_weight, cap=EXHAUSTIVE_CANDIDATE_CAP):
    """
    Looks for the lightest logical operator among all vectors of weight ``<= max_weight``.

    Weights are scanned in increasing order and the search stops before a
    weight class whose size would push the total past ``cap``.

    Returns:
        tuple: ``(verified, witness)``; every weight ``<= verified`` was
        scanned, ``witness`` is the first logical found (weight ``verified + 1``)
        or ``None``.
    """

    cols = _column_syndromes(q)
    budget = cap
    verified = 0
    for weight in range(1, min(max_weight, q.n) + 1):
        size = math.comb(q.n, weight)
        if size > budget:
            logger.info('exhaustive logical search stops before weight %d (%d candidates)', weight, size)
            break
        budget -= size
        for support in itertools.combinations(range(q.n), weight):
            s = 0
            for j in support:
                s ^= cols[j]
            if s:
                continue
            e = BitVector.from_support(q.n, support)
            if not q.is_stabilizer(e):
                return verified, e
        verified = weight
    return verified, None


def _information_set_trial(basis_bits, q, rng, best):
    perm = rng.permutation(q.n)
    reduced, _ = row_reduce(BitMatrix.from_bits(basis_bits[:, perm]))
    inverse_perm = np.argsort(perm)
    rows = reduced.to_bits()[:, inverse_perm]
    found = None
    # single rows and pairs of echelon rows are sparse codewords of ker hx
    candidates = [rows[i] for i in range(rows.shape[0])]
    candidates.extend(rows[i] ^ rows[j] for i, j in itertools.combinations(range(rows.shape[0]), 2))
    for word in candidates:
        weight = int(word.sum())
        if weight == 0 or weight >= best:
            continue
        e = BitVector.from_bits(word)
        if not q.is_stabilizer(e):
            best, found = weight, e
    return best, found


def estimate_distance(q, budget=DEFAULT_TRIALS, rng=None, exhaustive_weight=4, cap=EXHAUSTIVE_CANDIDATE_CAP):
    """
    Witnessed lower and upper bounds on the Z-distance.

    The upper bound comes from randomized information-set search: the
    kernel of ``hx`` is row reduced under ``budget`` random column
    permutations and sparse combinations of echelon rows are tested for
    being logical. The lower bound is the exhaustive scan of
    :func:`exhaustive_logical_search` up to ``exhaustive_weight``.

    Args:
        q (QuantumTannerCode): The code.
        budget (int): Information-set trials.
        rng (np.random.Generator, optional): Randomness for the trials.
        exhaustive_weight (int): Largest weight to scan exhaustively.
        cap (int): Candidate budget of the exhaustive scan.

    Returns:
        DistanceEstimate: Both bounds and the lightest logical found.
    """

    rng = ensure_rng(rng)
    verified, witness = exhaustive_logical_search(q, exhaustive_weight, cap)
    best = math.inf if witness is None else witness.weight()
    if q.k > 0 and witness is None:
        kernel = kernel_basis(q.hx.to_dense()) if q.hx.n_rows else BitMatrix.identity(q.n).rows()
        basis_bits = BitMatrix.from_rows(kernel, n_cols=q.n).to_bits()
        for _ in range(budget):
            best, found = _information_set_trial(basis_bits, q, rng, best)
            if found is not None:
                witness = found
        if witness is None:
            logger.warning('no logical operator found in %d information-set trials although k=%d', budget, q.k)
    lower = verified if witness is None else min(verified, witness.weight() - 1)
    return DistanceEstimate(
        lower_witnessed=lower,
        upper=best,
        witness=witness,
        exact=witness is not None and lower + 1 == best,
    )


def correctable_weight(q, max_weight=8, cap=EXHAUSTIVE_CANDIDATE_CAP):
    """
    Largest ``t`` such that no logical operator has weight ``<= 2t``.

    Every pair of errors of weight ``<= t`` then differs by a stabilizer or
    by a detectable vector. When the exhaustive scan finds a logical of
    weight ``d`` the answer is ``(d - 1) // 2``; otherwise it is the bound
    implied by the weights scanned, and a warning is logged.
    """

    verified, witness = exhaustive_logical_search(q, max_weight, cap)
    if witness is not None:
        return (witness.weight() - 1) // 2
    logger.warning('no logical operator up to weight %d; correctable weight is only a lower bound', verified)
    return verified // 2
