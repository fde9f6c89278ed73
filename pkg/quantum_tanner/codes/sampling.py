"""
Rejection sampling of component code pairs with good distances on both sides.
"""

import logging
import math

from ..utils.errors import CapExceededError
from .linear_code import EXHAUSTIVE_DIMENSION_CAP, random_code

logger = logging.getLogger(__name__)

SAMPLING_BUDGET = 10000


def _good(code, target):
    return code.min_dist >= target and code.dual().min_dist >= target


def sample_component_pair(delta, rho, delta_target, rng, max_attempts=SAMPLING_BUDGET):
    """
    Draws ``C_A`` of dimension ``floor(rho * delta)`` and ``C_B`` of the
    complementary dimension, both with ``d(C), d(C^perp) >= ceil(delta_target * delta)``.

    The two codes are sampled independently, so the budget applies to each.

    Args:
        delta (int): Local length, at most ``EXHAUSTIVE_DIMENSION_CAP``.
        rho (float): Rate of ``C_A``; must give ``0 < k_A < delta``.
        delta_target (float): Target relative distance.
        rng (np.random.Generator): Source of randomness.
        max_attempts (int): Draws allowed per code.

    Returns:
        tuple: ``(C_A, C_B)`` with certified distances.

    Raises:
        CapExceededError: If no acceptable code turns up within the budget.

    Examples:
        >>> ca, cb = sample_component_pair(3, 1 / 3, 2 / 3, np.random.default_rng(1))
        >>> ca.min_dist, cb.min_dist
        (3, 2)
    """

    if delta > EXHAUSTIVE_DIMENSION_CAP:
        raise ValueError(f'local length {delta} above the exhaustive cap {EXHAUSTIVE_DIMENSION_CAP}')
    k_a = math.floor(rho * delta + 1e-9)
    if not 0 < k_a < delta:
        raise ValueError(f'rate {rho} gives dimension {k_a}, outside (0, {delta})')
    k_b = delta - k_a
    target = math.ceil(delta_target * delta - 1e-9)
    pair = []
    for k in (k_a, k_b):
        for attempt in range(max_attempts):
            code = random_code(delta, k, rng)
            if _good(code, target):
                logger.debug('accepted [%d, %d] code after %d draws', delta, k, attempt + 1)
                pair.append(code)
                break
        else:
            raise CapExceededError(
                f'no [{delta}, {k}] code with distance >= {target} on both sides in {max_attempts} draws'
            )
    return pair[0], pair[1]
