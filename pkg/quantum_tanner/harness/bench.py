"""
Runtime scaling of the decoder over a family of cyclic instances.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..codes.linear_code import parity_check_code, repetition_code
from ..complex.group import FiniteGroup
from ..complex.left_right import build_complex
from ..decoder.decoder import decode
from ..gf2.bit_vector import BitVector
from ..qtanner.code import build_qtanner, syndrome_z

logger = logging.getLogger(__name__)

DEFAULT_SIZES = (6, 12, 24, 48)
DEFAULT_ERROR_RATE = 0.01
MIN_REPETITIONS = 20


@dataclass(frozen=True)
class ScalingPoint:
    """
    Attributes:
        group_order (int): ``|G|``.
        n (int): Qubits.
        error_weight (int): ``|e|`` used at this size.
        median_seconds (float): Median decode time.
        repetitions (int): Timed decodes.
        converged (int): How many of them converged.
    """

    group_order: int
    n: int
    error_weight: int
    median_seconds: float
    repetitions: int
    converged: int

    def to_dict(self):
        return {
            'group_order': self.group_order,
            'n': self.n,
            'error_weight': self.error_weight,
            'median_seconds': self.median_seconds,
            'repetitions': self.repetitions,
            'converged': self.converged,
        }


@dataclass(frozen=True)
class ScalingReport:
    """
    Attributes:
        points (tuple): One :class:`ScalingPoint` per size.
        slope (float | None): Fitted log-log slope; ``None`` for fewer than two sizes.
        error_rate (float): Error weight per qubit.
    """

    points: tuple
    slope: Optional[float]
    error_rate: float

    def to_dict(self):
        return {
            'points': [p.to_dict() for p in self.points],
            'slope': self.slope,
            'error_rate': self.error_rate,
        }


def cyclic_instance(order):
    """``Z_order`` with ``A = B = {1, order/2, order-1}``, repetition and parity codes."""

    if order < 4 or order % 2:
        raise ValueError(f'cyclic bench instances need an even order of at least 4, got {order}')
    group = FiniteGroup.cyclic(order)
    gens = (1, order // 2, order - 1)
    complex_ = build_complex(group, gens, gens)
    return build_qtanner(complex_, repetition_code(3), parity_check_code(3))


def fit_slope(sizes, seconds):
    """
    Least-squares slope of ``log seconds`` against ``log size``.

    Examples:
        >>> fit_slope([1, 2, 4], [1.0, 2.0, 4.0])
        1.0
        >>> fit_slope([8], [0.5]) is None
        True
    """

    if len(sizes) < 2:
        return None
    slope, _ = np.polyfit(np.log(np.asarray(sizes, dtype=float)), np.log(np.asarray(seconds, dtype=float)), 1)
    return round(float(slope), 12)


def bench_linear_scaling(sizes=DEFAULT_SIZES, repetitions=MIN_REPETITIONS, error_rate=DEFAULT_ERROR_RATE, seed=0, cfg=None):
    """
    Times the decoder over growing cyclic groups at a fixed error rate.

    Args:
        sizes (Sequence[int]): Group orders.
        repetitions (int): Timed decodes per size, at least 20.
        error_rate (float): ``|e| = ceil(error_rate * n)``.
        seed (int): Seeds the error draws.
        cfg (DecoderConfig, optional): Decoder settings.

    Returns:
        ScalingReport: Median times and the fitted slope.
    """

    if repetitions < MIN_REPETITIONS:
        raise ValueError(f'at least {MIN_REPETITIONS} repetitions are needed, got {repetitions}')
    if error_rate < 0:
        raise ValueError(f'error rate must be nonnegative, got {error_rate}')
    points = []
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    for order, stream in zip(sizes, streams):
        q = cyclic_instance(order)
        rng = np.random.default_rng(stream)
        weight = math.ceil(error_rate * q.n)
        times = []
        converged = 0
        for _ in range(repetitions):
            s = syndrome_z(q, BitVector.random(q.n, rng, weight=weight))
            start = time.perf_counter()
            outcome = decode(q, s, cfg)
            times.append(time.perf_counter() - start)
            converged += outcome.converged
        point = ScalingPoint(
            group_order=order,
            n=q.n,
            error_weight=weight,
            median_seconds=float(np.median(times)),
            repetitions=repetitions,
            converged=converged,
        )
        logger.info('|G| = %d, n = %d: median decode %.6f s', order, q.n, point.median_seconds)
        points.append(point)
    slope = fit_slope([p.n for p in points], [max(p.median_seconds, 1e-9) for p in points])
    return ScalingReport(points=tuple(points), slope=slope, error_rate=error_rate)
