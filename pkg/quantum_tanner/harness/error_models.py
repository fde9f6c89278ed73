"""
Structured error models for desk-scale decoder sweeps.

True worst-case errors cannot be searched for, so the harness draws from
three structured families and enumerates low weights exhaustively.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..gf2.bit_vector import BitVector


def uniform_error(q, rng, weight):
    """A uniformly random support of the given weight."""

    if not 0 <= weight <= q.n:
        raise ValueError(f'weight {weight} is outside [0, {q.n}]')
    return BitVector.random(q.n, rng, weight=weight)


def clustered_error(q, rng, weight, clusters=1):
    """
    A random support confined to the neighbourhoods ``Q(v)`` of ``clusters``
    random vertices.

    Raises:
        ValueError: If the neighbourhoods hold fewer than ``weight`` squares.
    """

    if clusters < 1:
        raise ValueError(f'need at least one cluster, got {clusters}')
    views = q.complex.views
    classes = rng.integers(0, 4, size=clusters)
    vertices = rng.integers(0, q.order, size=clusters)
    pool = np.unique(np.concatenate([views[c, v] for c, v in zip(classes, vertices)]))
    if not 0 <= weight <= pool.size:
        raise ValueError(f'weight {weight} does not fit in {pool.size} clustered squares')
    return BitVector.from_support(q.n, rng.choice(pool, size=weight, replace=False))


def half_generator_error(q, rng):
    """``ceil(|g| / 2)`` squares of a random Z-type generator ``g``."""

    if q.hz.n_rows == 0:
        raise ValueError('the code has no Z-type generators')
    support = q.hz.supports[int(rng.integers(q.hz.n_rows))]
    size = math.ceil(support.size / 2)
    return BitVector.from_support(q.n, np.sort(rng.choice(support, size=size, replace=False)))


def sample_error(model, q, rng, weight):
    """
    Draws one error.

    Args:
        model (ErrorModelConfig): The model; ``exhaustive`` cannot be sampled.
        q (QuantumTannerCode): The code.
        rng (np.random.Generator): Randomness.
        weight (int): Target weight, ignored by ``half-generator``.

    Returns:
        BitVector: The error.

    Raises:
        ValueError: For infeasible parameters.
    """

    if model.kind == 'uniform':
        return uniform_error(q, rng, weight)
    if model.kind == 'clustered':
        return clustered_error(q, rng, weight, model.clusters)
    if model.kind == 'half-generator':
        return half_generator_error(q, rng)
    raise ValueError(f'error model {model.kind!r} is not sampled')


def exhaustive_errors(q, max_weight):
    """Every error of weight ``1..max_weight`` in lexicographic support order."""

    if not 0 <= max_weight <= q.n:
        raise ValueError(f'weight {max_weight} is outside [0, {q.n}]')
    for weight in range(1, max_weight + 1):
        for support in itertools.combinations(range(q.n), weight):
            yield BitVector.from_support(q.n, support)
