"""
Decoder tuning parameters.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from typing import Optional

DEFAULT_EPSILON = 0.25
ROUNDS_PER_MISMATCH_BIT = 10


@dataclass(frozen=True)
class DecoderConfig:
    """
    Attributes:
        epsilon (float): Robustness exponent, ``0 < epsilon < 1/2``.
        gamma (float | None): Puncturing exponent; ``1 - epsilon`` when unset.
        max_rounds (int | None): Cap on decoder iterations; ``10 (1 + |Z|)`` when unset.
        lookahead (bool): Break stalls with a V1 move paired with a V0 update.
        extend_to_v1 (bool): Let the sequential pass also update V1 vertices.
        check_invariants (bool): Verify the bookkeeping identity after every update.
        record_steps (bool): Keep the step log.
    """

    epsilon: float = DEFAULT_EPSILON
    gamma: Optional[float] = None
    max_rounds: Optional[int] = None
    lookahead: bool = True
    extend_to_v1: bool = False
    check_invariants: bool = False
    record_steps: bool = True

    def __post_init__(self):
        if not 0 < self.epsilon < 0.5:
            raise ValueError(f'epsilon must lie in (0, 1/2), got {self.epsilon}')
        if self.gamma is not None and not 0 < self.gamma <= 1:
            raise ValueError(f'gamma must lie in (0, 1], got {self.gamma}')
        if self.max_rounds is not None and self.max_rounds < 0:
            raise ValueError(f'max_rounds must be nonnegative, got {self.max_rounds}')

    @property
    def effective_gamma(self):
        return 1 - self.epsilon if self.gamma is None else self.gamma

    def robustness_threshold(self, delta):
        """``w = delta^(3/2 - epsilon)``, floored at 1."""

        return max(1.0, delta ** (1.5 - self.epsilon))

    def subset_cap(self, delta):
        """Largest number of rows (or columns) punctured, ``floor(delta^gamma / 2)`` floored at 1."""

        return max(1, math.floor(delta ** self.effective_gamma / 2))

    def round_cap(self, mismatch_weight):
        if self.max_rounds is not None:
            return self.max_rounds
        return ROUNDS_PER_MISMATCH_BIT * (1 + mismatch_weight)

    def to_dict(self):
        out = asdict(self)
        out['gamma'] = self.effective_gamma
        return out

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f'unknown decoder settings: {", ".join(unknown)}')
        return cls(**data)
