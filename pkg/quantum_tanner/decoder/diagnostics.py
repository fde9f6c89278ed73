"""
Counters describing a decoder state.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..complex.left_right import CLASS_NAMES


@dataclass(frozen=True)
class DiagnosticsReport:
    """
    Attributes:
        mismatch_weight (int): ``|zhat|``.
        active (dict): Class name to the number of vertices with a nonzero view.
        norm (int): Incrementally tracked norm of the booked decomposition.
    """

    mismatch_weight: int
    active: dict
    norm: int

    def to_dict(self):
        return {'mismatch_weight': self.mismatch_weight, 'active': dict(self.active), 'norm': self.norm}


def recompute_norm(state, q):
    """
    The decomposition norm rebuilt from ``chat0 .. rhat1``.

    Every update vertex contributes the nonzero columns of its column part and
    the nonzero rows of its row part.
    """

    views = q.complex.views
    total = 0
    pairs = ((state.chat0, state.rhat0), (state.chat1, state.rhat1))
    for cls, (chat, rhat) in zip(q.update_classes, pairs):
        for v in range(q.order):
            total += state.count_columns(chat.gather(views[cls, v]))
            total += state.count_rows(rhat.gather(views[cls, v]))
    return total


def diagnostics(state, q):
    """
    Reports ``|zhat|``, the active set split by class and the norm.

    The active sets are pruned to vertices with a nonzero view first.
    """

    state.prune()
    return DiagnosticsReport(
        mismatch_weight=state.weight,
        active={CLASS_NAMES[c]: len(state.active[c]) for c in range(4)},
        norm=state.norm,
    )
