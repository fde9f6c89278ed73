"""
Decoder state: the mismatch vector and the bookkeeping of every update.

Five vectors over the squares are tracked. ``zhat`` starts as the mismatch
``Z`` and every update adds a local dual tensor codeword ``c + r`` to it.
The column part ``c`` and row part ``r`` are booked into ``chat0 / rhat0``
or ``chat1 / rhat1`` so that

    zhat = Z + chat0 + rhat0 + chat1 + rhat1

holds after each update. An update at an update-class vertex books into its
own index. An update at a check vertex books each row and column into the
update vertex that shares it: ``X0`` rows go to ``U0`` and its columns to
``U1``; ``X1`` rows go to ``U1`` and its columns to ``U0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..complex.left_right import CLASS_NAMES
from ..gf2.bit_vector import BitVector, int_to_bits
from ..utils.errors import ConstructionError, InconsistentSyndromeError

logger = logging.getLogger(__name__)

SEQUENTIAL = 'seq'
PARALLEL_FIRST = 'par1'
PARALLEL_SECOND = 'par2'
LOOKAHEAD = 'look'
PHASES = (SEQUENTIAL, PARALLEL_FIRST, PARALLEL_SECOND, LOOKAHEAD)


@dataclass(frozen=True)
class StepRecord:
    """
    One applied update.

    Attributes:
        round (int): Decoder iteration the update belongs to.
        phase (str): One of ``seq``, ``par1``, ``par2``, ``look``.
        vertex_class (str): Class name of the updated vertex.
        vertex (int): Vertex id inside its class.
        word (int): Local word added to ``zhat``.
        squares (tuple): Squares flipped by the update.
        weight_before (int): ``|zhat|`` before the update.
        weight_after (int): ``|zhat|`` after it.
    """

    round: int
    phase: str
    vertex_class: str
    vertex: int
    word: int
    squares: tuple
    weight_before: int
    weight_after: int

    def to_dict(self):
        return {
            'round': self.round,
            'phase': self.phase,
            'vertex_class': self.vertex_class,
            'vertex': self.vertex,
            'word': self.word,
            'squares': list(self.squares),
            'weight_before': self.weight_before,
            'weight_after': self.weight_after,
        }

    @classmethod
    def from_dict(cls, data):
        return cls(
            round=int(data['round']),
            phase=str(data['phase']),
            vertex_class=str(data['vertex_class']),
            vertex=int(data['vertex']),
            word=int(data['word']),
            squares=tuple(int(q) for q in data['squares']),
            weight_before=int(data['weight_before']),
            weight_after=int(data['weight_after']),
        )


class MismatchState:
    """
    Mutable decoder state owned by a single decode call.

    Attributes:
        zhat (BitVector): Current mismatch.
        z_initial (BitVector): Mismatch before any update.
        chat0, rhat0, chat1, rhat1 (BitVector): Booked column and row parts.
        eps (np.ndarray): ``uint64`` ``(2, |G|)`` local estimates at the check
            vertices, indexed by check class index.
        active (list): Per vertex class, a superset of the vertices whose view
            of ``zhat`` is nonzero.
        step_log (list): Applied updates, when recording.
        weight (int): ``|zhat|``, tracked incrementally.
        norm (int): Nonzero columns of the column parts plus nonzero rows of the
            row parts, summed over update vertices, tracked incrementally.
        rounds (dict): Fired sequential updates, parallel procedures and
            lookahead moves.
    """

    def __init__(self, q, zhat, eps, record_steps=True, check_invariants=False):
        self.code = q
        self.zhat = zhat
        self.z_initial = zhat.copy()
        self.chat0 = BitVector.zeros(q.n)
        self.rhat0 = BitVector.zeros(q.n)
        self.chat1 = BitVector.zeros(q.n)
        self.rhat1 = BitVector.zeros(q.n)
        self.eps = eps
        self.record_steps = record_steps
        self.check_invariants = check_invariants
        self.step_log = []
        self.round = 0
        self.rounds = {'sequential': 0, 'parallel': 0, 'lookahead': 0}
        self.weight = zhat.weight()
        self.norm = 0
        # per update class index: owner vertex -> booked local mask
        self._columns = ({}, {})
        self._rows = ({}, {})
        self.punctured = {}

        dt = q.local
        self._row_masks = [dt.row_mask(a) for a in range(dt.n_a)]
        self._column_masks = [dt.column_mask(b) for b in range(dt.n_b)]

        self.active = [set() for _ in range(4)]
        self.touch(zhat.support())

    def touch(self, squares):
        corners = self.code.complex.corners
        if len(squares) == 0:
            return
        incident = corners[np.asarray(squares, dtype=np.int64)]
        for c in range(4):
            self.active[c].update(int(v) for v in np.unique(incident[:, c]))

    def prune(self):
        """Drops active vertices whose view of ``zhat`` is zero."""

        views = self.code.complex.views
        for c in range(4):
            self.active[c] = {v for v in self.active[c] if self.zhat.gather(views[c, v])}

    def local(self, vertex_class, vertex):
        return self.zhat.gather(self.code.complex.views[vertex_class, vertex])

    def count_rows(self, mask):
        return sum(1 for m in self._row_masks if mask & m)

    def count_columns(self, mask):
        return sum(1 for m in self._column_masks if mask & m)

    def apply(self, vertex_class, vertex, c, r, phase):
        """
        Adds ``c + r`` to the view of one vertex and books both parts.

        Args:
            vertex_class (int): Class of the updated vertex.
            vertex (int): Vertex id.
            c (int): Column part, a local ``C_A (x) F^B`` word.
            r (int): Row part, a local ``F^A (x) C_B`` word.
            phase (str): Decoder phase, for the step log.

        Returns:
            np.ndarray: The squares flipped.
        """

        word = c ^ r
        view = self.code.complex.views[vertex_class, vertex]
        if not word:
            return view[:0]
        local = self.zhat.gather(view)
        before = self.weight
        after = before - local.bit_count() + (local ^ word).bit_count()
        self.zhat.xor_mask(view, word)
        self.weight = after
        self._book(vertex_class, view, c, r)
        squares = view[int_to_bits(word, view.shape[0]).astype(bool)]
        self.touch(squares)
        if self.record_steps:
            self.step_log.append(StepRecord(
                round=self.round,
                phase=phase,
                vertex_class=CLASS_NAMES[vertex_class],
                vertex=int(vertex),
                word=int(word),
                squares=tuple(int(q) for q in squares),
                weight_before=before,
                weight_after=after,
            ))
        logger.debug(
            '%s update at %s:%d, |zhat| %d -> %d', phase, CLASS_NAMES[vertex_class], vertex, before, after,
        )
        if self.check_invariants:
            self.verify()
        return squares

    def _targets(self, vertex_class):
        """Update class indices receiving ``(column part, row part)``."""

        u0, u1 = self.code.update_classes
        x0, x1 = self.code.check_classes
        if vertex_class == u0:
            return 0, 0
        if vertex_class == u1:
            return 1, 1
        if vertex_class == x0:
            return 1, 0
        if vertex_class == x1:
            return 0, 1
        raise ValueError(f'unknown vertex class {vertex_class}')

    def _book(self, vertex_class, view, c, r):
        column_index, row_index = self._targets(vertex_class)
        (self.chat0, self.chat1)[column_index].xor_mask(view, c)
        (self.rhat0, self.rhat1)[row_index].xor_mask(view, r)

        corners = self.code.complex.corners
        n_b = self.code.local.n_b
        owner_class = self.code.update_classes
        for b, m in enumerate(self._column_masks):
            part = c & m
            if part:
                owner = int(corners[view[b], owner_class[column_index]])
                self._add_part(self._columns[column_index], owner, part, self.count_columns)
        for a, m in enumerate(self._row_masks):
            part = r & m
            if part:
                owner = int(corners[view[a * n_b], owner_class[row_index]])
                self._add_part(self._rows[row_index], owner, part, self.count_rows)

    def _add_part(self, table, owner, part, count):
        old = table.get(owner, 0)
        new = old ^ part
        self.norm += count(new) - count(old)
        if new:
            table[owner] = new
        else:
            table.pop(owner, None)

    def booked(self, update_index, vertex):
        """``(column part, row part)`` booked at one update vertex."""

        return self._columns[update_index].get(vertex, 0), self._rows[update_index].get(vertex, 0)

    def verify(self):
        """
        Raises:
            ConstructionError: If the bookkeeping identity is broken.
        """

        expected = self.z_initial ^ self.chat0 ^ self.rhat0 ^ self.chat1 ^ self.rhat1
        if expected != self.zhat:
            raise ConstructionError('zhat no longer equals Z + chat0 + rhat0 + chat1 + rhat1')
        if self.weight != self.zhat.weight():
            raise ConstructionError(f'tracked weight {self.weight} != {self.zhat.weight()}')


def compute_mismatch(q, s, record_steps=True, check_invariants=False):
    """
    Decodes every check vertex locally and sums the estimates.

    Each check vertex ``v`` takes the minimum-weight local error ``eps_v`` with
    its slice of the syndrome. Two neighboring estimates disagree exactly on
    the squares of the mismatch ``Z = sum eps_v``.

    Args:
        q (QuantumTannerCode): The code.
        s (BitVector): Syndrome over the ``hx`` rows.
        record_steps (bool): Keep a step log in the returned state.
        check_invariants (bool): Verify the bookkeeping after every update.

    Returns:
        MismatchState: Fresh state with ``zhat = Z``.

    Raises:
        ValueError: If ``s`` has the wrong length.
        InconsistentSyndromeError: If a local slice has no local error.
    """

    if s.length != q.hx.n_rows:
        raise ValueError(f'syndrome of length {s.length}, expected {q.hx.n_rows}')
    order = q.order
    per_vertex = q.checks_per_vertex
    views = q.complex.views
    eps = np.zeros((2, order), dtype=np.uint64)
    zhat = BitVector.zeros(q.n)
    if per_vertex:
        chunks = s.to_bits().reshape(2, order, per_vertex).astype(np.int64)
        slices = chunks @ (np.int64(1) << np.arange(per_vertex, dtype=np.int64))
        for ci, cls in enumerate(q.check_classes):
            for v in np.flatnonzero(slices[ci]):
                leader = q.local.leader_for_syndrome(int(slices[ci, v]))
                if not leader:
                    raise InconsistentSyndromeError(
                        f'syndrome slice at {CLASS_NAMES[cls]}:{v} has no local error'
                    )
                eps[ci, v] = leader
                zhat.xor_mask(views[cls, v], leader)
    state = MismatchState(q, zhat, eps, record_steps=record_steps, check_invariants=check_invariants)
    logger.debug('mismatch of weight %d from %d nonzero local estimates', state.weight, int(np.count_nonzero(eps)))
    return state
