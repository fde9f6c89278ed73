"""
The decoding moves: the sequential pass, the two parallel steps and the lookahead.

Every move adds local dual tensor codewords to ``zhat`` through
:meth:`MismatchState.apply`, so the bookkeeping identity is preserved by
construction.
"""

from __future__ import annotations

import heapq
import logging

import numpy as np

from ..codes.dual_tensor import DualTensorCode
from ..codes.linear_code import puncture
from .state import LOOKAHEAD, PARALLEL_FIRST, PARALLEL_SECOND, SEQUENTIAL

logger = logging.getLogger(__name__)


def _best_local_update(dt, local):
    """
    ``(c, r)`` minimizing the weight of ``local + c + r``, or ``None``.
    """

    if not local:
        return None
    leader = dt.decode_mask(local)
    if leader.bit_count() >= local.bit_count():
        return None
    return dt.split_mask(local ^ leader)


def sequential_pass(state, q, cfg):
    """
    Fires weight-decreasing single-vertex updates until none is left.

    Candidates are the active update-class vertices (and check vertices when
    ``cfg.extend_to_v1``), taken in ascending ``(class, vertex)`` order.
    After an update only the vertices incident to the flipped squares are
    revisited, which is the same order a full restart would produce.

    Returns:
        bool: Whether any update fired.
    """

    dt = q.local
    views = q.complex.views
    corners = q.complex.corners
    classes = list(q.update_classes)
    if cfg.extend_to_v1:
        classes.extend(q.check_classes)
    heap = [(rank, v) for rank, c in enumerate(classes) for v in state.active[c]]
    heapq.heapify(heap)
    queued = set(heap)
    progressed = False
    while heap:
        key = heapq.heappop(heap)
        queued.discard(key)
        rank, v = key
        cls = classes[rank]
        local = state.zhat.gather(views[cls, v])
        if not local:
            state.active[cls].discard(v)
            continue
        update = _best_local_update(dt, local)
        if update is None:
            continue
        squares = state.apply(cls, v, update[0], update[1], SEQUENTIAL)
        state.rounds['sequential'] += 1
        progressed = True
        for r2, c2 in enumerate(classes):
            for u in np.unique(corners[squares, c2]):
                entry = (r2, int(u))
                if entry not in queued:
                    queued.add(entry)
                    heapq.heappush(heap, entry)
    return progressed


def _restrict(word, keep):
    return sum(1 << t for t, i in enumerate(keep) if (word >> i) & 1)


def _lift_table(words, keep):
    """Maps each punctured codeword to the first full codeword restricting to it."""

    table = {0: 0}
    for word in words:
        table.setdefault(_restrict(word, keep), word)
    return table


def _punctured(state, dt, keep_a, keep_b):
    key = (keep_a, keep_b)
    if key not in state.punctured:
        local = DualTensorCode(puncture(dt.code_a, keep_a), puncture(dt.code_b, keep_b))
        state.punctured[key] = (
            local,
            _lift_table(dt.column_words, keep_a),
            _lift_table(dt.row_words, keep_b),
        )
    return state.punctured[key]


def _punctured_update(state, dt, local, w, cap):
    """
    Searches the punctured views of one check vertex for a heavy codeword.

    The heaviest ``j`` rows and ``k`` columns are removed for every
    ``j, k <= cap``. The first restriction on which the snapshot weight
    exceeds ``w / 2`` and a codeword of weight above ``w`` leaves less than
    ``w / 2`` is lifted back to ``Q(v)``.

    Returns:
        tuple: ``(c, r)``, both 0 when no restriction qualifies.
    """

    grid = dt.grid(local)
    row_weight = grid.sum(axis=1)
    column_weight = grid.sum(axis=0)
    row_order = sorted(range(dt.n_a), key=lambda a: (-int(row_weight[a]), a))
    column_order = sorted(range(dt.n_b), key=lambda b: (-int(column_weight[b]), b))
    for j in range(min(cap, dt.n_a - 1) + 1):
        keep_a = tuple(sorted(row_order[j:]))
        for k in range(min(cap, dt.n_b - 1) + 1):
            keep_b = tuple(sorted(column_order[k:]))
            sub = grid[np.ix_(keep_a, keep_b)]
            if sub.sum() <= w / 2:
                continue
            pdt, lift_a, lift_b = _punctured(state, dt, keep_a, keep_b)
            x0 = pdt.from_grid(sub)
            residual = pdt.decode_mask(x0)
            codeword = x0 ^ residual
            if codeword.bit_count() <= w or residual.bit_count() >= w / 2:
                continue
            c0, r0 = pdt.split_mask(codeword)
            c = r = 0
            for tb, b in enumerate(keep_b):
                column = pdt.column_word(c0, tb)
                if column:
                    c ^= dt.place_column(b, lift_a[column])
            for ta, a in enumerate(keep_a):
                row = pdt.row_word(r0, ta)
                if row:
                    r ^= dt.place_row(a, lift_b[row])
            return c, r
    return 0, 0


def greedy_fix(dt, local):
    """
    Adds single row and column codewords while each one lowers the weight.

    Returns:
        tuple: ``(c, r)`` accumulated column and row parts.
    """

    c = r = 0
    improved = True
    while improved:
        improved = False
        for a in range(dt.n_a):
            row = dt.row_word(local, a)
            if not row:
                continue
            best = min(dt.row_words, key=lambda y: ((row ^ y).bit_count(), y), default=0)
            if (row ^ best).bit_count() < row.bit_count():
                move = dt.place_row(a, best)
                local ^= move
                r ^= move
                improved = True
        for b in range(dt.n_b):
            column = dt.column_word(local, b)
            if not column:
                continue
            best = min(dt.column_words, key=lambda y: ((column ^ y).bit_count(), y), default=0)
            if (column ^ best).bit_count() < column.bit_count():
                move = dt.place_column(b, best)
                local ^= move
                c ^= move
                improved = True
    return c, r


def first_parallel_step(state, q, cfg):
    """
    Updates every active check vertex against one frozen snapshot of ``zhat``.

    Each vertex first tries the punctured-view criterion, then greedily fixes
    single rows and columns of its view. All updates are applied afterwards.

    Returns:
        bool: Whether ``zhat`` changed.
    """

    dt = q.local
    views = q.complex.views
    snapshot = state.zhat.copy()
    delta = q.complex.delta
    w = cfg.robustness_threshold(delta)
    cap = cfg.subset_cap(delta)
    updates = []
    for cls in q.check_classes:
        for v in sorted(state.active[cls]):
            local = snapshot.gather(views[cls, v])
            if not local:
                continue
            c, r = _punctured_update(state, dt, local, w, cap)
            fix_c, fix_r = greedy_fix(dt, local ^ c ^ r)
            c ^= fix_c
            r ^= fix_r
            if c ^ r:
                updates.append((cls, v, c, r))
    before = state.zhat.copy()
    for cls, v, c, r in updates:
        state.apply(cls, v, c, r, PARALLEL_FIRST)
    return state.zhat != before


def second_parallel_step(state, q, cfg):
    """
    Applies the best local update of every active update vertex at once.

    Every candidate is computed against the same snapshot, so overlapping
    views may interact.

    Returns:
        bool: Whether ``zhat`` changed.
    """

    dt = q.local
    views = q.complex.views
    snapshot = state.zhat.copy()
    updates = []
    for cls in q.update_classes:
        for v in sorted(state.active[cls]):
            update = _best_local_update(dt, snapshot.gather(views[cls, v]))
            if update is not None:
                updates.append((cls, v) + update)
    for cls, v, c, r in updates:
        state.apply(cls, v, c, r, PARALLEL_SECOND)
    return state.zhat != snapshot


def _moves(dt):
    for a in range(dt.n_a):
        for word in dt.row_codewords(a):
            yield word, True
    for b in range(dt.n_b):
        for word in dt.column_codewords(b):
            yield word, False


def lookahead_step(state, q, cfg):
    """
    Breaks a stall with a check-vertex move followed by an update-vertex update.

    Active check vertices with a nonzero local estimate are scanned in
    ascending order. A move adds one row or column codeword to ``Q(v)``
    without raising its weight; it is paired with the best update of an
    update vertex incident to the moved squares. The first vertex owning a
    pair whose net effect lowers ``|zhat|`` applies its best pair.

    Returns:
        bool: Whether a pair was applied.
    """

    dt = q.local
    views = q.complex.views
    corners = q.complex.corners
    size = q.complex.local_size
    for ci, cls in enumerate(q.check_classes):
        for v in sorted(state.active[cls]):
            if not state.eps[ci, v]:
                continue
            view = views[cls, v]
            local = state.zhat.gather(view)
            if not local:
                continue
            best = None
            for move, is_row in _moves(dt):
                gain = local.bit_count() - (local ^ move).bit_count()
                if gain < 0:
                    continue
                moved = view[[k for k in range(size) if (move >> k) & 1]]
                touched = sorted({(u_cls, int(corners[sq, u_cls])) for sq in moved for u_cls in q.update_classes})
                for u_cls, u in touched:
                    shift = 0
                    for sq in moved:
                        if corners[sq, u_cls] == u:
                            shift |= 1 << (int(sq) % size)
                    after_move = state.zhat.gather(views[u_cls, u]) ^ shift
                    leader = dt.decode_mask(after_move)
                    gain_u = after_move.bit_count() - leader.bit_count()
                    if gain_u <= 0:
                        continue
                    if best is None or gain + gain_u > best[0]:
                        best = (gain + gain_u, move, is_row, u_cls, u, after_move ^ leader)
            if best is None:
                continue
            _, move, is_row, u_cls, u, codeword = best
            if is_row:
                state.apply(cls, v, 0, move, LOOKAHEAD)
            else:
                state.apply(cls, v, move, 0, LOOKAHEAD)
            c, r = dt.split_mask(codeword)
            state.apply(u_cls, u, c, r, LOOKAHEAD)
            state.rounds['lookahead'] += 1
            return True
    return False
