"""
The quadripartite left-right Cayley complex.

Four copies ``V00, V01, V10, V11`` of a group ``G``; for every ``g`` in ``G``,
``a`` in ``A`` and ``b`` in ``B`` there is one square with corners
``(g, 00), (a g, 01), (g b, 10), (a g b, 11)``. Square ``(g, a_i, b_j)`` has
id ``g * |A| * |B| + i * |B| + j``.

Every vertex sees ``|A| * |B|`` squares, labeled by ``A x B`` through its
local view. The views are stored as arrays indexed by local coordinate
``i * |B| + j``, and a square carries the same label ``(a_i, b_j)`` in all
four of its corners' views.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..utils.errors import ConstructionError
from .generators import LEFT, RIGHT, GeneratorSet

logger = logging.getLogger(__name__)

V00, V01, V10, V11 = 0, 1, 2, 3
CLASS_NAMES = ('00', '01', '10', '11')


@dataclass(frozen=True)
class LocalLabel:
    """
    The labeling of the squares around one vertex by ``A x B``.

    Attributes:
        vertex_class (int): One of ``V00, V01, V10, V11``.
        vertex (int): Group element of the vertex.
        squares (tuple): ``squares[i * |B| + j]`` is the square labeled ``(a_i, b_j)``.
        gens_a (tuple): Elements of ``A``, in local order.
        gens_b (tuple): Elements of ``B``, in local order.
    """

    vertex_class: int
    vertex: int
    squares: tuple
    gens_a: tuple
    gens_b: tuple

    def square_of(self, a, b):
        return self.squares[self.gens_a.index(a) * len(self.gens_b) + self.gens_b.index(b)]

    def label_of(self, square):
        k = self.squares.index(square)
        return self.gens_a[k // len(self.gens_b)], self.gens_b[k % len(self.gens_b)]


@dataclass(frozen=True)
class SquareGraph:
    """
    A bipartite multigraph whose edges are the squares.

    Attributes:
        name (str): ``"square0"`` (``V00`` - ``V11``) or ``"square1"`` (``V01`` - ``V10``).
        left_class (int): Vertex class on the left side.
        right_class (int): Vertex class on the right side.
        edges (np.ndarray): ``(|Q|, 2)`` array, row ``q`` joins the two corners of square ``q``.
        side_size (int): ``|G|``.
        degree (int): ``|A| * |B|``.
    """

    name: str
    left_class: int
    right_class: int
    edges: np.ndarray
    side_size: int
    degree: int

    def adjacency(self):
        """
        Symmetric ``2|G| x 2|G|`` adjacency with multiplicities, left side first.
        """

        n = self.side_size
        adj = np.zeros((2 * n, 2 * n), dtype=np.int64)
        np.add.at(adj, (self.edges[:, 0], n + self.edges[:, 1]), 1)
        return adj + adj.T

    def edge_multiset(self):
        return sorted(map(tuple, self.edges.tolist()))


class LeftRightComplex:
    """
    Attributes:
        group (FiniteGroup): ``G``.
        gens_a (GeneratorSet): Left generators ``A``.
        gens_b (GeneratorSet): Right generators ``B``.
        n_a (int): ``|A|``.
        n_b (int): ``|B|``.
        n_squares (int): ``|Q| = |G| |A| |B|``.
        corners (np.ndarray): ``(|Q|, 4)``, corner of square ``q`` in each class.
        views (np.ndarray): ``(4, |G|, |A| |B|)``, ``views[c, v, k]`` is the square
            with local coordinate ``k`` at vertex ``v`` of class ``c``.
    """

    def __init__(self, group, gens_a, gens_b):
        if gens_a.group is not group or gens_b.group is not group:
            raise ValueError('generator sets belong to a different group')
        if gens_a.side != LEFT or gens_b.side != RIGHT:
            raise ValueError('A must act on the left and B on the right')
        self.group = group
        self.gens_a = gens_a
        self.gens_b = gens_b
        self.n_a = len(gens_a)
        self.n_b = len(gens_b)
        self.local_size = self.n_a * self.n_b
        self.n_squares = group.order * self.local_size

        mul, inv = group.mul, group.inv
        a = np.asarray(gens_a.elements, dtype=np.int64)
        b = np.asarray(gens_b.elements, dtype=np.int64)
        g = np.arange(group.order, dtype=np.int64)

        # (g, i, j) grid, flattened to the square id
        gg = np.broadcast_to(g[:, None, None], (group.order, self.n_a, self.n_b))
        aa = np.broadcast_to(a[None, :, None], gg.shape)
        bb = np.broadcast_to(b[None, None, :], gg.shape)
        corners = np.empty((group.order, self.n_a, self.n_b, 4), dtype=np.int64)
        corners[..., V00] = gg
        corners[..., V01] = mul[aa, gg]
        corners[..., V10] = mul[gg, bb]
        corners[..., V11] = mul[mul[aa, gg], bb]
        self.corners = corners.reshape(self.n_squares, 4)

        # views: at vertex x the square labeled (a_i, b_j) has V00 corner g(x, i, j)
        ainv = inv[a]
        binv = inv[b]
        xx = gg
        base = np.empty((4,) + gg.shape, dtype=np.int64)
        base[V00] = xx
        base[V01] = mul[np.broadcast_to(ainv[None, :, None], gg.shape), xx]
        base[V10] = mul[xx, np.broadcast_to(binv[None, None, :], gg.shape)]
        base[V11] = mul[mul[np.broadcast_to(ainv[None, :, None], gg.shape), xx],
                        np.broadcast_to(binv[None, None, :], gg.shape)]
        local = np.arange(self.local_size, dtype=np.int64).reshape(1, self.n_a, self.n_b)
        self.views = (base * self.local_size + local).reshape(4, group.order, self.local_size)
        logger.info(
            'built complex on %s with |A|=%d, |B|=%d: %d squares', group.name, self.n_a, self.n_b, self.n_squares,
        )

    @property
    def delta(self):
        if self.n_a != self.n_b:
            raise ValueError(f'|A| = {self.n_a} differs from |B| = {self.n_b}')
        return self.n_a

    def square(self, g, i, j):
        return g * self.local_size + i * self.n_b + j

    def square_triple(self, q):
        g, k = divmod(int(q), self.local_size)
        i, j = divmod(k, self.n_b)
        return g, self.gens_a[i], self.gens_b[j]

    def local_coordinate(self, q):
        return int(q) % self.local_size

    def view(self, vertex_class, vertex):
        return self.views[vertex_class, vertex]

    def local_label(self, vertex_class, vertex):
        return LocalLabel(
            vertex_class=vertex_class,
            vertex=int(vertex),
            squares=tuple(int(q) for q in self.views[vertex_class, vertex]),
            gens_a=self.gens_a.elements,
            gens_b=self.gens_b.elements,
        )

    def audit_labels(self):
        """
        Checks every view is a bijection onto the squares at that vertex and
        that the four corners of each square agree on its label.

        Raises:
            ConstructionError: On the first violation.
        """

        local = np.arange(self.n_squares) % self.local_size
        for c in range(4):
            flat = self.views[c].ravel()
            if not np.array_equal(np.sort(flat), np.arange(self.n_squares)):
                raise ConstructionError(f'views of class {CLASS_NAMES[c]} do not partition the squares')
            owner = np.repeat(np.arange(self.group.order), self.local_size)
            if not np.array_equal(self.corners[flat, c], owner):
                raise ConstructionError(f'a class {CLASS_NAMES[c]} view lists a square not incident to its vertex')
            if not np.array_equal(local[flat], np.tile(np.arange(self.local_size), self.group.order)):
                raise ConstructionError(f'class {CLASS_NAMES[c]} labels disagree with the canonical square labels')

    def square_graphs(self):
        return square_graphs(self)

    def cayley_graphs(self):
        return cayley_graphs(self)

    def to_dict(self):
        return {
            'group': self.group.name,
            'order': self.group.order,
            'mul_table': self.group.mul.tolist(),
            'gens_a': list(self.gens_a.elements),
            'gens_b': list(self.gens_b.elements),
            'vertex_classes': list(CLASS_NAMES),
            'squares': [
                {'id': q, 'g': int(self.corners[q, V00]), 'a': int(a), 'b': int(b), 'corners': self.corners[q].tolist()}
                for q in range(self.n_squares)
                for _, a, b in [self.square_triple(q)]
            ],
        }

    def __repr__(self):
        return f'LeftRightComplex({self.group.name}, A={list(self.gens_a)}, B={list(self.gens_b)})'


def build_complex(group, gens_a, gens_b):
    """
    Builds and audits the complex.

    Args:
        group (FiniteGroup): ``G``.
        gens_a (GeneratorSet | sequence): Left set ``A``.
        gens_b (GeneratorSet | sequence): Right set ``B``.

    Returns:
        LeftRightComplex: The audited complex.

    Examples:
        >>> from .group import build_group
        >>> build_complex(build_group('Z6'), [1, 3, 5], [1, 3, 5]).n_squares
        54
    """

    if not isinstance(gens_a, GeneratorSet):
        gens_a = GeneratorSet(group, gens_a, side=LEFT)
    if not isinstance(gens_b, GeneratorSet):
        gens_b = GeneratorSet(group, gens_b, side=RIGHT)
    if len(gens_a) != len(gens_b):
        raise ValueError(f'generator sets have different sizes {len(gens_a)} and {len(gens_b)}')
    complex_ = LeftRightComplex(group, gens_a, gens_b)
    complex_.audit_labels()
    return complex_


def square_graphs(x):
    """
    The two square graphs: ``V00 - V11`` and ``V01 - V10``, one edge per square.
    """

    degree = x.local_size
    g0 = SquareGraph('square0', V00, V11, x.corners[:, [V00, V11]].copy(), x.group.order, degree)
    g1 = SquareGraph('square1', V01, V10, x.corners[:, [V01, V10]].copy(), x.group.order, degree)
    return g0, g1


def cayley_graphs(x):
    """
    Adjacency matrices of the A-edge and B-edge graphs over all four classes.

    Vertex ``(c, v)`` is row ``c * |G| + v``. A-edges join ``V00 g - V01 a g``
    and ``V10 g - V11 a g``; B-edges join ``V00 g - V10 g b`` and ``V01 g - V11 g b``.

    Returns:
        tuple: ``(adj_a, adj_b)`` as ``int64`` arrays.
    """

    n = x.group.order
    mul = x.group.mul
    g = np.arange(n)
    adj_a = np.zeros((4 * n, 4 * n), dtype=np.int64)
    adj_b = np.zeros((4 * n, 4 * n), dtype=np.int64)
    for a in x.gens_a:
        for lo, hi in ((V00, V01), (V10, V11)):
            np.add.at(adj_a, (lo * n + g, hi * n + mul[a, g]), 1)
    for b in x.gens_b:
        for lo, hi in ((V00, V10), (V01, V11)):
            np.add.at(adj_b, (lo * n + g, hi * n + mul[g, b]), 1)
    return adj_a + adj_a.T, adj_b + adj_b.T
