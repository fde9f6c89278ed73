"""
Lifted product codes over ``F_2[G]`` and their reduction to quantum Tanner codes.

With ``D_A = diag(A)`` and ``D_B = diag(B)`` in generator-set order,
``H_A = h_A D_A`` and ``M_A = [h_A; H_A]`` (rows ``C_0`` then ``C_1``); the
same for ``B`` with rows ``D_0, D_1``. Qubits are a ``|A| x |B|`` block
``e_ab`` and a ``(C_0 + C_1) x (D_0 + D_1)`` block ``e_cd`` whose four parts
``e_ij`` sit on ``C_j x D_i``.

* An X generator is a unit ``V`` on ``A x D``; its support is ``V M_B`` on
  ``A x B`` and ``M_A V`` on ``C x D``.
* A Z generator is a unit ``U`` on ``C x B``; its support is ``M_A.T U`` and
  ``U M_B.T``.

The syndromes of a Z-type error are ``T = e_ab M_B.T + M_A.T e_cd`` (seen by
the X generators, split into ``T_0, T_1`` by ``D_0, D_1``) and the X-type
counterpart ``S = M_A e_ab + e_cd M_B`` (split into ``S_0, S_1``).

The ``A x B`` block is identified with the squares of the left-right
complex: qubit ``(a, b, x)`` is the square ``(x b^-1, a, b)``. Under this
map ``g_A T_0`` and ``g_A D_A T_1`` are the local syndromes at ``V10`` and
``V01`` of the quantum Tanner code with ``C_A = rowspace(h_A)`` and
``C_B = ker(h_B)``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..codes.linear_code import LinearCode
from ..complex.generators import LEFT, RIGHT, GeneratorSet
from ..complex.left_right import build_complex
from ..decoder.decoder import decode
from ..gf2.bit_matrix import BitMatrix, RowSpace, kernel_basis, rank, solve
from ..gf2.bit_vector import BitVector
from ..gf2.sparse import SparseBitMatrix
from ..qtanner.code import QuantumTannerCode
from ..utils.errors import ConstructionError, RankDeficiencyError
from .group_algebra import GroupAlgebraMatrix

logger = logging.getLogger(__name__)


def _as_bits(matrix):
    if isinstance(matrix, GroupAlgebraMatrix):
        return matrix.to_scalar()
    if isinstance(matrix, BitMatrix):
        return matrix
    bits = np.asarray(matrix, dtype=np.uint8)
    if bits.ndim == 1:
        bits = bits.reshape(1, -1) if bits.size else bits.reshape(0, 0)
    return BitMatrix.from_bits(bits)


def pseudo_right_inverse(h):
    """
    A matrix ``n`` with ``n h^T = I``.

    Args:
        h (BitMatrix | GroupAlgebraMatrix): Full-rank ``m x Delta`` matrix over ``F_2``.

    Returns:
        BitMatrix: ``m x Delta``; row ``i`` solves ``h x = e_i``.

    Raises:
        RankDeficiencyError: If ``h`` does not have full row rank.

    Examples:
        >>> n = pseudo_right_inverse(BitMatrix.from_bits([[1, 1, 0], [0, 1, 1]]))
        >>> (n @ BitMatrix.from_bits([[1, 1, 0], [0, 1, 1]]).T) == BitMatrix.identity(2)
        True
    """

    h = _as_bits(h)
    m = h.n_rows
    rows = []
    for i in range(m):
        x = solve(h, BitVector.from_support(m, [i]))
        if x is None:
            raise RankDeficiencyError(f'{m}x{h.n_cols} matrix has rank {rank(h)} < {m}')
        rows.append(x)
    return BitMatrix.from_rows(rows, n_cols=h.n_cols)


@dataclass(frozen=True)
class LpError:
    """
    A Z-type error on a lifted product code, block by block.

    Attributes:
        e_ab (GroupAlgebraMatrix): ``|A| x |B|``.
        e_00, e_01, e_10, e_11 (GroupAlgebraMatrix): ``e_ij`` on ``C_j x D_i``, each ``m_A x m_B``.
    """

    e_ab: GroupAlgebraMatrix
    e_00: GroupAlgebraMatrix
    e_01: GroupAlgebraMatrix
    e_10: GroupAlgebraMatrix
    e_11: GroupAlgebraMatrix

    @classmethod
    def zeros(cls, lp):
        g = lp.group
        cd = GroupAlgebraMatrix.zeros(g, lp.m_a, lp.m_b)
        return cls(GroupAlgebraMatrix.zeros(g, lp.delta_a, lp.delta_b), cd, cd.copy(), cd.copy(), cd.copy())

    @classmethod
    def from_cd(cls, lp, e_ab, e_cd):
        """Splits a ``2 m_A x 2 m_B`` block into its four parts."""

        c0, c1 = slice(0, lp.m_a), slice(lp.m_a, 2 * lp.m_a)
        d0, d1 = slice(0, lp.m_b), slice(lp.m_b, 2 * lp.m_b)
        return cls(
            e_ab=e_ab,
            e_00=e_cd.block(c0, d0),
            e_01=e_cd.block(c1, d0),
            e_10=e_cd.block(c0, d1),
            e_11=e_cd.block(c1, d1),
        )

    @classmethod
    def from_flat(cls, lp, vector):
        """Inverse of :meth:`flatten`."""

        bits = vector.to_bits() if isinstance(vector, BitVector) else np.asarray(vector, dtype=np.uint8)
        if bits.shape[0] != lp.n:
            raise ValueError(f'vector of length {bits.shape[0]} for a code on {lp.n} qubits')
        g = lp.group
        ab = lp.delta_a * lp.delta_b * g.order
        cd = lp.m_a * lp.m_b * g.order
        blocks = [GroupAlgebraMatrix.from_vector(g, lp.delta_a, lp.delta_b, bits[:ab])]
        for t in range(4):
            chunk = bits[ab + t * cd:ab + (t + 1) * cd]
            blocks.append(GroupAlgebraMatrix.from_vector(g, lp.m_a, lp.m_b, chunk))
        return cls(*blocks)

    @classmethod
    def random(cls, lp, rng, weight, blocks=('ab', '00', '01', '10', '11')):
        """
        A uniformly random error of the given weight supported on ``blocks``.
        """

        pool = np.concatenate([lp.block_range(name) for name in blocks])
        if not 0 <= weight <= pool.size:
            raise ValueError(f'weight {weight} infeasible on {pool.size} qubits')
        return cls.from_flat(lp, BitVector.from_support(lp.n, rng.choice(pool, size=weight, replace=False)))

    def cd(self):
        """The ``C x D`` block ``[[e_00, e_10], [e_01, e_11]]``."""

        top = GroupAlgebraMatrix.hstack([self.e_00, self.e_10])
        bottom = GroupAlgebraMatrix.hstack([self.e_01, self.e_11])
        return GroupAlgebraMatrix.vstack([top, bottom])

    def flatten(self):
        """Qubit vector ordered ``e_ab, e_00, e_01, e_10, e_11``."""

        parts = [self.e_ab, self.e_00, self.e_01, self.e_10, self.e_11]
        return BitVector.from_bits(np.concatenate([p.to_vector() for p in parts]))

    @property
    def weight(self):
        return sum(p.weight for p in (self.e_ab, self.e_00, self.e_01, self.e_10, self.e_11))

    def __xor__(self, other):
        return LpError(
            self.e_ab + other.e_ab,
            self.e_00 + other.e_00,
            self.e_01 + other.e_01,
            self.e_10 + other.e_10,
            self.e_11 + other.e_11,
        )

    __add__ = __xor__


@dataclass(frozen=True)
class LpSyndrome:
    """
    Attributes:
        s0, s1 (GroupAlgebraMatrix): ``C_0 x B`` and ``C_1 x B`` parts of ``S``.
        t0, t1 (GroupAlgebraMatrix): ``A x D_0`` and ``A x D_1`` parts of ``T``.
    """

    s0: GroupAlgebraMatrix
    s1: GroupAlgebraMatrix
    t0: GroupAlgebraMatrix
    t1: GroupAlgebraMatrix

    def t_bits(self):
        """``T`` in ``hx`` row order."""

        return BitVector.from_bits(GroupAlgebraMatrix.hstack([self.t0, self.t1]).to_vector())

    def s_bits(self):
        """``S`` in ``hz`` row order."""

        return BitVector.from_bits(GroupAlgebraMatrix.vstack([self.s0, self.s1]).to_vector())


class LiftedProductCode:
    """
    Attributes:
        group (FiniteGroup): ``G``.
        gens_a (GeneratorSet): ``A``, acting on the left.
        gens_b (GeneratorSet): ``B``, acting on the right.
        ha, hb (GroupAlgebraMatrix): Scalar checks ``h_A``, ``h_B``.
        da, db (GroupAlgebraMatrix): ``D_A``, ``D_B``.
        big_ha, big_hb (GroupAlgebraMatrix): ``H_A = h_A D_A``, ``H_B = h_B D_B``.
        ma, mb (GroupAlgebraMatrix): ``[h_A; H_A]`` and ``[h_B; H_B]``.
        n (int): Qubits, ``|G| (|A||B| + 4 m_A m_B)``.
        hx (SparseBitMatrix): One row per X generator unit on ``A x D``.
        hz (SparseBitMatrix): One row per Z generator unit on ``C x B``.
    """

    def __init__(self, group, gens_a, gens_b, ha, hb):
        self.group = group
        self.gens_a = gens_a
        self.gens_b = gens_b
        ha_bits = _as_bits(ha)
        hb_bits = _as_bits(hb)
        if ha_bits.n_cols != len(gens_a) or hb_bits.n_cols != len(gens_b):
            raise ValueError(
                f'h_A has {ha_bits.n_cols} columns for |A|={len(gens_a)}, h_B has {hb_bits.n_cols} for |B|={len(gens_b)}'
            )
        for name, bits in (('h_A', ha_bits), ('h_B', hb_bits)):
            if rank(bits) != bits.n_rows:
                raise RankDeficiencyError(f'{name} ({bits.n_rows}x{bits.n_cols}) is not full rank')
        self.ha_bits = ha_bits
        self.hb_bits = hb_bits
        self.delta_a = len(gens_a)
        self.delta_b = len(gens_b)
        self.m_a = ha_bits.n_rows
        self.m_b = hb_bits.n_rows

        self.ha = GroupAlgebraMatrix.scalar(group, ha_bits)
        self.hb = GroupAlgebraMatrix.scalar(group, hb_bits)
        self.da = GroupAlgebraMatrix.diagonal(group, gens_a.elements)
        self.db = GroupAlgebraMatrix.diagonal(group, gens_b.elements)
        self.big_ha = self.ha @ self.da
        self.big_hb = self.hb @ self.db
        self.ma = GroupAlgebraMatrix.vstack([self.ha, self.big_ha])
        self.mb = GroupAlgebraMatrix.vstack([self.hb, self.big_hb])

        order = group.order
        self.n = order * (self.delta_a * self.delta_b + 4 * self.m_a * self.m_b)
        self.hx = self._generators(self.delta_a, 2 * self.m_b, self._x_support)
        self.hz = self._generators(2 * self.m_a, self.delta_b, self._z_support)
        self._hz_space = None
        self._qtanner = None
        logger.info(
            'lifted product over %s: m_A=%d m_B=%d, n=%d, %d X and %d Z generators',
            group.name, self.m_a, self.m_b, self.n, self.hx.n_rows, self.hz.n_rows,
        )

    def _x_support(self, v):
        return LpError.from_cd(self, v @ self.mb, self.ma @ v)

    def _z_support(self, u):
        return LpError.from_cd(self, self.ma.T @ u, u @ self.mb.T)

    def _generators(self, rows, cols, support):
        order = self.group.order
        supports = []
        for i in range(rows):
            for j in range(cols):
                for z in range(order):
                    unit = GroupAlgebraMatrix.unit(self.group, rows, cols, i, j, z)
                    supports.append(support(unit).flatten().support())
        return SparseBitMatrix(len(supports), self.n, supports)

    def block_range(self, name):
        """Qubit indices of one block: ``'ab'``, ``'00'``, ``'01'``, ``'10'`` or ``'11'``."""

        order = self.group.order
        ab = self.delta_a * self.delta_b * order
        cd = self.m_a * self.m_b * order
        if name == 'ab':
            return np.arange(ab)
        index = ('00', '01', '10', '11').index(name)
        return np.arange(ab + index * cd, ab + (index + 1) * cd)

    def max_generator_weight(self):
        weights = self.hx.row_weights() + self.hz.row_weights()
        return max(weights, default=0)

    def weight_bound(self):
        """``max(|A|, |B|) + 2 * max column weight of h_A, h_B``."""

        columns = list(self.ha_bits.column_weights()) + list(self.hb_bits.column_weights())
        return max(self.delta_a, self.delta_b) + 2 * int(max(columns, default=0))

    def hz_space(self):
        if self._hz_space is None:
            self._hz_space = RowSpace(self.hz.to_dense())
        return self._hz_space

    @property
    def qtanner(self):
        if self._qtanner is None:
            self._qtanner = qtanner_from_lp(self)
        return self._qtanner

    def to_dict(self):
        return {
            'group': self.group.name,
            'gens_a': list(self.gens_a.elements),
            'gens_b': list(self.gens_b.elements),
            'ha': self.ha_bits.to_bits().tolist(),
            'hb': self.hb_bits.to_bits().tolist(),
            'n': self.n,
            'hx_shape': list(self.hx.shape),
            'hz_shape': list(self.hz.shape),
        }

    def __repr__(self):
        return f'LiftedProductCode({self.group.name}, m_A={self.m_a}, m_B={self.m_b}, n={self.n})'


def build_lp(group, ha, hb, a_set, b_set):
    """
    Builds a lifted product code and checks that its generators commute.

    Args:
        group (FiniteGroup): ``G``.
        ha (BitMatrix | array_like): Full-rank ``m_A x |A|`` matrix.
        hb (BitMatrix | array_like): Full-rank ``m_B x |B|`` matrix.
        a_set (GeneratorSet | sequence): ``A``.
        b_set (GeneratorSet | sequence): ``B``.

    Returns:
        LiftedProductCode: The code.

    Raises:
        RankDeficiencyError: If ``ha`` or ``hb`` is not full rank.
        ConstructionError: If ``hx hz^T != 0``.
    """

    gens_a = a_set if isinstance(a_set, GeneratorSet) else GeneratorSet(group, a_set, side=LEFT)
    gens_b = b_set if isinstance(b_set, GeneratorSet) else GeneratorSet(group, b_set, side=RIGHT)
    lp = LiftedProductCode(group, gens_a, gens_b, ha, hb)
    if lp.hx.n_rows and lp.hz.n_rows and not (lp.hx.to_dense() @ lp.hz.to_dense().T).is_zero():
        raise ConstructionError('lifted product generators do not commute')
    return lp


def lp_syndrome(lp, e):
    """
    The four syndrome blocks ``(S_0, S_1, T_0, T_1)`` of an error.
    """

    e_cd = e.cd()
    s = lp.ma @ e.e_ab + e_cd @ lp.mb
    t = e.e_ab @ lp.mb.T + lp.ma.T @ e_cd
    c0, c1 = slice(0, lp.m_a), slice(lp.m_a, 2 * lp.m_a)
    d0, d1 = slice(0, lp.m_b), slice(lp.m_b, 2 * lp.m_b)
    return LpSyndrome(s0=s.block(rows=c0), s1=s.block(rows=c1), t0=t.block(cols=d0), t1=t.block(cols=d1))


def simplify_error(lp, e):
    """
    An equivalent error with empty ``e_01`` and ``e_10`` blocks.

    Adds the Z stabilizer of ``(U_0, U_1)`` with ``U_0 = e_10 n_B D_B`` and
    ``U_1 = e_01 n_B``; these solve ``U_0 H_B.T = e_10`` and
    ``U_1 h_B.T = e_01``.

    Args:
        lp (LiftedProductCode): The code.
        e (LpError): Any Z-type error.

    Returns:
        LpError: ``e'`` with ``e'_01 = e'_10 = 0`` and ``e + e'`` a stabilizer.
    """

    if e.e_01.is_zero() and e.e_10.is_zero():
        return e
    nb = GroupAlgebraMatrix.scalar(lp.group, pseudo_right_inverse(lp.hb_bits))
    u0 = e.e_10 @ nb @ lp.db
    u1 = e.e_01 @ nb
    u = GroupAlgebraMatrix.vstack([u0, u1])
    return e ^ lp._z_support(u)


def qtanner_from_lp(lp):
    """
    The quantum Tanner code carried by the ``A x B`` block.

    ``C_A`` is the row space of ``h_A`` (so ``C_A^perp = ker h_A``) and
    ``C_B = ker h_B``; ``g_A`` and ``g_B`` are kernel bases of ``h_A`` and
    ``h_B``.

    Returns:
        QuantumTannerCode: Built on ``build_complex(G, A, B)``.
    """

    ga = BitMatrix.from_rows(kernel_basis(lp.ha_bits), n_cols=lp.delta_a)
    gb = BitMatrix.from_rows(kernel_basis(lp.hb_bits), n_cols=lp.delta_b)
    ca = LinearCode(lp.ha_bits, ga)
    cb = LinearCode(gb, lp.hb_bits)
    complex_ = build_complex(lp.group, lp.gens_a, lp.gens_b)
    return QuantumTannerCode(complex_, ca, cb)


def _square_index(lp, q):
    """``psi``: AB qubit index ``(a * |B| + b) * |G| + x`` to square id."""

    order = lp.group.order
    a, b, x = np.unravel_index(np.arange(lp.delta_a * lp.delta_b * order), (lp.delta_a, lp.delta_b, order))
    b_elements = np.asarray(lp.gens_b.elements, dtype=np.int64)
    g = lp.group.mul[x, lp.group.inv[b_elements[b]]]
    return g * q.complex.local_size + a * lp.delta_b + b


def ab_to_squares(lp, q, e_ab):
    squares = _square_index(lp, q)
    return BitVector.from_support(q.n, squares[np.flatnonzero(e_ab.to_vector())])


def squares_to_ab(lp, q, e):
    squares = _square_index(lp, q)
    return GroupAlgebraMatrix.from_vector(lp.group, lp.delta_a, lp.delta_b, e.to_bits()[squares])


def project_syndrome(lp, q, syndrome):
    """
    The quantum Tanner syndrome of the ``A x B`` block.

    ``g_A T_0`` lands on the ``V10`` checks and ``g_A D_A T_1`` on the
    ``V01`` checks.
    """

    ga = GroupAlgebraMatrix.scalar(lp.group, q.ca.par)
    p0 = ga @ syndrome.t0
    p1 = ga @ lp.da @ syndrome.t1
    order = lp.group.order
    # (c, d, z) -> vertex-major blocks of c * m_B + d checks
    v01 = p1.entries.transpose(2, 0, 1).reshape(order, -1)
    v10 = p0.entries.transpose(2, 0, 1).reshape(order, -1)
    return BitVector.from_bits(np.concatenate([v01.ravel(), v10.ravel()]))


@dataclass(frozen=True)
class LpDecodeOutcome:
    """
    Attributes:
        estimate (LpError): ``(e_ab, e_00, 0, 0, e_11)``.
        converged (bool): The quantum Tanner decoder converged.
        inner (DecodeOutcome): Outcome on the projected problem.
    """

    estimate: LpError
    converged: bool
    inner: object

    def to_dict(self):
        return {
            'converged': self.converged,
            'estimate': [int(i) for i in self.estimate.flatten().support()],
            'inner': self.inner.to_dict(),
        }


def lp_decode(lp, syndrome, cfg=None):
    """
    Decodes the ``T`` part of a syndrome through the quantum Tanner decoder.

    The projected syndromes are decoded on :func:`qtanner_from_lp`, the
    estimate is mapped back to ``e_ab`` and the ``C x D`` blocks are lifted
    with ``e_00 = n_A (T_0 + e_ab h_B.T)`` and
    ``e_11 = n_A D_A (T_1 + e_ab H_B.T)``.

    Args:
        lp (LiftedProductCode): The code.
        syndrome (LpSyndrome): Output of :func:`lp_syndrome`.
        cfg (DecoderConfig, optional): Settings of the inner decoder.

    Returns:
        LpDecodeOutcome: The estimate and the inner outcome.
    """

    q = lp.qtanner
    inner = decode(q, project_syndrome(lp, q, syndrome), cfg)
    e_ab = squares_to_ab(lp, q, inner.ehat)
    na = GroupAlgebraMatrix.scalar(lp.group, pseudo_right_inverse(lp.ha_bits))
    e_00 = na @ (syndrome.t0 + e_ab @ lp.hb.T)
    e_11 = na @ lp.da @ (syndrome.t1 + e_ab @ lp.big_hb.T)
    zero = GroupAlgebraMatrix.zeros(lp.group, lp.m_a, lp.m_b)
    estimate = LpError(e_ab, e_00, zero, zero.copy(), e_11)
    if not inner.converged:
        logger.debug('inner decoder did not converge; lifted estimate is partial')
    return LpDecodeOutcome(estimate=estimate, converged=inner.converged, inner=inner)


def lp_stabilizer_equivalent(lp, e1, e2):
    """Whether ``e1 + e2`` lies in the row space of the Z generators."""

    return (e1 ^ e2).flatten() in lp.hz_space()


def lp_decode_error(lp, e, cfg=None):
    return lp_decode(lp, lp_syndrome(lp, e), cfg)
