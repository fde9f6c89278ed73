"""
Quantum Tanner codes on the quadripartite left-right Cayley complex.

Qubits are the squares. Z-type generators (rows of ``hz``) are a
``C_A (x) C_B`` basis placed in the local view of every vertex of the two
*update* classes; X-type generators (rows of ``hx``) are a
``C_A^perp (x) C_B^perp`` basis in every view of the two *check* classes.
A Z-type error is seen through ``hx``.

In the standard orientation the update classes are ``(V00, V11)`` and the
check classes ``(V01, V10)``. :meth:`QuantumTannerCode.swapped` exchanges
them together with the dual component codes, which turns X-type decoding
into the same problem.

Row ``r`` of ``hx`` is check ``r % s`` at vertex ``(r // s) % |G|`` of check
class ``r // (s |G|)``, with ``s`` the number of local checks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from ..codes.dual_tensor import DualTensorCode
from ..complex.left_right import CLASS_NAMES, V00, V01, V10, V11, square_graphs
from ..complex.spectrum import square_graph_spectrum
from ..gf2.bit_matrix import BitMatrix, RowSpace, kron, rank
from ..gf2.bit_vector import BitVector
from ..gf2.sparse import SparseBitMatrix
from ..utils.errors import ConstructionError

logger = logging.getLogger(__name__)


def _place(complex_, classes, local_basis):
    """
    Supports of ``local_basis`` rows in every view of ``classes``, vertex-major.
    """

    local_supports = [np.flatnonzero(row) for row in local_basis.to_bits()]
    supports = []
    for c in classes:
        views = complex_.views[c]
        for v in range(complex_.group.order):
            supports.extend(views[v, ls] for ls in local_supports)
    return SparseBitMatrix(len(supports), complex_.n_squares, supports)


class QuantumTannerCode:
    """
    Attributes:
        complex (LeftRightComplex): The square complex.
        ca (LinearCode): Column code (length ``|A|``).
        cb (LinearCode): Row code (length ``|B|``).
        update_classes (tuple): ``(U0, U1)``, carriers of the ``hz`` rows.
        check_classes (tuple): ``(X0, X1)``, carriers of the ``hx`` rows; ``X0``
            shares rows with ``U0`` and columns with ``U1``.
        local (DualTensorCode): ``C_A (x) F^B + F^A (x) C_B`` with its coset table.
        hx (SparseBitMatrix): Checks for Z-type errors.
        hz (SparseBitMatrix): Z-type stabilizer generators.
        n (int): Number of qubits ``|Q|``.
        k (int): Number of logical qubits.
    """

    def __init__(self, complex_, ca, cb, update_classes=(V00, V11), check_classes=(V01, V10), local=None):
        if ca.length != complex_.n_a or cb.length != complex_.n_b:
            raise ValueError(
                f'component lengths ({ca.length}, {cb.length}) do not match |A|={complex_.n_a}, |B|={complex_.n_b}'
            )
        self.complex = complex_
        self.ca = ca
        self.cb = cb
        self.update_classes = tuple(update_classes)
        self.check_classes = tuple(check_classes)
        self.local = DualTensorCode(ca, cb) if local is None else local
        self.checks_per_vertex = self.local.syndrome_dim
        self.generators_per_vertex = ca.dimension * cb.dimension
        self.hz = _place(complex_, self.update_classes, kron(ca.gen, cb.gen))
        self.hx = _place(complex_, self.check_classes, kron(ca.par, cb.par))
        self.n = complex_.n_squares
        self._check_orthogonality()
        self.rank_hx = rank(self.hx.to_dense())
        self.rank_hz = rank(self.hz.to_dense())
        self.k = self.n - self.rank_hx - self.rank_hz
        self._hz_space = None
        logger.info(
            'quantum Tanner code on %r: n=%d k=%d, %d X-checks, %d Z-generators',
            complex_, self.n, self.k, self.hx.n_rows, self.hz.n_rows,
        )

    def _check_orthogonality(self):
        if self.hx.n_rows == 0 or self.hz.n_rows == 0:
            return
        if not (self.hx.to_dense() @ self.hz.to_dense().T).is_zero():
            raise ConstructionError('hx and hz do not commute; the local labeling is inconsistent')

    @property
    def dim_c0(self):
        """Dimension of the Tanner code ``ker hz``."""

        return self.n - self.rank_hz

    @property
    def dim_c1(self):
        """Dimension of the Tanner code ``ker hx``."""

        return self.n - self.rank_hx

    @property
    def order(self):
        return self.complex.group.order

    def check_row(self, class_index, vertex, local_check):
        return (class_index * self.order + vertex) * self.checks_per_vertex + local_check

    def local_syndrome(self, syndrome_bits, class_index, vertex):
        """
        The slice of a syndrome belonging to one check vertex, as an int.

        Args:
            syndrome_bits (np.ndarray): 0/1 array over the ``hx`` rows.
            class_index (int): 0 for ``X0``, 1 for ``X1``.
            vertex (int): Vertex in that class.
        """

        start = self.check_row(class_index, vertex, 0)
        chunk = syndrome_bits[start:start + self.checks_per_vertex]
        return int(sum(int(bit) << i for i, bit in enumerate(chunk)))

    def swapped(self):
        """
        The same code with the roles of the two sides exchanged.

        Its ``hx`` is this code's ``hz`` and vice versa, so decoding its Z-type
        errors decodes this code's X-type errors.
        """

        return QuantumTannerCode(
            self.complex, self.ca.dual(), self.cb.dual(),
            update_classes=self.check_classes, check_classes=self.update_classes,
        )

    def hz_space(self):
        if self._hz_space is None:
            self._hz_space = RowSpace(self.hz.to_dense()) if self.hz.n_rows else RowSpace(BitMatrix(0, self.n))
        return self._hz_space

    def is_stabilizer(self, e):
        return e in self.hz_space()

    def is_logical(self, e):
        """``e`` has zero syndrome but is not a product of Z generators."""

        return not (self.hx @ e) and not self.is_stabilizer(e)

    def to_dict(self):
        return {
            'n': self.n,
            'k': self.k,
            'group': self.complex.group.name,
            'gens_a': list(self.complex.gens_a.elements),
            'gens_b': list(self.complex.gens_b.elements),
            'code_a': self.ca.gen.to_bits().tolist(),
            'code_b': self.cb.gen.to_bits().tolist(),
            'update_classes': [CLASS_NAMES[c] for c in self.update_classes],
            'check_classes': [CLASS_NAMES[c] for c in self.check_classes],
            'hx_shape': list(self.hx.shape),
            'hz_shape': list(self.hz.shape),
        }

    def __repr__(self):
        return f'QuantumTannerCode(n={self.n}, k={self.k})'


def build_qtanner(complex_, ca, cb):
    """
    Builds the quantum Tanner code of a complex and a component pair.

    Args:
        complex_ (LeftRightComplex): The square complex.
        ca (LinearCode): ``C_A`` of length ``|A|``.
        cb (LinearCode): ``C_B`` of length ``|B|``.

    Returns:
        QuantumTannerCode: The code, with ``hx hz^T = 0`` verified.
    """

    return QuantumTannerCode(complex_, ca, cb)


def syndrome_z(q, e):
    """Syndrome ``hx e`` of a Z-type error."""

    if e.length != q.n:
        raise ValueError(f'error of length {e.length} for a code on {q.n} qubits')
    return q.hx @ e


def stabilizer_equivalent(q, e1, e2):
    """Whether ``e1 + e2`` is a product of Z-type generators."""

    return q.is_stabilizer(e1 ^ e2)


@dataclass(frozen=True)
class TheoremConditions:
    """
    Measured quantities behind the rate and distance guarantees.

    Attributes:
        rho (float): Rate of ``C_A``.
        distances (dict): Minimum distances of ``C_A, C_B`` and their duals.
        lambdas (tuple): Measured ``lambda`` of the two square graphs.
        n (int): Qubits.
        k (int): Logical qubits.
        rate_bound (float): ``(1 - 2 rho)^2 n``.
        rate_bound_holds (bool): ``k >= rate_bound``.
    """

    rho: float
    distances: dict
    lambdas: tuple
    n: int
    k: int
    rate_bound: float
    rate_bound_holds: bool

    def to_dict(self):
        return {
            'rho': self.rho,
            'distances': {key: (None if value == float('inf') else int(value)) for key, value in self.distances.items()},
            'lambdas': list(self.lambdas),
            'n': self.n,
            'k': self.k,
            'rate_bound': self.rate_bound,
            'rate_bound_holds': self.rate_bound_holds,
        }


def theorem_conditions(q):
    rho = q.ca.rate
    g0, g1 = square_graphs(q.complex)
    lambdas = (square_graph_spectrum(g0).lam, square_graph_spectrum(g1).lam)
    bound = (1 - 2 * rho) ** 2 * q.n
    return TheoremConditions(
        rho=rho,
        distances={
            'code_a': q.ca.min_dist,
            'code_b': q.cb.min_dist,
            'code_a_dual': q.ca.dual().min_dist,
            'code_b_dual': q.cb.dual().min_dist,
        },
        lambdas=lambdas,
        n=q.n,
        k=q.k,
        rate_bound=bound,
        rate_bound_holds=q.k >= bound - 1e-9,
    )


def error_from_support(q, support):
    return BitVector.from_support(q.n, support)
