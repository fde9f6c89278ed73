"""
Finite groups as 0-based multiplication tables.

Elements are the integers ``0 .. order - 1``. Cyclic and dihedral groups, their
direct products and arbitrary table files are supported, so abelian and
non-abelian groups go through the same code.
"""

from __future__ import annotations

import logging

import numpy as np
import regex

from ..utils.string_utils import format_group_table, parse_group_table, read_text, write_text

logger = logging.getLogger(__name__)

ASSOCIATIVITY_EXHAUSTIVE_ORDER = 64
ASSOCIATIVITY_SAMPLES = 20000

_CYCLIC_RE = regex.compile(r'(?:cyclic\((\d+)\)|[CZ](\d+))', regex.IGNORECASE)
_DIHEDRAL_RE = regex.compile(r'(?:dihedral\((\d+)\)|D(\d+))', regex.IGNORECASE)
_TABLE_RE = regex.compile(r'table:(.+)')


class FiniteGroup:
    """
    A finite group given by its multiplication table.

    Attributes:
        name (str): Human-readable spec, e.g. ``"C6"`` or ``"D3xC2"``.
        order (int): ``|G|``.
        mul (np.ndarray): ``int64`` table, ``mul[g, h]`` is ``g * h``.
        inv (np.ndarray): ``int64`` inverse table.
        identity (int): Index of the identity element.
    """

    def __init__(self, mul_table, name='G'):
        mul = np.asarray(mul_table, dtype=np.int64)
        _validate_table(mul)
        self.name = name
        self.order = int(mul.shape[0])
        self.mul = mul
        self.identity = _find_identity(mul)
        self.inv = np.argmax(mul == self.identity, axis=1).astype(np.int64)
        self._is_abelian = None

    @classmethod
    def cyclic(cls, n):
        """
        The cyclic group ``Z_n`` written additively.

        Examples:
            >>> FiniteGroup.cyclic(2).mul.tolist()
            [[0, 1], [1, 0]]
        """

        if n <= 0:
            raise ValueError(f'cyclic group order must be positive, got {n}')
        idx = np.arange(n, dtype=np.int64)
        return cls((idx[:, None] + idx[None, :]) % n, name=f'C{n}')

    @classmethod
    def dihedral(cls, n):
        """
        The dihedral group of order ``2n``; element ``f * n + k`` is ``r^k s^f``.
        """

        if n <= 0:
            raise ValueError(f'dihedral group parameter must be positive, got {n}')
        k = np.arange(2 * n, dtype=np.int64) % n
        f = np.arange(2 * n, dtype=np.int64) // n
        # r^k1 s^f1 r^k2 s^f2 = r^(k1 + (-1)^f1 k2) s^(f1 + f2)
        sign = np.where(f == 0, 1, -1)
        rot = (k[:, None] + sign[:, None] * k[None, :]) % n
        flip = (f[:, None] + f[None, :]) % 2
        return cls(flip * n + rot, name=f'D{n}')

    @classmethod
    def direct_product(cls, g1, g2):
        """
        ``G1 x G2`` with element ``(x, y)`` packed as ``x * |G2| + y``.
        """

        x1 = np.arange(g1.order * g2.order) // g2.order
        y1 = np.arange(g1.order * g2.order) % g2.order
        table = g1.mul[x1[:, None], x1[None, :]] * g2.order + g2.mul[y1[:, None], y1[None, :]]
        return cls(table, name=f'{g1.name}x{g2.name}')

    @classmethod
    def read(cls, path):
        return cls(parse_group_table(read_text(path)), name=f'table:{path}')

    def write(self, path):
        write_text(path, format_group_table(self.mul.tolist()))

    def elements(self):
        return range(self.order)

    def multiply(self, *elements):
        out = self.identity
        for x in elements:
            out = int(self.mul[out, x])
        return out

    def inverse(self, x):
        return int(self.inv[x])

    @property
    def is_abelian(self):
        if self._is_abelian is None:
            self._is_abelian = bool(np.array_equal(self.mul, self.mul.T))
        return self._is_abelian

    def __repr__(self):
        return f'FiniteGroup({self.name}, order={self.order})'


def _validate_table(mul):
    if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
        raise ValueError(f'multiplication table must be a non-empty square, got shape {mul.shape}')
    n = mul.shape[0]
    if mul.min() < 0 or mul.max() >= n:
        raise ValueError(f'multiplication table entry out of range [0, {n - 1}]')
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(mul[i]), full):
            raise ValueError(f'multiplication table row {i} repeats an element (not a Latin square)')
        if not np.array_equal(np.sort(mul[:, i]), full):
            raise ValueError(f'multiplication table column {i} repeats an element (not a Latin square)')
    if n <= ASSOCIATIVITY_EXHAUSTIVE_ORDER:
        if not np.array_equal(mul[mul, :], mul[:, mul]):
            raise ValueError('multiplication table is not associative')
    else:
        rng = np.random.default_rng(n)
        a, b, c = rng.integers(0, n, size=(3, ASSOCIATIVITY_SAMPLES))
        if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
            raise ValueError('multiplication table is not associative')
        logger.debug('associativity of an order-%d table spot-checked on %d triples', n, ASSOCIATIVITY_SAMPLES)


def _find_identity(mul):
    full = np.arange(mul.shape[0])
    for e in range(mul.shape[0]):
        if np.array_equal(mul[e], full) and np.array_equal(mul[:, e], full):
            return e
    raise ValueError('multiplication table has no identity element')


def _factor(part):
    m = _CYCLIC_RE.fullmatch(part)
    if m:
        return FiniteGroup.cyclic(int(m.group(1) or m.group(2)))
    m = _DIHEDRAL_RE.fullmatch(part)
    if m:
        return FiniteGroup.dihedral(int(m.group(1) or m.group(2)))
    raise ValueError(f'unrecognized group factor {part!r}')


def build_group(spec):
    """
    Builds a group from a textual spec.

    Accepted forms: ``cyclic(n)``, ``Cn``, ``Zn``, ``dihedral(n)``, ``Dn``,
    products of those joined by ``x`` and ``table:<path>``.

    Args:
        spec (str): The spec.

    Returns:
        FiniteGroup: The validated group.

    Examples:
        >>> build_group('Z6').order
        6
        >>> build_group('D3 x C2').is_abelian
        False
    """

    if spec is None or not str(spec).strip():
        raise ValueError('group spec cannot be empty')
    text = str(spec).strip()
    m = _TABLE_RE.fullmatch(text)
    if m:
        return FiniteGroup.read(m.group(1).strip())
    parts = [p for p in regex.split(r'\s*[xX×]\s*', regex.sub(r'\s+', ' ', text)) if p]
    group = _factor(parts[0].strip())
    for part in parts[1:]:
        group = FiniteGroup.direct_product(group, _factor(part.strip()))
    return group
