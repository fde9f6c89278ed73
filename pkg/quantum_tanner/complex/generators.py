"""
Symmetric generator sets acting on one side of a group.
"""

from __future__ import annotations

from collections import deque

import regex

LEFT = 'left'
RIGHT = 'right'

_INT_RE = regex.compile(r'-?\d+')


class GeneratorSet:
    """
    An ordered, inverse-closed set of non-identity group elements.

    The order of ``elements`` fixes the local coordinate numbering: the
    ``i``-th element is local index ``i``.

    Attributes:
        group (FiniteGroup): The ambient group.
        elements (tuple): Element indices.
        side (str): ``'left'`` (acts as ``g -> a g``) or ``'right'`` (``g -> g b``).
    """

    def __init__(self, group, elements, side=LEFT):
        if side not in (LEFT, RIGHT):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        elements = tuple(int(x) for x in elements)
        if not elements:
            raise ValueError('generator set cannot be empty')
        for x in elements:
            if not 0 <= x < group.order:
                raise ValueError(f'generator {x} is not an element of {group.name}')
        if len(set(elements)) != len(elements):
            raise ValueError(f'generator set {elements} has duplicates')
        if group.identity in elements:
            raise ValueError(f'generator set {elements} contains the identity')
        missing = [x for x in elements if group.inverse(x) not in elements]
        if missing:
            raise ValueError(f'generator set {elements} is not symmetric: inverses of {missing} are missing')
        self.group = group
        self.elements = elements
        self.side = side
        if not self.is_connected():
            raise ValueError(f'Cayley graph of {group.name} with {side} generators {elements} is disconnected')

    @classmethod
    def parse(cls, group, text, side=LEFT):
        """
        Builds a set from text such as ``"1,3,5"`` or ``"[1 3 5]"``.
        """

        return cls(group, [int(x) for x in _INT_RE.findall(text)], side=side)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def index(self, element):
        return self.elements.index(element)

    def act(self, element, x):
        """Applies generator ``element`` to ``x`` on this set's side."""

        if self.side == LEFT:
            return int(self.group.mul[element, x])
        return int(self.group.mul[x, element])

    def neighbors(self, x):
        return [self.act(s, x) for s in self.elements]

    def is_connected(self):
        seen = {self.group.identity}
        queue = deque([self.group.identity])
        while queue:
            x = queue.popleft()
            for y in self.neighbors(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return len(seen) == self.group.order

    def __repr__(self):
        return f'GeneratorSet({list(self.elements)}, side={self.side!r})'
