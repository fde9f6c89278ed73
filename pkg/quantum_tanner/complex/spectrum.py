"""
Spectral diagnostics: second eigenvalue, Ramanujan flag and the expander mixing bound.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

logger = logging.getLogger(__name__)

EIGEN_TOLERANCE = 1e-8
RAMANUJAN_SLACK = 1e-6


@dataclass(frozen=True)
class GraphSpectrum:
    """
    Attributes:
        name (str): Graph identifier.
        degree (int): Regular degree.
        lam (float): Largest absolute eigenvalue once one ``+degree`` and at most
            one ``-degree`` are removed; ``degree`` for a disconnected graph.
        ramanujan (bool): ``lam <= 2 sqrt(degree - 1)``, up to ``RAMANUJAN_SLACK``.
    """

    name: str
    degree: int
    lam: float
    ramanujan: bool

    def to_dict(self):
        return {'name': self.name, 'degree': self.degree, 'lambda': self.lam, 'ramanujan': self.ramanujan}


def cayley_adjacency(group, gens):
    """
    Adjacency of the one-sided Cayley graph ``Cay(G, S)``.
    """

    n = group.order
    adj = np.zeros((n, n), dtype=np.int64)
    g = np.arange(n)
    for s in gens:
        targets = np.array([gens.act(s, int(x)) for x in g], dtype=np.int64)
        np.add.at(adj, (g, targets), 1)
    return adj


def spectral_lambda(adjacency, degree=None, name='graph'):
    """
    Measures ``lambda(G)`` with a dense symmetric eigensolve.

    Args:
        adjacency (np.ndarray): Symmetric adjacency (multiplicities allowed).
        degree (int, optional): Regular degree; read off row sums when omitted.
        name (str): Label carried into the result.

    Returns:
        GraphSpectrum: The measurement.

    Examples:
        >>> from .group import build_group
        >>> from .generators import GeneratorSet
        >>> z6 = build_group('Z6')
        >>> spectral_lambda(cayley_adjacency(z6, GeneratorSet(z6, [1, 5]))).lam
        1.0
    """

    adjacency = np.asarray(adjacency, dtype=np.float64)
    if degree is None:
        sums = adjacency.sum(axis=1)
        if not np.allclose(sums, sums[0]):
            raise ValueError(f'graph {name} is not regular')
        degree = int(round(sums[0]))
    eigenvalues = np.linalg.eigvalsh(adjacency)
    tol = EIGEN_TOLERANCE * max(1, degree)
    # Drop one copy of +degree, and one of -degree when present (bipartite).
    # Further copies mean extra components and stay, so lambda becomes degree.
    keep = np.ones(eigenvalues.size, dtype=bool)
    if eigenvalues.size and abs(eigenvalues[-1] - degree) <= tol:
        keep[-1] = False
    if eigenvalues.size > 1 and abs(eigenvalues[0] + degree) <= tol:
        keep[0] = False
    rest = np.abs(eigenvalues[keep])
    lam = float(rest.max()) if rest.size else 0.0
    lam = float(np.round(lam, 10))
    ramanujan = lam <= 2 * math.sqrt(max(degree - 1, 0)) + RAMANUJAN_SLACK
    if not ramanujan:
        logger.warning('%s: lambda %.4f exceeds the Ramanujan bound for degree %d', name, lam, degree)
    return GraphSpectrum(name=name, degree=int(degree), lam=lam, ramanujan=bool(ramanujan))


def square_graph_spectrum(graph):
    return spectral_lambda(graph.adjacency(), degree=graph.degree, name=graph.name)


def edges_between(graph, s, t):
    """Number of edges (with multiplicity) from left set ``s`` to right set ``t``."""

    in_s = np.zeros(graph.side_size, dtype=bool)
    in_t = np.zeros(graph.side_size, dtype=bool)
    in_s[list(s)] = True
    in_t[list(t)] = True
    return int(np.count_nonzero(in_s[graph.edges[:, 0]] & in_t[graph.edges[:, 1]]))


def check_mixing(graph, s, t, lam=None):
    """
    Expander mixing bound ``|E(S, T)| <= (d / n) |S| |T| + lambda sqrt(|S| |T|)``.

    Args:
        graph (SquareGraph): Bipartite graph, ``n`` vertices per side.
        s (iterable): Left-side vertices.
        t (iterable): Right-side vertices.
        lam (float, optional): Precomputed ``lambda``.

    Returns:
        bool: Whether the bound holds.
    """

    s, t = set(s), set(t)
    if lam is None:
        lam = square_graph_spectrum(graph).lam
    lhs = edges_between(graph, s, t)
    rhs = graph.degree / graph.side_size * len(s) * len(t) + lam * math.sqrt(len(s) * len(t))
    return lhs <= rhs + RAMANUJAN_SLACK
