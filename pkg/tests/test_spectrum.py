import math

import numpy as np
import pytest

from quantum_tanner.complex.generators import GeneratorSet
from quantum_tanner.complex.group import FiniteGroup, build_group
from quantum_tanner.complex.left_right import build_complex, square_graphs
from quantum_tanner.complex.spectrum import (
    cayley_adjacency,
    check_mixing,
    edges_between,
    spectral_lambda,
    square_graph_spectrum,
)


def test_spectrum_cycle_graph():
    z6 = FiniteGroup.cyclic(6)
    spectrum = spectral_lambda(cayley_adjacency(z6, GeneratorSet(z6, [1, 5])), name='C6')
    assert spectrum.degree == 2
    assert spectrum.lam == pytest.approx(1.0)
    assert spectrum.ramanujan


def test_spectrum_complete_bipartite_cayley_graph():
    z6 = FiniteGroup.cyclic(6)
    spectrum = spectral_lambda(cayley_adjacency(z6, GeneratorSet(z6, [1, 3, 5])))
    # K_{3,3}: eigenvalues +-3 and 0
    assert spectrum.lam == pytest.approx(0.0)


def test_spectrum_rejects_irregular_graph():
    with pytest.raises(ValueError):
        spectral_lambda(np.array([[0, 1, 1], [1, 0, 0], [1, 0, 0]]))


def test_spectrum_reference_square_graphs(z6_complex):
    for graph in square_graphs(z6_complex):
        spectrum = square_graph_spectrum(graph)
        assert spectrum.degree == 9
        assert spectrum.lam <= 4 * z6_complex.delta + 1e-6
        assert spectrum.to_dict()['name'] == graph.name


@pytest.mark.parametrize('spec, gens_a, gens_b', [
    ('Z6', (1, 3, 5), (1, 3, 5)),
    ('D4', (1, 3, 4), (4, 5, 7)),
    ('Z10', (1, 5, 9), (1, 5, 9)),
])
def test_spectrum_square_graph_bound_when_ramanujan(spec, gens_a, gens_b):
    group = build_group(spec)
    x = build_complex(group, gens_a, gens_b)
    cayley = [spectral_lambda(cayley_adjacency(group, gens)) for gens in (x.gens_a, x.gens_b)]
    if not all(s.ramanujan for s in cayley):
        pytest.skip('Cayley graphs are not Ramanujan')
    for graph in square_graphs(x):
        assert square_graph_spectrum(graph).lam <= 4 * x.delta + 1e-6


def test_spectrum_mixing_on_random_sets(z6_complex, rng):
    for graph in square_graphs(z6_complex):
        lam = square_graph_spectrum(graph).lam
        for _ in range(200):
            s = rng.choice(6, size=int(rng.integers(0, 7)), replace=False)
            t = rng.choice(6, size=int(rng.integers(0, 7)), replace=False)
            assert check_mixing(graph, s, t, lam=lam)


def test_spectrum_edges_between_counts_multiplicity(z6_complex):
    g0, _ = square_graphs(z6_complex)
    assert edges_between(g0, range(6), range(6)) == 54
    assert edges_between(g0, [0], range(6)) == 9
    assert edges_between(g0, [], range(6)) == 0


def test_spectrum_ramanujan_bound_value():
    z6 = FiniteGroup.cyclic(6)
    spectrum = spectral_lambda(cayley_adjacency(z6, GeneratorSet(z6, [1, 3, 5])))
    assert spectrum.ramanujan == (spectrum.lam <= 2 * math.sqrt(2) + 1e-6)


def test_spectrum_two_component_cayley_graph():
    z6 = FiniteGroup.cyclic(6)
    adjacency = cayley_adjacency(z6, GeneratorSet(z6, [1, 3, 5]))
    doubled = np.kron(np.eye(2, dtype=np.int64), adjacency)
    spectrum = spectral_lambda(doubled)
    assert spectrum.lam == pytest.approx(3.0)
    assert not spectrum.ramanujan


def test_spectrum_disconnected_reference_square_graph(z6_complex):
    g0, _ = square_graphs(z6_complex)
    spectrum = square_graph_spectrum(g0)
    assert spectrum.lam == pytest.approx(9.0)
    assert not check_mixing(g0, [1, 3], [1, 5, 4], lam=0.0)
    assert check_mixing(g0, [1, 3], [1, 5, 4], lam=spectrum.lam)


def test_spectrum_connected_square_graphs():
    x = build_complex(build_group('Z7'), (1, 6), (1, 6))
    for graph in square_graphs(x):
        spectrum = square_graph_spectrum(graph)
        assert spectrum.degree == 4
        assert spectrum.lam == pytest.approx(2 + 2 * math.cos(2 * math.pi / 7))
        assert spectrum.lam < spectrum.degree
        assert spectrum.lam <= 4 * x.delta
        assert spectrum.ramanujan
