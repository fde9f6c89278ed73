import numpy as np
import pytest

from quantum_tanner.complex.generators import LEFT, RIGHT, GeneratorSet
from quantum_tanner.complex.group import FiniteGroup, build_group


@pytest.mark.parametrize('spec, order, abelian', [
    ('Z6', 6, True),
    ('C5', 5, True),
    ('cyclic(8)', 8, True),
    ('D3', 6, False),
    ('dihedral(4)', 8, False),
    ('Z2 x Z3', 6, True),
    ('D3xC2', 12, False),
])
def test_group_build_group_specs(spec, order, abelian):
    group = build_group(spec)
    assert group.order == order
    assert group.is_abelian == abelian


@pytest.mark.parametrize('spec', [
    '',
    'Q8',
    'Z0',
])
def test_group_build_group_rejects(spec):
    with pytest.raises(ValueError):
        build_group(spec)


def test_group_cyclic_table():
    z6 = FiniteGroup.cyclic(6)
    assert z6.identity == 0
    assert z6.multiply(4, 5) == 3
    assert z6.inverse(1) == 5


def test_group_dihedral_relations():
    d4 = FiniteGroup.dihedral(4)
    r, s = 1, 4
    assert d4.multiply(r, r, r, r) == d4.identity
    assert d4.multiply(s, s) == d4.identity
    # s r s = r^-1
    assert d4.multiply(s, r, s) == d4.inverse(r)


def test_group_inverse_table_is_consistent():
    group = build_group('D3 x C2')
    g = np.arange(group.order)
    assert np.all(group.mul[g, group.inv] == group.identity)


def test_group_table_file_roundtrip(tmp_path):
    group = FiniteGroup.dihedral(3)
    group.write(tmp_path / 'd3.txt')
    loaded = build_group(f'table:{tmp_path / "d3.txt"}')
    assert np.array_equal(loaded.mul, group.mul)


@pytest.mark.parametrize('table', [
    [[0, 1], [1, 1]],
    [[0, 1, 2], [1, 2, 0], [2, 1, 0]],
    [[1, 0], [0, 2]],
])
def test_group_rejects_invalid_tables(table):
    with pytest.raises(ValueError):
        FiniteGroup(table)


def test_group_generator_set_parse_and_act():
    z6 = FiniteGroup.cyclic(6)
    gens = GeneratorSet.parse(z6, '[1, 3, 5]', side=RIGHT)
    assert gens.elements == (1, 3, 5)
    assert gens.act(3, 4) == 1
    assert sorted(gens.neighbors(0)) == [1, 3, 5]


def test_group_left_and_right_actions_differ_on_non_abelian():
    d3 = FiniteGroup.dihedral(3)
    left = GeneratorSet(d3, [3, 4, 5], side=LEFT)
    right = GeneratorSet(d3, [3, 4, 5], side=RIGHT)
    assert any(left.act(3, x) != right.act(3, x) for x in d3.elements())


@pytest.mark.parametrize('elements', [
    [],
    [0, 1, 5],
    [1, 2],
    [1, 1, 5],
    [3],
    [7],
])
def test_group_generator_set_rejects(elements):
    with pytest.raises(ValueError):
        GeneratorSet(FiniteGroup.cyclic(6), elements)
