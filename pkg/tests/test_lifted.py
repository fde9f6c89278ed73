import numpy as np
import pytest

from quantum_tanner.codes.linear_code import parity_check_code, repetition_code
from quantum_tanner.complex.group import build_group
from quantum_tanner.gf2.bit_matrix import BitMatrix, rank
from quantum_tanner.gf2.bit_vector import BitVector
from quantum_tanner.lifted.group_algebra import GroupAlgebraMatrix
from quantum_tanner.lifted.lifted_product import (
    LpError,
    ab_to_squares,
    build_lp,
    lp_decode,
    lp_decode_error,
    lp_stabilizer_equivalent,
    lp_syndrome,
    project_syndrome,
    pseudo_right_inverse,
    qtanner_from_lp,
    simplify_error,
    squares_to_ab,
)
from quantum_tanner.qtanner.code import build_qtanner, syndrome_z
from quantum_tanner.qtanner.distance import correctable_weight
from quantum_tanner.utils.errors import RankDeficiencyError

GENS = (1, 3, 5)


@pytest.fixture(scope='module')
def reference_lp():
    """Reduces to the quantum Tanner code of ``rep[3]`` and ``parity[3]``."""

    return build_lp(build_group('Z6'), [[1, 1, 1]], [[1, 1, 1]], GENS, GENS)


@pytest.fixture(scope='module')
def wide_lp():
    return build_lp(build_group('Z6'), parity_check_code(3).par, repetition_code(3).par, GENS, GENS)


def _same_row_space(left, right):
    stacked = rank(BitMatrix.vstack([left, right]))
    return stacked == rank(left) == rank(right)


def test_group_algebra_flatten_is_multiplicative(rng):
    d3 = build_group('D3')
    for _ in range(20):
        m = GroupAlgebraMatrix.random(d3, 2, 3, rng)
        n = GroupAlgebraMatrix.random(d3, 3, 2, rng)
        assert (m @ n).flatten() == m.flatten() @ n.flatten()
        assert m.T.flatten() == m.flatten().T
        other = GroupAlgebraMatrix.random(d3, 2, 3, rng)
        assert (m + other).flatten() == m.flatten() + other.flatten()


def test_group_algebra_scalar_embedding():
    z6 = build_group('Z6')
    bits = BitMatrix.from_bits([[1, 0, 1], [0, 1, 1]])
    m = GroupAlgebraMatrix.scalar(z6, bits)
    assert m.is_scalar()
    assert m.to_scalar() == bits
    assert m.T.to_scalar() == bits.T
    with pytest.raises(ValueError):
        GroupAlgebraMatrix.diagonal(z6, [1, 2]).to_scalar()


def test_group_algebra_diagonal_transpose_inverts():
    d3 = build_group('D3')
    diag = GroupAlgebraMatrix.diagonal(d3, [1, 3])
    product = diag @ diag.T
    assert product == GroupAlgebraMatrix.scalar(d3, BitMatrix.identity(2))


def test_group_algebra_rejects_bad_shapes(rng):
    z6 = build_group('Z6')
    with pytest.raises(ValueError):
        GroupAlgebraMatrix(z6, np.zeros((2, 2, 5)))
    with pytest.raises(ValueError):
        GroupAlgebraMatrix.random(z6, 2, 3, rng) @ GroupAlgebraMatrix.random(z6, 2, 3, rng)


@pytest.mark.parametrize('ha, hb', [
    ([[1, 1, 1]], [[1, 1, 1]]),
    ([[1, 1, 1]], [[1, 1, 0], [0, 1, 1]]),
    ([[1, 1, 0], [0, 1, 1]], [[1, 1, 0], [0, 1, 1]]),
    ([[1, 0, 1], [0, 1, 1]], [[1, 1, 1]]),
])
@pytest.mark.parametrize('spec, gens_a, gens_b', [
    ('Z6', GENS, GENS),
    ('D3', (3, 4, 5), (3, 4, 5)),
])
def test_lifted_generators_commute(ha, hb, spec, gens_a, gens_b):
    lp = build_lp(build_group(spec), ha, hb, gens_a, gens_b)
    assert (lp.hx.to_dense() @ lp.hz.to_dense().T).is_zero()
    assert lp.max_generator_weight() <= lp.weight_bound()
    order = lp.group.order
    assert lp.n == order * (9 + 4 * lp.m_a * lp.m_b)
    assert lp.hx.n_rows == order * 3 * 2 * lp.m_b
    assert lp.hz.n_rows == order * 2 * lp.m_a * 3


def test_lifted_rejects_rank_deficient_checks():
    with pytest.raises(RankDeficiencyError):
        build_lp(build_group('Z6'), [[1, 1, 0], [1, 1, 0]], [[1, 1, 1]], GENS, GENS)


def test_lifted_rejects_mismatched_columns():
    with pytest.raises(ValueError):
        build_lp(build_group('Z6'), [[1, 1]], [[1, 1, 1]], GENS, GENS)


def test_lifted_syndrome_matches_flattened_checks(wide_lp, rng):
    lp = wide_lp
    for _ in range(50):
        e = LpError.from_flat(lp, BitVector.random(lp.n, rng))
        syndrome = lp_syndrome(lp, e)
        assert syndrome.t_bits() == lp.hx @ e.flatten()
        assert syndrome.s_bits() == lp.hz @ e.flatten()
        assert LpError.from_flat(lp, e.flatten()) == e


def test_lifted_syndrome_of_zero_and_of_generators(wide_lp):
    lp = wide_lp
    zero = lp_syndrome(lp, LpError.zeros(lp))
    assert not zero.t_bits() and not zero.s_bits()
    for support in lp.hz.supports[:20]:
        e = LpError.from_flat(lp, BitVector.from_support(lp.n, support))
        assert not lp_syndrome(lp, e).t_bits()


def test_lifted_from_flat_rejects_wrong_length(wide_lp):
    with pytest.raises(ValueError):
        LpError.from_flat(wide_lp, BitVector.zeros(wide_lp.n - 1))


def test_lifted_reduction_matches_direct_build(reference_lp, z6_complex):
    q = qtanner_from_lp(reference_lp)
    direct = build_qtanner(z6_complex, repetition_code(3), parity_check_code(3))
    assert q.n == direct.n
    assert _same_row_space(q.hx.to_dense(), direct.hx.to_dense())
    assert _same_row_space(q.hz.to_dense(), direct.hz.to_dense())
    assert reference_lp.qtanner is reference_lp.qtanner


def test_lifted_squares_map_is_a_bijection(reference_lp):
    lp = reference_lp
    q = lp.qtanner
    seen = set()
    for i in range(q.n):
        x = GroupAlgebraMatrix.from_vector(lp.group, 3, 3, np.eye(q.n, dtype=np.uint8)[i])
        squares = ab_to_squares(lp, q, x)
        assert squares.weight() == 1
        seen.add(int(squares.support()[0]))
        assert squares_to_ab(lp, q, squares) == x
    assert len(seen) == q.n


@pytest.mark.parametrize('which', ['reference', 'wide'])
def test_lifted_projection_is_qtanner_syndrome(which, reference_lp, wide_lp, rng):
    lp = reference_lp if which == 'reference' else wide_lp
    q = lp.qtanner
    for _ in range(50):
        e = LpError.random(lp, rng, weight=int(rng.integers(1, 8)), blocks=('ab', '00', '11'))
        projected = project_syndrome(lp, q, lp_syndrome(lp, e))
        assert projected == syndrome_z(q, ab_to_squares(lp, q, e.e_ab))


def test_lifted_simplify_error(wide_lp, rng):
    lp = wide_lp
    delta = max(lp.delta_a, lp.delta_b)
    for _ in range(1000):
        e = LpError.random(lp, rng, weight=int(rng.integers(1, 10)))
        simplified = simplify_error(lp, e)
        assert simplified.e_01.is_zero()
        assert simplified.e_10.is_zero()
        assert simplified.weight <= e.weight + 4 * delta ** 2 * (e.e_01.weight + e.e_10.weight)
        assert lp_stabilizer_equivalent(lp, e, simplified)


def test_lifted_simplify_fixed_point(wide_lp, rng):
    e = LpError.random(wide_lp, rng, weight=5, blocks=('ab', '00', '11'))
    assert simplify_error(wide_lp, e) is e


def test_lifted_simplify_single_bit(wide_lp):
    lp = wide_lp
    for index in lp.block_range('10')[:12]:
        e = LpError.from_flat(lp, BitVector.from_support(lp.n, [int(index)]))
        simplified = simplify_error(lp, e)
        assert simplified.weight <= 1 + 4 * 3 ** 2
        assert lp_stabilizer_equivalent(lp, e, simplified)


def test_lifted_decode_zero_syndrome(reference_lp):
    outcome = lp_decode_error(reference_lp, LpError.zeros(reference_lp))
    assert outcome.converged
    assert outcome.estimate.weight == 0


@pytest.mark.parametrize('block', ['ab', '00', '11'])
def test_lifted_decode_weight_one_errors(reference_lp, block):
    lp = reference_lp
    for index in lp.block_range(block):
        e = LpError.from_flat(lp, BitVector.from_support(lp.n, [int(index)]))
        syndrome = lp_syndrome(lp, e)
        outcome = lp_decode(lp, syndrome)
        assert outcome.converged
        assert outcome.estimate.e_01.is_zero() and outcome.estimate.e_10.is_zero()
        assert lp_syndrome(lp, outcome.estimate).t_bits() == syndrome.t_bits()
        assert lp_stabilizer_equivalent(lp, e, outcome.estimate)


@pytest.mark.slow
def test_lifted_decode_converged_runs_reproduce_syndrome(wide_lp, rng):
    lp = wide_lp
    t = correctable_weight(lp.qtanner, max_weight=4)
    converged = 0
    for _ in range(1000):
        e = LpError.random(lp, rng, weight=int(rng.integers(1, 4)), blocks=('ab', '00', '11'))
        syndrome = lp_syndrome(lp, e)
        outcome = lp_decode(lp, syndrome)
        if outcome.converged:
            converged += 1
            assert lp_syndrome(lp, outcome.estimate).t_bits() == syndrome.t_bits()
            if e.weight <= t:
                assert lp_stabilizer_equivalent(lp, e, outcome.estimate)
        assert set(outcome.to_dict()) == {'converged', 'estimate', 'inner'}
    assert converged >= 900


def test_pseudo_right_inverse_identity():
    assert pseudo_right_inverse(BitMatrix.identity(3)) == BitMatrix.identity(3)


def test_pseudo_right_inverse_multiplies_back(rng):
    h = BitMatrix.from_bits([[1, 1, 0], [0, 1, 1]])
    assert pseudo_right_inverse(h) @ h.T == BitMatrix.identity(2)
    checked = 0
    while checked < 100:
        m, delta = int(rng.integers(1, 4)), int(rng.integers(3, 6))
        h = BitMatrix.random(m, delta, rng)
        if rank(h) < m:
            continue
        assert pseudo_right_inverse(h) @ h.T == BitMatrix.identity(m)
        checked += 1


def test_pseudo_right_inverse_rejects_rank_deficiency():
    with pytest.raises(RankDeficiencyError):
        pseudo_right_inverse(BitMatrix.from_bits([[1, 1], [1, 1]]))
