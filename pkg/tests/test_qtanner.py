import numpy as np
import pytest

from quantum_tanner.codes.linear_code import parity_check_code, random_code, repetition_code
from quantum_tanner.complex.group import build_group
from quantum_tanner.complex.left_right import V00, V01, V10, V11, build_complex
from quantum_tanner.gf2.bit_vector import BitVector
from quantum_tanner.gf2.sparse import read_sparse, write_sparse
from quantum_tanner.qtanner.code import (
    build_qtanner,
    error_from_support,
    stabilizer_equivalent,
    syndrome_z,
    theorem_conditions,
)
from quantum_tanner.qtanner.distance import correctable_weight, estimate_distance, exhaustive_logical_search


def _textbook_rank(bits):
    m = np.array(bits, dtype=np.uint8) % 2
    r = 0
    for c in range(m.shape[1]):
        rows = [i for i in range(r, m.shape[0]) if m[i, c]]
        if not rows:
            continue
        m[[r, rows[0]]] = m[[rows[0], r]]
        for i in range(m.shape[0]):
            if i != r and m[i, c]:
                m[i] ^= m[r]
        r += 1
    return r


def _instances():
    rng = np.random.default_rng(11)
    out = []
    for spec, gens_a, gens_b in [
        ('Z6', (1, 3, 5), (1, 3, 5)),
        ('D3', (3, 4, 5), (3, 4, 5)),
        ('D4', (1, 3, 4), (4, 5, 7)),
        ('Z8', (1, 4, 7), (1, 4, 7)),
        ('Z10', (1, 5, 9), (1, 5, 9)),
    ]:
        x = build_complex(build_group(spec), gens_a, gens_b)
        out.append(build_qtanner(x, repetition_code(3), parity_check_code(3)))
        out.append(build_qtanner(x, parity_check_code(3), repetition_code(3)))
    x4 = build_complex(build_group('Z8'), (1, 3, 5, 7), (1, 3, 5, 7))
    for _ in range(2):
        out.append(build_qtanner(x4, random_code(4, 2, rng), random_code(4, 2, rng)))
    return out


INSTANCES = _instances()


@pytest.mark.parametrize('q', INSTANCES)
def test_qtanner_css_orthogonality(q):
    assert (q.hx.to_dense() @ q.hz.to_dense().T).is_zero()


@pytest.mark.parametrize('q', INSTANCES)
def test_qtanner_dimension_formula(q):
    rank_hx = _textbook_rank(q.hx.to_dense().to_bits())
    rank_hz = _textbook_rank(q.hz.to_dense().to_bits())
    assert q.k == q.n - rank_hx - rank_hz
    assert q.k == q.dim_c0 + q.dim_c1 - q.n
    rho = q.ca.rate
    if q.ca.dimension + q.cb.dimension == q.ca.length:
        assert q.k >= (1 - 2 * rho) ** 2 * q.n - 1e-9


def test_qtanner_reference_shapes(reference_code):
    q = reference_code
    assert q.n == 54
    assert q.hz.shape == (24, 54)
    assert q.hx.shape == (24, 54)
    assert q.checks_per_vertex == 2
    assert q.update_classes == (V00, V11)
    assert q.check_classes == (V01, V10)
    assert q.hz.row_weights() == [6] * 24
    assert q.hx.row_weights() == [6] * 24


def test_qtanner_generators_live_in_views(reference_code):
    q = reference_code
    views = q.complex.views
    for r, support in enumerate(q.hz.supports):
        cls = q.update_classes[r // (q.order * q.generators_per_vertex)]
        v = (r // q.generators_per_vertex) % q.order
        assert set(support.tolist()) <= set(views[cls, v].tolist())


def test_qtanner_check_row_layout(reference_code):
    q = reference_code
    e = BitVector.from_support(q.n, [int(q.complex.views[V10, 4, 0])])
    s = syndrome_z(q, e).to_bits()
    assert q.local_syndrome(s, 1, 4) != 0
    assert q.check_row(1, 4, 0) == (6 + 4) * 2


def test_qtanner_swapped_exchanges_roles(reference_code):
    q = reference_code
    swapped = q.swapped()
    assert swapped.update_classes == (V01, V10)
    assert swapped.check_classes == (V00, V11)
    assert swapped.hx == q.hz
    assert swapped.hz == q.hx
    assert swapped.k == q.k


def test_qtanner_stabilizers_have_zero_syndrome(reference_code, rng):
    q = reference_code
    hz = q.hz.to_dense()
    for _ in range(1000):
        coefficients = BitVector.random(hz.n_rows, rng)
        stabilizer = hz.T @ coefficients
        assert not syndrome_z(q, stabilizer)
        assert q.is_stabilizer(stabilizer)
        assert stabilizer_equivalent(q, stabilizer, BitVector.zeros(q.n))


def test_qtanner_single_errors_are_detected(reference_code):
    q = reference_code
    for j in range(q.n):
        assert syndrome_z(q, error_from_support(q, [j]))


def test_qtanner_syndrome_rejects_wrong_length(reference_code):
    with pytest.raises(ValueError):
        syndrome_z(reference_code, BitVector.zeros(10))


def test_qtanner_reference_distance(reference_code):
    q = reference_code
    verified, witness = exhaustive_logical_search(q, 3)
    assert verified == 2
    assert witness.weight() == 3
    assert q.is_logical(witness)
    assert correctable_weight(q) == 1


def test_qtanner_estimate_distance(reference_code, rng):
    estimate = estimate_distance(reference_code, budget=5, rng=rng)
    assert estimate.upper == 3
    assert estimate.lower_witnessed == 2
    assert estimate.exact
    assert estimate.to_dict()['upper'] == 3


def test_qtanner_theorem_conditions(reference_code):
    conditions = theorem_conditions(reference_code)
    assert conditions.rho == pytest.approx(1 / 3)
    assert conditions.distances['code_a'] == 3
    assert conditions.distances['code_b'] == 2
    assert conditions.rate_bound == pytest.approx(6.0)
    assert conditions.rate_bound_holds
    assert all(lam <= 4 * 3 + 1e-6 for lam in conditions.lambdas)
    assert conditions.to_dict()['k'] == reference_code.k


def test_qtanner_to_dict(reference_code):
    data = reference_code.to_dict()
    assert data['n'] == 54
    assert data['update_classes'] == ['00', '11']
    assert data['check_classes'] == ['01', '10']


def test_qtanner_sparse_export(reference_code, tmp_path):
    write_sparse(tmp_path / 'hx.txt', reference_code.hx)
    assert read_sparse(tmp_path / 'hx.txt') == reference_code.hx


def test_qtanner_rejects_mismatched_component_lengths(z6_complex):
    with pytest.raises(ValueError):
        build_qtanner(z6_complex, repetition_code(4), parity_check_code(3))


def test_qtanner_check_classes(reference_code):
    q = reference_code
    assert set(q.update_classes) | set(q.check_classes) == {V00, V01, V10, V11}
