import numpy as np
import pytest

from quantum_tanner.codes.linear_code import parity_check_code, repetition_code
from quantum_tanner.complex.group import FiniteGroup
from quantum_tanner.complex.left_right import build_complex
from quantum_tanner.qtanner.code import build_qtanner

REFERENCE_GENERATORS = (1, 3, 5)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture(scope='session')
def z6():
    return FiniteGroup.cyclic(6)


@pytest.fixture(scope='session')
def code_a():
    # [3, 1, 3]
    return repetition_code(3)


@pytest.fixture(scope='session')
def code_b():
    # [3, 2, 2]
    return parity_check_code(3)


@pytest.fixture(scope='session')
def z6_complex(z6):
    return build_complex(z6, REFERENCE_GENERATORS, REFERENCE_GENERATORS)


@pytest.fixture(scope='session')
def reference_code(z6_complex, code_a, code_b):
    """Z_6, A = B = {1, 3, 5}, C_A = [3,1,3], C_B = [3,2,2]."""

    return build_qtanner(z6_complex, code_a, code_b)
