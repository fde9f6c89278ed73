from .group import FiniteGroup, build_group
from .generators import LEFT, RIGHT, GeneratorSet
from .left_right import (
    CLASS_NAMES,
    V00,
    V01,
    V10,
    V11,
    LeftRightComplex,
    LocalLabel,
    SquareGraph,
    build_complex,
    cayley_graphs,
    square_graphs,
)
from .spectrum import (
    EIGEN_TOLERANCE,
    RAMANUJAN_SLACK,
    GraphSpectrum,
    cayley_adjacency,
    check_mixing,
    edges_between,
    spectral_lambda,
    square_graph_spectrum,
)
