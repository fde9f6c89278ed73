from .bit_vector import BitVector, bits_to_int, int_to_bits
from .bit_matrix import BitMatrix, RowSpace, in_row_space, inverse, kernel_basis, kron, rank, row_reduce, solve
from .sparse import SparseBitMatrix, read_sparse, write_sparse
