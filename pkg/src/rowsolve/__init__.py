"""Direct minimum-norm solutions of consistent complex linear systems.

The rows of ``A`` are orthonormalized in place (zero rows are kept), and the
same row operations are applied to ``b`` or accumulated into ``M``.  From the
result ``A' = M A`` come the minimum-norm particular solution ``(A')^* b'``,
the null-space projector ``I - (A')^* A'`` and the generalized inverse
``(A')^* M``.
"""

from .numeric import conjugate_transpose, euclidean_norm, inner_product, matrix_product
from .online import Increment, OnlineState, current_estimate, finalize, ingest_row, online_init
from .rop import (
    DEFAULT_EPS,
    Normalize,
    Orthogonalize,
    QuasiOrthonormalRows,
    SkipZero,
    index_matrix,
    is_quasi_orthonormal,
    materialize_elementary_factors,
    replay,
    rop_accumulate,
    rop_transform_rhs,
)
from .solver import (
    ACCUMULATE_M,
    TRANSFORM_RHS,
    MatrixSolveResult,
    SolveResult,
    consistency_check,
    generalized_inverse,
    homogeneous_solution,
    null_projector,
    null_space_basis,
    particular_solution,
    solve,
    solve_matrix_rhs,
)
from .verify import PenroseReport, minimum_norm_certificate, oracle_pseudoinverse, penrose_check

__version__ = "0.1.0"
