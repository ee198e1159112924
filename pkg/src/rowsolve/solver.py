"""Solution assembly from ROP output.

Given ``A' = M A`` with quasi-orthonormal rows, the minimum-norm particular
solution is ``(A')^* b'``, the null-space projector is ``I - (A')^* A'`` and
``G = (A')^* M`` is a {1,2,4} generalized inverse of ``A``.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .numeric import as_matrix, as_vector, conjugate_transpose
from .rop import (
    DEFAULT_EPS,
    _row_schedule,
    rhs_magnitude_bound,
    rop_accumulate,
    rop_transform_rhs,
)

TRANSFORM_RHS = "transform-rhs"
ACCUMULATE_M = "accumulate-m"
VARIATIONS = (TRANSFORM_RHS, ACCUMULATE_M)


@dataclass(frozen=True, eq=False)
class SolveResult:
    x_p: np.ndarray
    rank: int
    consistent: bool
    projector: np.ndarray
    log: list
    w: tuple = ()
    b_prime: Optional[np.ndarray] = None
    offending_row: Optional[int] = None
    g: Optional[np.ndarray] = None
    m_factor: Optional[np.ndarray] = None
    a_prime: Optional[np.ndarray] = field(default=None, repr=False)


@dataclass(frozen=True, eq=False)
class MatrixSolveResult:
    x_p: np.ndarray
    projector: np.ndarray
    g: np.ndarray
    m_factor: np.ndarray
    rank: int
    consistent: tuple
    offending_rows: tuple
    w: tuple = ()
    log: list = field(default_factory=list, repr=False)


def particular_solution(q, b_prime):
    """Minimum-norm particular solution ``(A')^* b'``."""
    b_prime = np.asarray(b_prime, dtype=np.complex128)
    if b_prime.shape[0] != q.a_prime.shape[0]:
        raise ValueError(f"b' has {b_prime.shape[0]} rows, A' has {q.a_prime.shape[0]}")
    return conjugate_transpose(q.a_prime) @ b_prime


def null_projector(q):
    """Orthogonal projector ``I_n - (A')^* A'`` onto the null space of ``A``."""
    a = q.a_prime
    return np.eye(a.shape[1], dtype=np.complex128) - conjugate_transpose(a) @ a


def generalized_inverse(q, m_factor):
    """``G = (A')^* M``, n-by-m."""
    m_factor = np.asarray(m_factor, dtype=np.complex128)
    m = q.a_prime.shape[0]
    if m_factor.shape != (m, m):
        raise ValueError(f"M must be {m}x{m}, got {m_factor.shape}")
    return conjugate_transpose(q.a_prime) @ m_factor


def homogeneous_solution(projector, y):
    """``P y``; an element of the null space for any ``y``."""
    projector = np.asarray(projector, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    if projector.shape[1] != y.shape[0]:
        raise ValueError(f"P is {projector.shape}, y has {y.shape[0]} entries")
    return projector @ y


def null_space_basis(projector, tol=1e-10):
    """Orthonormal basis of ``range(P)`` as a list of 1-D arrays.

    The rows of a Hermitian ``P`` are the conjugates of its columns, so
    orthonormalizing them with the ROP and conjugating the surviving rows gives
    an orthonormal basis of the null space ``P`` projects onto.  Vectors carry
    no canonical phase.
    """
    p = as_matrix(projector, "P")
    n = p.shape[0]
    if p.shape != (n, n):
        raise ValueError(f"projector must be square, got {p.shape}")
    scale = max(1.0, float(np.linalg.norm(p)))
    if np.max(np.abs(p - p.conj().T)) > tol * scale:
        raise ValueError("projector is not Hermitian within tolerance")
    if np.max(np.abs(p @ p - p)) > tol * scale:
        raise ValueError("projector is not idempotent within tolerance")
    w, _ = _row_schedule(p, None, tol)
    return [np.conj(p[i]) for i in w]


def consistency_check(q, b_prime, eps=DEFAULT_EPS, scale=None):
    """Check that every zero row of ``A'`` carries a (near) zero entry in ``b'``.

    ``scale`` is an optional per-row magnitude (see
    :func:`rowsolve.rop.rhs_magnitude_bound`); row ``i`` outside ``W`` passes
    when ``|b'_i| <= eps * max(1, scale_i)``.  Returns ``(consistent,
    offending_row)`` with ``offending_row`` the first failing index or None.
    """
    b_prime = np.asarray(b_prime, dtype=np.complex128)
    m = q.a_prime.shape[0]
    if scale is None:
        scale = np.ones(m)
    scale = np.broadcast_to(np.asarray(scale, dtype=float), (m,))
    in_w = set(q.w)
    for i in range(m):
        if i in in_w:
            continue
        if abs(b_prime[i]) > eps * max(1.0, scale[i]):
            return False, i
    return True, None


def solve(a, b, variation=TRANSFORM_RHS, eps=DEFAULT_EPS):
    """Solve ``A x = b`` for the minimum-norm particular solution.

    Inconsistent systems are not an error: ``consistent`` is False,
    ``offending_row`` names the first zero row of ``A'`` with a nonzero
    ``b'`` entry, and ``x_p`` still solves the projected system.
    """
    if variation not in VARIATIONS:
        raise ValueError(f"variation must be one of {VARIATIONS}, got {variation!r}")
    a = as_matrix(a, "A")
    b = as_vector(b, "b")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"b has length {b.shape[0]} but A has {a.shape[0]} rows")

    g = m_factor = None
    if variation == TRANSFORM_RHS:
        q, b_prime, log = rop_transform_rhs(a, b, eps)
        x_p = particular_solution(q, b_prime)
    else:
        q, m_factor, log = rop_accumulate(a, eps)
        g = generalized_inverse(q, m_factor)
        b_prime = m_factor @ b
        x_p = g @ b

    consistent, offending = consistency_check(q, b_prime, eps, rhs_magnitude_bound(log, b))
    return SolveResult(
        x_p=x_p,
        rank=q.rank,
        consistent=consistent,
        projector=null_projector(q),
        log=log,
        w=q.w,
        b_prime=b_prime,
        offending_row=offending,
        g=g,
        m_factor=m_factor,
        a_prime=q.a_prime,
    )


def solve_matrix_rhs(a, b, eps=DEFAULT_EPS):
    """Solve ``A X = B`` column by column with a single ROP pass: ``X_p = G B``."""
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"B has {b.shape[0]} rows but A has {a.shape[0]}")
    q, m_factor, log = rop_accumulate(a, eps)
    g = generalized_inverse(q, m_factor)
    b_prime = m_factor @ b

    consistent, offending = [], []
    for j in range(b.shape[1]):
        ok, row = consistency_check(q, b_prime[:, j], eps, rhs_magnitude_bound(log, b[:, j]))
        consistent.append(ok)
        offending.append(row)
    return MatrixSolveResult(
        x_p=g @ b,
        projector=null_projector(q),
        g=g,
        m_factor=m_factor,
        rank=q.rank,
        consistent=tuple(consistent),
        offending_rows=tuple(offending),
        w=q.w,
        log=log,
    )
