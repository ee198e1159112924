"""Dense complex arithmetic helpers.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The one
convention worth remembering is the inner product:

    <u, v> = sum_j u_j * conj(v_j)

i.e. the SECOND argument is conjugated.  The row operations of the
orthonormalization procedure subtract ``<row_k, row_i> * row_i`` from
``row_k``; with the conjugate on the other side none of the worked
coefficients (``i``, ``3+2i``, ``2*sqrt(5)``) come out right.
"""

import numpy as np


def as_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D complex128 array (a copy).

    1-D input is treated as a column vector.
    """
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 1-D or 2-D, got {arr.ndim}-D")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and column, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def as_vector(v, name="vector"):
    """Return ``v`` as a finite 1-D complex128 array (a copy)."""
    arr = np.array(v, dtype=np.complex128)
    if arr.ndim == 2 and 1 in arr.shape:
        arr = arr.ravel()
    if arr.ndim != 1:
        raise ValueError(f"{name} must be a vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def inner_product(u, v):
    """Return ``sum_j u_j * conj(v_j)``; the second argument is conjugated."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape or u.ndim != 1:
        raise ValueError(f"inner product needs equal-length vectors, got {u.shape} and {v.shape}")
    # np.vdot conjugates its first argument
    return complex(np.vdot(v, u))


def euclidean_norm(u):
    return float(np.linalg.norm(np.asarray(u, dtype=np.complex128)))


def conjugate_transpose(q):
    return np.conj(np.asarray(q, dtype=np.complex128)).T.copy()


def matrix_product(p, q):
    p = np.asarray(p, dtype=np.complex128)
    q = np.asarray(q, dtype=np.complex128)
    if p.ndim != 2 or q.ndim != 2 or p.shape[1] != q.shape[0]:
        raise ValueError(f"cannot multiply shapes {p.shape} and {q.shape}")
    return p @ q
