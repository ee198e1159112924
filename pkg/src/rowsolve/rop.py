"""Row orthonormalization procedure (ROP).

The nonzero rows of ``A`` are turned into an orthonormal set by a sequence of
elementary row operations, applied in modified Gram-Schmidt order (outer row
``i``, inner rows ``k = i+1 .. m-1``) with no pivoting.  Rows whose norm falls
to the threshold are set exactly to zero and left in place, so the result is a
*quasi-orthonormal* list: every row has norm 1 or 0, and the unit rows are
mutually orthogonal.

The same operations are mirrored on a right-hand side block.  Two flavours
share one row schedule:

* :func:`rop_transform_rhs` carries ``b`` along, giving ``A' x = b'``;
* :func:`rop_accumulate` carries ``I_m`` along, giving ``A' = M A``.

Row indices are 0-based throughout.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np

from .numeric import as_matrix, as_vector, euclidean_norm, inner_product

#: default relative zero-row threshold
DEFAULT_EPS = 1e-10


@dataclass(frozen=True)
class Normalize:
    """Scale row ``i`` by ``1/mag``."""
    i: int
    mag: float


@dataclass(frozen=True)
class Orthogonalize:
    """``row_k <- row_k - prod * row_i``."""
    k: int
    i: int
    prod: complex


@dataclass(frozen=True)
class SkipZero:
    """Row ``i`` fell to the threshold and was set to zero."""
    i: int


Step = Union[Normalize, Orthogonalize, SkipZero]


@dataclass(frozen=True, eq=False)
class QuasiOrthonormalRows:
    """Output of the ROP: the transformed matrix and its nonzero-row indices."""
    a_prime: np.ndarray
    w: tuple

    @property
    def rank(self):
        return len(self.w)

    @property
    def shape(self):
        return self.a_prime.shape


def _check_eps(eps):
    eps = float(eps)
    if not np.isfinite(eps) or eps < 0:
        raise ValueError(f"eps must be a finite nonnegative number, got {eps}")
    return eps


def _apply(step, a, rhs):
    """Apply one logged step in place to ``a`` and ``rhs`` (either may be None)."""
    if isinstance(step, Normalize):
        for target in (a, rhs):
            if target is not None:
                target[step.i] /= step.mag
    elif isinstance(step, Orthogonalize):
        for target in (a, rhs):
            if target is not None:
                target[step.k] -= target[step.i] * step.prod
    elif isinstance(step, SkipZero):
        if a is not None:
            a[step.i] = 0
    else:
        raise TypeError(f"unknown step {step!r}")


def _row_schedule(a, rhs, eps):
    """Run the MGS-ordered ROP in place on ``a`` and the companion block ``rhs``.

    Returns ``(w, log)``.  A row is normalized when its current norm exceeds
    ``eps * max(1, original norm of that row)``.
    """
    m = a.shape[0]
    original_norms = np.linalg.norm(a, axis=1)
    log = []
    w = []
    for i in range(m):
        mag = euclidean_norm(a[i])
        if mag > eps * max(1.0, original_norms[i]):
            step = Normalize(i, mag)
            _apply(step, a, rhs)
            log.append(step)
            w.append(i)
            for k in range(i + 1, m):
                step = Orthogonalize(k, i, inner_product(a[k], a[i]))
                _apply(step, a, rhs)
                log.append(step)
        else:
            step = SkipZero(i)
            _apply(step, a, rhs)
            log.append(step)
    return tuple(w), log


def rop_transform_rhs(a, b, eps=DEFAULT_EPS):
    """Orthonormalize the rows of ``[A | b]`` (first variation).

    Parameters
    ----------
    a : array_like, shape (m, n)
    b : array_like, shape (m,)
    eps : float
        Relative zero-row threshold.  ``0`` gives the exact-arithmetic
        behaviour: only rows that are exactly zero are skipped.

    Returns
    -------
    q : QuasiOrthonormalRows
    b_prime : ndarray, shape (m,)
    log : list of steps
    """
    a = as_matrix(a, "A")
    b = as_vector(b, "b")
    eps = _check_eps(eps)
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"b has length {b.shape[0]} but A has {a.shape[0]} rows")
    w, log = _row_schedule(a, b, eps)
    return QuasiOrthonormalRows(a, w), b, log


def rop_accumulate(a, eps=DEFAULT_EPS):
    """Orthonormalize the rows of ``[A | I_m]`` (second variation).

    Returns ``(q, M, log)`` with ``M @ A == q.a_prime`` up to rounding.
    """
    a = as_matrix(a, "A")
    eps = _check_eps(eps)
    m_factor = np.eye(a.shape[0], dtype=np.complex128)
    w, log = _row_schedule(a, m_factor, eps)
    return QuasiOrthonormalRows(a, w), m_factor, log


def replay(log, a, rhs=None):
    """Re-run ``log`` on copies of ``a`` (and ``rhs``), yielding after each step.

    Yields ``(step, a_state, rhs_state)``; the arrays are snapshots.  Replaying
    the log of a ROP call on its original input reproduces that call's output
    bit for bit.
    """
    a = as_matrix(a, "A")
    if rhs is not None:
        rhs = np.array(rhs, dtype=np.complex128)
    for step in log:
        _apply(step, a, rhs)
        yield step, a.copy(), None if rhs is None else rhs.copy()


def rhs_magnitude_bound(log, b):
    """Propagate ``|b|`` through the log using absolute values.

    The result bounds the size of every intermediate ``b'`` entry and serves
    as the scale for the consistency tolerance.
    """
    s = np.abs(as_vector(b, "b")).astype(float)
    for step in log:
        if isinstance(step, Normalize):
            s[step.i] /= step.mag
        elif isinstance(step, Orthogonalize):
            s[step.k] += s[step.i] * abs(step.prod)
    return s


def index_matrix(w, m):
    """Diagonal 0/1 matrix with ones at the positions in ``w``."""
    out = np.zeros((m, m), dtype=np.complex128)
    for i in w:
        if not 0 <= i < m:
            raise IndexError(f"index {i} out of range for m={m}")
        out[i, i] = 1
    return out


def is_quasi_orthonormal(q, tol):
    """Check that every row has norm ~1 or ~0 and unit rows are orthogonal.

    Returns ``(ok, message)``; ``message`` describes the first violation or is
    None.
    """
    q = np.asarray(q, dtype=np.complex128)
    norms = np.linalg.norm(q, axis=1)
    unit = []
    for i, nrm in enumerate(norms):
        if abs(nrm - 1) <= tol:
            unit.append(i)
        elif nrm > tol:
            return False, f"row {i} has norm {nrm!r}"
    for a_pos, i in enumerate(unit):
        for k in unit[a_pos + 1:]:
            prod = inner_product(q[k], q[i])
            if abs(prod) > tol:
                return False, f"rows {i} and {k} have inner product {prod!r}"
    return True, None


def materialize_elementary_factors(log, m):
    """Build the m-by-m matrix of each non-skip step, in application order.

    ``Normalize(i, mag)`` becomes the identity with ``1/mag`` at ``(i, i)``;
    ``Orthogonalize(k, i, prod)`` the identity with ``-prod`` at ``(k, i)``.
    Their product (last factor leftmost) is the accumulated ``M``.
    """
    factors = []
    for step in log:
        if isinstance(step, SkipZero):
            continue
        f = np.eye(m, dtype=np.complex128)
        if isinstance(step, Normalize):
            f[step.i, step.i] = 1 / step.mag
        else:
            f[step.k, step.i] = -step.prod
        factors.append(f)
    return factors
