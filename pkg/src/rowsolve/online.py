"""Streaming solver: rows of ``[A | b]`` arrive one at a time.

Each new row is orthogonalized against every row finalized so far in one
classical Gram-Schmidt pass, so once row ``i`` has been ingested neither it
nor its ``b'`` entry ever change again.  That makes the column-row expansion

    x_p = (A')^* b' = sum_i conj(row_i(A')) * b'_i

computable term by term.  The terms are mutually orthogonal because the unit
rows are, so ``||x_p||`` never decreases as rows arrive.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .numeric import as_vector
from .rop import DEFAULT_EPS, QuasiOrthonormalRows
from .solver import SolveResult, null_projector


@dataclass(frozen=True, eq=False)
class Increment:
    index: int
    x_p_inc: np.ndarray
    g_inc: Optional[np.ndarray] = None
    was_zero_row: bool = False
    inconsistency_detected: bool = False


@dataclass(eq=False)
class OnlineState:
    """Mutable accumulator for :func:`ingest_row`; one owner at a time."""
    n: int
    eps_rel: float = DEFAULT_EPS
    track_g: bool = False
    reorth: bool = False
    # (unit row, b'_i, row index, scale of b'_i)
    finalized_rows: list = field(default_factory=list)
    # (row index, b' residual)
    zero_rows: list = field(default_factory=list)
    x_p_accum: np.ndarray = None
    norm_history: list = field(default_factory=lambda: [0.0])
    rows_seen: int = 0
    m_rows: Optional[list] = None
    g_accum: Optional[np.ndarray] = None
    inconsistent_rows: list = field(default_factory=list)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be at least 1, got {self.n}")
        if not np.isfinite(self.eps_rel) or self.eps_rel < 0:
            raise ValueError(f"eps_rel must be finite and nonnegative, got {self.eps_rel}")
        if self.x_p_accum is None:
            self.x_p_accum = np.zeros(self.n, dtype=np.complex128)
        if self.track_g and self.m_rows is None:
            self.m_rows = []
            self.g_accum = np.zeros((self.n, 0), dtype=np.complex128)

    @property
    def rank(self):
        return len(self.finalized_rows)

    def ingest(self, a_row, b_i):
        return ingest_row(self, a_row, b_i)

    def estimate(self):
        return current_estimate(self)

    def finalize(self):
        return finalize(self)


def online_init(n, eps_rel=DEFAULT_EPS, track_g=False, reorth=False):
    return OnlineState(n=n, eps_rel=eps_rel, track_g=track_g, reorth=reorth)


def _padded(row, width):
    out = np.zeros(width, dtype=np.complex128)
    out[: row.shape[0]] = row
    return out


def ingest_row(state, a_row, b_i):
    """Fold one row of ``[A | b]`` into ``state`` and return its increment.

    The row is reduced against all finalized rows at once (classical
    Gram-Schmidt), optionally twice when ``state.reorth`` is set.  The
    residual is normalized if its norm exceeds ``eps_rel * max(1, ||a_row||)``;
    otherwise it counts as a zero row, and a residual ``b'`` entry above the
    matching threshold flags the system as inconsistent.
    """
    a = as_vector(a_row, "row")
    if a.shape[0] != state.n:
        raise ValueError(f"row has {a.shape[0]} entries, expected {state.n}")
    b = complex(b_i)
    if not np.isfinite(b):
        raise ValueError("b entry is not finite")

    index = state.rows_seen
    state.rows_seen += 1
    width = state.rows_seen
    m_row = None
    if state.track_g:
        m_row = np.zeros(width, dtype=np.complex128)
        m_row[index] = 1

    row_scale = max(1.0, float(np.linalg.norm(a)))
    b_scale = abs(b)
    passes = 2 if state.reorth else 1
    if state.finalized_rows:
        q = np.array([r[0] for r in state.finalized_rows])
        qb = np.array([r[1] for r in state.finalized_rows])
        qs = np.array([r[3] for r in state.finalized_rows])
        if state.track_g:
            qm = np.array([_padded(state.m_rows[r[2]], width) for r in state.finalized_rows])
        for _ in range(passes):
            coeffs = q.conj() @ a  # <a, q_j> for every finalized row
            a = a - coeffs @ q
            b = b - coeffs @ qb
            b_scale += float(np.abs(coeffs) @ qs)
            if state.track_g:
                m_row = m_row - coeffs @ qm

    mag = float(np.linalg.norm(a))
    if mag > state.eps_rel * row_scale:
        unit = a / mag
        b_prime = b / mag
        state.finalized_rows.append((unit, b_prime, index, b_scale / mag))
        x_inc = unit.conj() * b_prime
        zero = inconsistent = False
        if state.track_g:
            m_row = m_row / mag
    else:
        state.zero_rows.append((index, b))
        x_inc = np.zeros(state.n, dtype=np.complex128)
        zero = True
        inconsistent = bool(abs(b) > state.eps_rel * max(1.0, b_scale))
        if inconsistent:
            state.inconsistent_rows.append(index)

    g_inc = None
    if state.track_g:
        state.m_rows.append(m_row)
        if zero:
            g_inc = np.zeros((state.n, width), dtype=np.complex128)
        else:
            g_inc = np.outer(unit.conj(), m_row)
        state.g_accum = np.hstack([state.g_accum, np.zeros((state.n, 1), dtype=np.complex128)]) + g_inc

    state.x_p_accum = state.x_p_accum + x_inc
    state.norm_history.append(float(np.linalg.norm(state.x_p_accum)))
    return Increment(index, x_inc, g_inc, zero, inconsistent)


def current_estimate(state):
    """Return ``(x_p, rank, ||x_p||)`` for the rows seen so far."""
    return state.x_p_accum.copy(), state.rank, float(np.linalg.norm(state.x_p_accum))


def finalize(state):
    """Assemble a :class:`SolveResult` equivalent to a batch solve of the stream."""
    m = state.rows_seen
    n = state.n
    if m == 0:
        return SolveResult(
            x_p=np.zeros(n, dtype=np.complex128),
            rank=0,
            consistent=True,
            projector=np.eye(n, dtype=np.complex128),
            log=[],
        )
    a_prime = np.zeros((m, n), dtype=np.complex128)
    b_prime = np.zeros(m, dtype=np.complex128)
    for unit, bp, i, _ in state.finalized_rows:
        a_prime[i] = unit
        b_prime[i] = bp
    for i, residual in state.zero_rows:
        b_prime[i] = residual
    w = tuple(r[2] for r in state.finalized_rows)
    q = QuasiOrthonormalRows(a_prime, w)

    g = m_factor = None
    if state.track_g:
        m_factor = np.array([_padded(r, m) for r in state.m_rows])
        g = state.g_accum.copy()

    offending = state.inconsistent_rows[0] if state.inconsistent_rows else None
    return SolveResult(
        x_p=state.x_p_accum.copy(),
        rank=q.rank,
        consistent=offending is None,
        projector=null_projector(q),
        log=[],
        w=w,
        b_prime=b_prime,
        offending_row=offending,
        g=g,
        m_factor=m_factor,
        a_prime=a_prime,
    )
