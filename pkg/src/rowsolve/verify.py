"""Independent checks: Penrose residuals, a pseudoinverse oracle, minimum norm.

Nothing here touches the row orthonormalization code.  The oracle computes
``A^* (A A^*)^{-1}`` with its own Gaussian elimination, so it can only be used
on matrices of full row rank.
"""

from dataclasses import dataclass

import numpy as np

from .numeric import as_matrix


class OracleNotApplicable(ValueError):
    """Raised when the oracle hits a (near) zero pivot."""


@dataclass(frozen=True)
class Condition:
    holds: bool
    residual: float


@dataclass(frozen=True)
class PenroseReport:
    p1: Condition
    p2: Condition
    p3: Condition
    p4: Condition

    @property
    def inferred_class(self):
        return frozenset(k for k, c in enumerate((self.p1, self.p2, self.p3, self.p4), 1) if c.holds)

    def as_dict(self):
        out = {f"p{k}": {"holds": c.holds, "residual": c.residual}
               for k, c in enumerate((self.p1, self.p2, self.p3, self.p4), 1)}
        out["inferred_class"] = sorted(self.inferred_class)
        return out


def _max_abs(x):
    return float(np.max(np.abs(x))) if x.size else 0.0


def penrose_check(a, g, tol=1e-8):
    """Evaluate the four Penrose conditions for the pair ``(A, G)``.

    Residuals are the largest entry magnitude of

    1. ``AGA - A``, divided by ``max(1, ||A||)``
    2. ``GAG - G``, divided by ``max(1, ||G||)``
    3. ``AG - (AG)^*``, divided by ``max(1, ||A|| ||G||)``
    4. ``GA - (GA)^*``, divided by ``max(1, ||A|| ||G||)``

    with Frobenius norms.  A condition holds when its residual is ``<= tol``.
    """
    a = as_matrix(a, "A")
    g = as_matrix(g, "G")
    m, n = a.shape
    if g.shape != (n, m):
        raise ValueError(f"G must be {n}x{m} for A of shape {a.shape}, got {g.shape}")
    na = float(np.linalg.norm(a))
    ng = float(np.linalg.norm(g))
    ag = a @ g
    ga = g @ a
    residuals = (
        _max_abs(ag @ a - a) / max(1.0, na),
        _max_abs(ga @ g - g) / max(1.0, ng),
        _max_abs(ag - ag.conj().T) / max(1.0, na * ng),
        _max_abs(ga - ga.conj().T) / max(1.0, na * ng),
    )
    return PenroseReport(*(Condition(r <= tol, r) for r in residuals))


def _gauss_inverse(h):
    """Invert a square matrix by Gauss-Jordan elimination with partial pivoting."""
    k = h.shape[0]
    aug = np.hstack([h.astype(np.complex128), np.eye(k, dtype=np.complex128)])
    threshold = 1e-12 * max(float(np.linalg.norm(h)), np.finfo(float).tiny)
    for col in range(k):
        pivot = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[pivot, col]) <= threshold:
            raise OracleNotApplicable(f"pivot {col} is {abs(aug[pivot, col]):.3e}; matrix is rank deficient")
        if pivot != col:
            aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] /= aug[col, col]
        for r in range(k):
            if r != col and aug[r, col] != 0:
                aug[r] -= aug[r, col] * aug[col]
    return aug[:, k:]


def oracle_pseudoinverse(a):
    """Moore-Penrose inverse ``A^* (A A^*)^{-1}`` of a full-row-rank matrix."""
    a = as_matrix(a, "A")
    a_star = a.conj().T
    return a_star @ _gauss_inverse(a @ a_star)


def minimum_norm_certificate(x_p, projector, tol=1e-9):
    """Check that ``x_p`` has no component in the null space.

    Returns ``(holds, residual)`` with the relative residual
    ``||P x_p|| / max(1, ||x_p||)``; it holds when that is ``<= tol``.
    """
    x_p = np.asarray(x_p, dtype=np.complex128)
    leak = float(np.linalg.norm(np.asarray(projector, dtype=np.complex128) @ x_p))
    residual = leak / max(1.0, float(np.linalg.norm(x_p)))
    return residual <= tol, residual
