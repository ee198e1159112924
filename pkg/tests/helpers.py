import numpy as np

# Worked example: A has rank 2 and the system is consistent.
WORKED_A = np.array([[0, -3j, 0], [2j, 1, -1], [4j, 2 - 3j, -2]])
WORKED_B = np.array([1, 2j, 1 + 4j])

R5 = np.sqrt(5)
WORKED_A_PRIME = np.array([[0, -1j, 0], [2j / R5, 0, -1 / R5], [0, 0, 0]])
WORKED_B_PRIME = np.array([1 / 3, R5 / 3 * 1j, 0])
WORKED_X_P = np.array([2, 1j, -1j]) / 3
WORKED_P = np.array([[1, 0, -2j], [0, 0, 0], [2j, 0, 4]]) / 5
WORKED_M = np.array([[1 / 3, 0, 0], [-R5 / 15 * 1j, R5 / 5, 0], [-1, -2, 1]])
WORKED_G = np.array([[-2, -6j, 0], [5j, 0, 0], [1j, -3, 0]]) / 15

# [A | b] after each of the five row operations of the worked example
WORKED_STEPS = [
    np.array([[0, -1j, 0, 1 / 3], [2j, 1, -1, 2j], [4j, 2 - 3j, -2, 1 + 4j]]),
    np.array([[0, -1j, 0, 1 / 3], [2j, 0, -1, 5j / 3], [4j, 2 - 3j, -2, 1 + 4j]]),
    np.array([[0, -1j, 0, 1 / 3], [2j, 0, -1, 5j / 3], [4j, 0, -2, 10j / 3]]),
    np.array([[0, -1j, 0, 1 / 3], [2j / R5, 0, -1 / R5, R5 / 3 * 1j], [4j, 0, -2, 10j / 3]]),
    np.array([[0, -1j, 0, 1 / 3], [2j / R5, 0, -1 / R5, R5 / 3 * 1j], [0, 0, 0, 0]]),
]

WORKED_FACTORS = [
    np.diag([1 / 3, 1, 1]),
    np.array([[1, 0, 0], [-1j, 1, 0], [0, 0, 1]]),
    np.array([[1, 0, 0], [0, 1, 0], [-(3 + 2j), 0, 1]]),
    np.diag([1, R5 / 5, 1]),
    np.array([[1, 0, 0], [0, 1, 0], [0, -2 * R5, 1]]),
]


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_matrix(rng, m, n, rank):
    """m x n complex matrix of the given rank built by row duplication/combination."""
    base = crandn(rng, rank, n)
    rows = [base[i] for i in range(rank)]
    for _ in range(m - rank):
        if rng.random() < 0.5:
            rows.append(base[rng.integers(rank)].copy())
        else:
            rows.append(crandn(rng, rank) @ base)
    a = np.array(rows)
    return a[rng.permutation(m)]


def random_case(rng, max_dim=8, deficient=None):
    """Random (A, rank) with m, n <= max_dim; about half are row-rank deficient."""
    m = int(rng.integers(1, max_dim + 1))
    n = int(rng.integers(1, max_dim + 1))
    full = min(m, n)
    if deficient is None:
        deficient = rng.random() < 0.5
    if deficient and m > 1:
        rank = int(rng.integers(1, min(m - 1, n) + 1))
    else:
        rank = full
    return random_matrix(rng, m, n, rank), rank


def oracle_rank(a, tol=1e-9):
    """Rank by Gaussian elimination with complete pivoting."""
    a = np.array(a, dtype=complex)
    m, n = a.shape
    scale = max(1.0, np.abs(a).max())
    rank = 0
    for col in range(min(m, n)):
        sub = np.abs(a[col:, col:])
        r, c = np.unravel_index(np.argmax(sub), sub.shape)
        if sub[r, c] <= tol * scale:
            break
        a[[col, col + r]] = a[[col + r, col]]
        a[:, [col, col + c]] = a[:, [col + c, col]]
        a[col + 1:] -= np.outer(a[col + 1:, col] / a[col, col], a[col])
        rank += 1
    return rank


def left_null_unit(rng, a):
    """Unit vector orthogonal to range(A) (requires rank(A) < m)."""
    u, s, _ = np.linalg.svd(a)
    r = int(np.sum(s > 1e-10 * s.max())) if s.size else 0
    basis = u[:, r:]
    v = basis @ crandn(rng, basis.shape[1])
    return v / np.linalg.norm(v)
