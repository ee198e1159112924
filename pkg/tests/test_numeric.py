import numpy as np
import pytest
from hypothesis import given, strategies as st

from rowsolve.numeric import (
    as_matrix,
    conjugate_transpose,
    euclidean_norm,
    inner_product,
    matrix_product,
)
from helpers import WORKED_A_PRIME, R5

cplx = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)


def vectors(n):
    return st.lists(cplx, min_size=n, max_size=n).map(np.array)


@st.composite
def vector_pairs(draw):
    n = draw(st.integers(1, 8))
    return draw(vectors(n)), draw(vectors(n))


@st.composite
def conformable(draw):
    m, k, n = (draw(st.integers(1, 5)) for _ in range(3))
    p = np.array(draw(st.lists(cplx, min_size=m * k, max_size=m * k))).reshape(m, k)
    q = np.array(draw(st.lists(cplx, min_size=k * n, max_size=k * n))).reshape(k, n)
    return p, q


@pytest.mark.parametrize("u, v, expected", [
    ((2j, 1, -1), (0, -1j, 0), 1j),
    ((1, 0, 0), (1, 0, 0), 1),
    ((4j, 0, -2), (2j / R5, 0, -1 / R5), 2 * R5),
])
def test_inner_product_conjugates_second_argument(u, v, expected):
    assert inner_product(u, v) == pytest.approx(expected, abs=1e-14)


def test_inner_product_length_mismatch():
    with pytest.raises(ValueError):
        inner_product([1, 2], [1, 2, 3])


@pytest.mark.parametrize("u, expected", [((0, -3j, 0), 3.0), ((0, 0, 0), 0.0), ((2j, 0, -1), R5)])
def test_euclidean_norm(u, expected):
    assert euclidean_norm(u) == pytest.approx(expected, abs=1e-15)


def test_conjugate_transpose_examples():
    assert conjugate_transpose([[1j]])[0, 0] == -1j
    np.testing.assert_array_equal(conjugate_transpose(np.eye(3)), np.eye(3))
    at = conjugate_transpose(WORKED_A_PRIME)
    expected = np.array([[0, -2j / R5, 0], [1j, 0, 0], [0, -1 / R5, 0]])
    np.testing.assert_allclose(at, expected, atol=1e-15)


def test_matrix_product_examples():
    q = np.array([[1, 2j, 3], [4, 5, 6j]])
    np.testing.assert_array_equal(matrix_product(np.eye(2), q), q)
    np.testing.assert_allclose(
        matrix_product(WORKED_A_PRIME, conjugate_transpose(WORKED_A_PRIME)), np.diag([1, 1, 0]), atol=1e-15
    )
    assert not matrix_product(np.zeros((2, 3)), np.ones((3, 4))).any()
    with pytest.raises(ValueError):
        matrix_product(np.ones((2, 3)), np.ones((2, 3)))


def test_as_matrix_rejects_non_finite():
    with pytest.raises(ValueError):
        as_matrix([[1, np.nan]])
    with pytest.raises(ValueError):
        as_matrix([[np.inf]])


@given(vectors(6))
def test_self_inner_product_is_squared_norm(u):
    ip = inner_product(u, u)
    assert abs(ip.imag) <= 1e-12 * max(1, ip.real)
    assert ip.real >= 0
    assert ip.real == pytest.approx(euclidean_norm(u) ** 2, rel=1e-12, abs=1e-12)


@given(vector_pairs())
def test_inner_product_hermitian_symmetry(uv):
    u, v = uv
    assert inner_product(u, v) == pytest.approx(np.conj(inner_product(v, u)), rel=1e-12, abs=1e-9)


@given(conformable())
def test_conjugate_transpose_involution_and_product_rule(pq):
    p, q = pq
    np.testing.assert_array_equal(conjugate_transpose(conjugate_transpose(p)), p)
    lhs = conjugate_transpose(matrix_product(p, q))
    rhs = matrix_product(conjugate_transpose(q), conjugate_transpose(p))
    scale = max(1.0, np.abs(p).max() * np.abs(q).max() * p.shape[1])
    assert np.abs(lhs - rhs).max() <= 1e-13 * scale
