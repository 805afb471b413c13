import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entchain.errors import IndexOutOfRange, NegativeEigenvalue, NonHermitianInput, UnnormalizedState
from entchain.linalg import (
    hermitian_eigen,
    matrix_sqrt_psd,
    partial_trace_pair,
    partial_trace_site,
    tensor_product,
)

SY = np.array([[0, -1j], [1j, 0]])
P0 = np.diag([1.0, 0.0])
P1 = np.diag([0.0, 1.0])


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(2), [1, 1]),
        (np.diag([5 / 8, 1 / 8, 1 / 8, 1 / 8]), [5 / 8, 1 / 8, 1 / 8, 1 / 8]),
        (SY, [1, -1]),
        (np.diag([1.0, 3.0, 2.0]), [3, 2, 1]),
    ],
)
def test_hermitian_eigen_examples(a, expected):
    res = hermitian_eigen(a)
    np.testing.assert_allclose(res.eigenvalues, expected, atol=1e-14)


@pytest.mark.parametrize("dim", [1, 2, 3, 4, 7, 16])
def test_hermitian_eigen_random(rng, dim):
    for _ in range(5):
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        a = m + m.conj().T
        res = hermitian_eigen(a)
        v = res.eigenvectors
        assert np.max(np.abs(res.reconstruct() - a)) <= 1e-10
        assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) <= 1e-10
        assert np.all(np.diff(res.eigenvalues) <= 0)
        # reference only; production path never calls numpy eigensolvers
        np.testing.assert_allclose(res.eigenvalues, np.linalg.eigvalsh(a)[::-1], atol=1e-10)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(NonHermitianInput):
        hermitian_eigen(np.array([[0, 1], [0, 0]]))


def test_hermitian_eigen_degenerate_and_zero():
    res = hermitian_eigen(np.zeros((3, 3)))
    np.testing.assert_array_equal(res.eigenvalues, 0)
    np.testing.assert_allclose(res.eigenvectors, np.eye(3))


@pytest.mark.parametrize(
    "a, expected",
    [
        (np.eye(3), np.eye(3)),
        (np.diag([4.0, 9.0]), np.diag([2.0, 3.0])),
        (np.diag([1.0, 0, 0, 0]), np.diag([1.0, 0, 0, 0])),
    ],
)
def test_matrix_sqrt_examples(a, expected):
    np.testing.assert_allclose(matrix_sqrt_psd(a), expected, atol=1e-12)


def test_matrix_sqrt_random_psd(rng):
    for dim in (2, 4, 8):
        m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        a = m.conj().T @ m
        s = matrix_sqrt_psd(a)
        assert np.max(np.abs(s @ s - a)) <= 1e-9
        assert np.max(np.abs(s - s.conj().T)) <= 1e-12
        assert hermitian_eigen(s).eigenvalues[-1] >= -1e-10


def test_matrix_sqrt_clamps_roundoff_but_rejects_negative():
    s = matrix_sqrt_psd(np.diag([1.0, -1e-12]))
    np.testing.assert_allclose(s, np.diag([1.0, 0.0]), atol=1e-15)
    with pytest.raises(NegativeEigenvalue):
        matrix_sqrt_psd(np.diag([1.0, -1e-6]))


def test_tensor_product_examples():
    t = tensor_product(P0, P1)
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    np.testing.assert_array_equal(t, expected)
    np.testing.assert_array_equal(tensor_product(np.eye(2), np.eye(2)), np.eye(4))


def test_tensor_product_boundary_term():
    a13, a14, a24 = 0.5, 1 / np.sqrt(2), 0.5
    t = tensor_product(P0, np.diag([a24**2, a13**2 + a14**2]))
    np.testing.assert_allclose(np.diag(t).real, [a24**2, a13**2 + a14**2, 0, 0])


def test_tensor_product_index_convention(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    b = rng.normal(size=(3, 3))
    t = tensor_product(a, b)
    for ia, ja, ib, jb in [(0, 1, 2, 0), (1, 1, 1, 2), (1, 0, 0, 0)]:
        assert t[ia * 3 + ib, ja * 3 + jb] == a[ia, ja] * b[ib, jb]


matrices = st.integers(min_value=0, max_value=2**32 - 1).map(
    lambda seed: np.random.default_rng(seed).normal(size=(3, 2, 2, 2))
)


@settings(max_examples=50, deadline=None)
@given(matrices)
def test_tensor_product_associative(x):
    a, b, c = (x[i, 0] + 1j * x[i, 1] for i in range(3))
    left = tensor_product(tensor_product(a, b), c)
    right = tensor_product(a, tensor_product(b, c))
    assert np.max(np.abs(left - right)) <= 1e-12


def test_partial_trace_singlet():
    psi = np.array([0, 1, -1, 0]) / np.sqrt(2)
    expected = np.array([[0, 0, 0, 0], [0, 0.5, -0.5, 0], [0, -0.5, 0.5, 0], [0, 0, 0, 0]])
    np.testing.assert_allclose(partial_trace_pair(psi, 1), expected, atol=1e-15)


def test_partial_trace_five_site_block():
    a13, a14, a24 = 0.3, 0.5 + 0.2j, np.sqrt(1 - 0.09 - 0.29)
    psi = np.zeros(32, dtype=complex)
    psi[0b10100], psi[0b10010], psi[0b01010] = a13, a14, a24
    rho = partial_trace_pair(psi, 1)
    expected = np.zeros((4, 4), dtype=complex)
    expected[1, 1] = abs(a24) ** 2
    expected[1, 2] = np.conj(a14) * a24
    expected[2, 1] = a14 * np.conj(a24)
    expected[2, 2] = abs(a13) ** 2 + abs(a14) ** 2
    np.testing.assert_allclose(rho, expected, atol=1e-15)


@pytest.mark.parametrize("site", [1, 2])
def test_partial_trace_product_state(site):
    psi = np.zeros(8)
    psi[0] = 1
    np.testing.assert_array_equal(partial_trace_pair(psi, site), np.diag([1.0, 0, 0, 0]))


def test_partial_trace_random_states_are_density_matrices(rng):
    for n in range(2, 8):
        psi = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
        psi /= np.linalg.norm(psi)
        for i in range(1, n):
            rho = partial_trace_pair(psi, i)
            assert np.max(np.abs(rho - rho.conj().T)) <= 1e-12
            assert abs(np.trace(rho) - 1) <= 1e-10
            assert hermitian_eigen(rho).eigenvalues[-1] >= -1e-10
        for i in range(1, n + 1):
            assert abs(np.trace(partial_trace_site(psi, i)) - 1) <= 1e-10


def test_partial_trace_errors():
    psi = np.array([1.0, 0, 0, 0, 0, 0, 0, 0])
    with pytest.raises(IndexOutOfRange):
        partial_trace_pair(psi, 3)
    with pytest.raises(IndexOutOfRange):
        partial_trace_pair(psi, 0)
    with pytest.raises(UnnormalizedState):
        partial_trace_pair(2 * psi, 1)
