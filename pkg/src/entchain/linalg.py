"""Small dense complex linear algebra.

Matrices are plain ``numpy`` complex arrays. Qubit ordering is fixed
project-wide: site 1 is the most significant bit of a basis index, so for
two qubits the basis runs |00>, |01>, |10>, |11>.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import (
    IndexOutOfRange,
    NegativeEigenvalue,
    NoConvergence,
    NonHermitianInput,
    UnnormalizedState,
)

HERMITIAN_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


@dataclass(frozen=True)
class HermitianEigenResult:
    eigenvalues: np.ndarray  # descending
    eigenvectors: np.ndarray  # columns

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    return m


def check_hermitian(a: np.ndarray, tol: float = HERMITIAN_TOL) -> None:
    dev = np.max(np.abs(a - a.conj().T))
    if dev > tol:
        raise NonHermitianInput(f"matrix deviates from Hermitian by {dev:.3e} (tol {tol:g})")


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigen(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> HermitianEigenResult:
    """Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies the classical real Jacobi rotation. Sweeps continue until the
    off-diagonal Frobenius norm drops below ``tol * max(1, ||a||_F)``.

    Returns
    -------
    HermitianEigenResult
        Eigenvalues in descending order with matching orthonormal columns.
    """
    a = as_matrix(a)
    check_hermitian(a)
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    target = tol * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _off_norm(a) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-norm {_off_norm(a):.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # U = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u_pp, u_pq = c, s
                u_qp, u_qq = -s * phase.conjugate(), c * phase.conjugate()

                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = col_p * u_pp + col_q * u_qp
                a[:, q] = col_p * u_pq + col_q * u_qq
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = np.conj(u_pp) * row_p + np.conj(u_qp) * row_q
                a[q, :] = np.conj(u_pq) * row_p + np.conj(u_qq) * row_q
                a[p, q] = a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag

                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = vp * u_pp + vq * u_qp
                v[:, q] = vp * u_pq + vq * u_qq

    evals = np.diag(a).real.copy()
    order = np.argsort(-evals, kind="stable")
    return HermitianEigenResult(eigenvalues=evals[order], eigenvectors=v[:, order])


def matrix_sqrt_psd(a) -> np.ndarray:
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-10, 0)`` are treated as round-off and clamped to zero.
    """
    res = hermitian_eigen(a)
    lo = res.eigenvalues[-1]
    if lo < -NEGATIVE_EIG_TOL:
        raise NegativeEigenvalue(f"matrix has eigenvalue {lo:.3e} < -{NEGATIVE_EIG_TOL:g}")
    roots = np.sqrt(np.clip(res.eigenvalues, 0.0, None))
    v = res.eigenvectors
    s = (v * roots) @ v.conj().T
    return 0.5 * (s + s.conj().T)


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product with the left factor as the more significant index."""
    return np.kron(as_matrix(a), as_matrix(b))


def tensor_all(*mats) -> np.ndarray:
    return reduce(tensor_product, mats)


def _state_qubits(psi: np.ndarray) -> int:
    n = int(psi.size).bit_length() - 1
    if psi.ndim != 1 or psi.size < 2 or 1 << n != psi.size:
        raise ValueError(f"state vector length {psi.size} is not a power of two >= 2")
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > HERMITIAN_TOL:
        raise UnnormalizedState(f"state vector has squared norm {norm!r}")
    return n


def partial_trace_pair(state_vector, site_i: int) -> np.ndarray:
    """Reduced density matrix of adjacent qubits ``(site_i, site_i + 1)``.

    Sites are 1-based; the result is 4x4 in the order |00>, |01>, |10>, |11>.
    """
    psi = np.asarray(state_vector, dtype=complex)
    n = _state_qubits(psi)
    if not 1 <= site_i <= n - 1:
        raise IndexOutOfRange(f"pair start {site_i} outside 1..{n - 1}")
    t = psi.reshape(2 ** (site_i - 1), 4, 2 ** (n - site_i - 1))
    return np.einsum("aib,ajb->ij", t, t.conj())


def partial_trace_site(state_vector, site: int) -> np.ndarray:
    """Reduced 2x2 density matrix of a single 1-based ``site``."""
    psi = np.asarray(state_vector, dtype=complex)
    n = _state_qubits(psi)
    if not 1 <= site <= n:
        raise IndexOutOfRange(f"site {site} outside 1..{n}")
    t = psi.reshape(2 ** (site - 1), 2, 2 ** (n - site))
    return np.einsum("aib,ajb->ij", t, t.conj())
