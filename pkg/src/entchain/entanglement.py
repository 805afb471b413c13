"""Two-qubit entanglement measures: concurrence and entanglement of formation."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import FormViolation, NegativeEigenvalue, OutOfRange, UnnormalizedState, ValidationError
from .linalg import HERMITIAN_TOL, NEGATIVE_EIG_TOL, check_hermitian, hermitian_eigen

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_YY = np.kron(SIGMA_Y, SIGMA_Y)

# 0-based (row, col) entries that must vanish for the shortcut formula
_FORM_ZEROS = ((0, 3), (1, 3), (2, 3), (3, 3), (0, 1), (0, 2))
FORM_TOL = 1e-10
# numerical rank cut for rho; trace is 1 so this is relative to the spectrum
SUPPORT_FLOOR = 1e-14


@dataclass(frozen=True)
class PureTwoQubit:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex

    def __post_init__(self):
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2 + abs(self.gamma) ** 2 + abs(self.delta) ** 2
        if abs(norm - 1.0) > 1e-10:
            raise UnnormalizedState(f"amplitudes have squared norm {norm!r}")

    @classmethod
    def from_vector(cls, psi) -> "PureTwoQubit":
        a, b, c, d = np.asarray(psi, dtype=complex)
        return cls(a, b, c, d)

    def vector(self) -> np.ndarray:
        return np.array([self.alpha, self.beta, self.gamma, self.delta], dtype=complex)

    def density_matrix(self) -> np.ndarray:
        v = self.vector()
        return np.outer(v, v.conj())


@dataclass(frozen=True)
class ConcurrenceResult:
    concurrence: float
    lambdas: tuple  # descending, clamped at zero


def two_qubit_state(rho) -> np.ndarray:
    """Validate ``rho`` as a two-qubit density matrix and return it as an array."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValidationError(f"two-qubit density matrix must be 4x4, got {rho.shape}")
    check_hermitian(rho)
    tr = np.trace(rho)
    if abs(tr - 1.0) > HERMITIAN_TOL:
        raise ValidationError(f"density matrix trace is {tr:.12g}, expected 1")
    return rho


def pure_concurrence(psi: PureTwoQubit) -> float:
    return 2.0 * abs(psi.alpha * psi.delta - psi.beta * psi.gamma)


def spin_flip(rho) -> np.ndarray:
    """Return (sigma_y x sigma_y) rho* (sigma_y x sigma_y)."""
    rho = np.asarray(rho, dtype=complex)
    return SIGMA_YY @ rho.conj() @ SIGMA_YY


def concurrence(rho) -> ConcurrenceResult:
    """Wootters concurrence of a two-qubit mixed state.

    The lambdas are the eigenvalues of the Hermitian matrix
    sqrt(sqrt(rho) rho~ sqrt(rho)), which share the spectrum of the square
    roots of rho rho~. The carrier is assembled in the eigenbasis of rho,
    restricted to eigenvalues above ``SUPPORT_FLOOR``; directions outside
    that support contribute exact zeros instead of sqrt(round-off) noise.
    """
    rho = two_qubit_state(rho)
    eig = hermitian_eigen(rho)
    if eig.eigenvalues[-1] < -NEGATIVE_EIG_TOL:
        raise NegativeEigenvalue(f"density matrix has eigenvalue {eig.eigenvalues[-1]:.3e}")
    keep = eig.eigenvalues > SUPPORT_FLOOR
    vecs = eig.eigenvectors[:, keep] * np.sqrt(eig.eigenvalues[keep])
    carrier = vecs.conj().T @ spin_flip(rho) @ vecs
    squares = hermitian_eigen(0.5 * (carrier + carrier.conj().T)).eigenvalues
    if squares[-1] < -NEGATIVE_EIG_TOL:
        raise NegativeEigenvalue(f"rho rho~ has eigenvalue {squares[-1]:.3e}")
    lambdas = np.zeros(4)
    lambdas[: squares.size] = np.sqrt(np.clip(squares, 0.0, None))
    c = max(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3], 0.0)
    return ConcurrenceResult(concurrence=float(c), lambdas=tuple(float(x) for x in lambdas))


def check_special_form(rho) -> None:
    rho = np.asarray(rho, dtype=complex)
    bad = []
    for i, j in _FORM_ZEROS:
        for r, c in {(i, j), (j, i)}:
            if abs(rho[r, c]) > FORM_TOL:
                bad.append((r, c, abs(rho[r, c])))
    if bad:
        raise FormViolation(bad)


def special_form_concurrence(rho) -> float:
    """Concurrence ``2|rho_23|`` for states with only |00>, |01>, |10> support
    and no coherence between |00> and the single-excitation block."""
    rho = two_qubit_state(rho)
    check_special_form(rho)
    return 2.0 * abs(rho[1, 2])


def binary_entropy(x: float) -> float:
    return -sum(t * math.log2(t) for t in (x, 1.0 - x) if t > 0.0)


def entanglement_of_formation(c: float) -> float:
    """Entanglement of formation in ebits as a function of concurrence."""
    if not 0.0 <= c <= 1.0:
        raise OutOfRange(f"concurrence {c!r} outside [0, 1]")
    return binary_entropy((1.0 + math.sqrt(1.0 - c * c)) / 2.0)


def ckw_budget(c_left: float, c_right: float) -> float:
    """Sum of squared concurrences a qubit shares with its two neighbours.

    Physically realised states never exceed 1.
    """
    for c in (c_left, c_right):
        if not 0.0 <= c <= 1.0:
            raise OutOfRange(f"concurrence {c!r} outside [0, 1]")
    return c_left * c_left + c_right * c_right
