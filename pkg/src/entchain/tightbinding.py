"""Free-particle reduction of the block-state optimisation.

Deleting the site to the right of every occupied site maps strict-mode
occupation tuples ``j`` on ``n`` sites one-to-one onto unconstrained tuples
``k`` on ``n' - 1`` sites, with ``n' = n - p + 1``. The quantity to maximise
becomes minus the energy of hard-core particles hopping between
neighbouring sites of an open chain, solved exactly by filling the lowest
``p`` sine orbitals.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintViolation, InvalidParameters, NumericalError, TooLarge

MAX_BASIS = 100_000
CROSS_CHECK_TOL = 1e-12


@dataclass(frozen=True)
class ReducedLattice:
    n: int
    p: int

    def __post_init__(self):
        if self.p < 0 or self.n < 2 or 2 * self.p > self.n:
            raise InvalidParameters(f"need n >= 2 and 0 <= 2p <= n, got n={self.n}, p={self.p}")

    @property
    def n_prime(self) -> int:
        return self.n - self.p + 1

    @property
    def length(self) -> int:
        return self.n_prime - 1

    @classmethod
    def from_n_prime(cls, n_prime: int, p: int) -> "ReducedLattice":
        return cls(n=n_prime + p - 1, p=p)

    def basis(self) -> list[tuple]:
        return list(itertools.combinations(range(1, self.length + 1), self.p))


@dataclass(frozen=True)
class SpectrumResult:
    energies: np.ndarray  # ascending in m = 1..n'-1
    ground_energy: float


def remap_indices(j_tuple, p: int | None = None, n: int | None = None) -> tuple:
    """``k_r = j_r - (r - 1)``; the input must have gaps of at least 2
    and, when the block size ``n`` is given, leave site ``n`` empty."""
    j = tuple(j_tuple)
    if n is not None and j and j[-1] >= n:
        raise ConstraintViolation(f"tuple {j} occupies site {j[-1]} >= n={n}")
    if p is not None and len(j) != p:
        raise ConstraintViolation(f"tuple {j} has {len(j)} entries, expected {p}")
    if j and j[0] < 1:
        raise ConstraintViolation(f"tuple {j} has a site below 1")
    for a, b in zip(j, j[1:]):
        if b - a < 2:
            raise ConstraintViolation(f"tuple {j}: sites {a} and {b} are closer than 2")
    return tuple(x - r for r, x in enumerate(j))


def unmap_indices(k_tuple) -> tuple:
    k = tuple(k_tuple)
    if any(b <= a for a, b in zip(k, k[1:])):
        raise ConstraintViolation(f"tuple {k} is not strictly increasing")
    return tuple(x + r for r, x in enumerate(k))


def hopping_matrix(lattice: ReducedLattice) -> tuple[np.ndarray, list[tuple]]:
    """Hard-core hopping Hamiltonian on the lexicographic p-particle basis.

    Returns the matrix and the basis it is written in. Off-diagonal entries
    are ``-1`` between configurations related by one particle moving to an
    empty neighbouring site.
    """
    dim = math.comb(lattice.length, lattice.p)
    if dim > MAX_BASIS:
        raise TooLarge(f"basis dimension {dim} exceeds {MAX_BASIS}")
    basis = lattice.basis()
    index = {b: i for i, b in enumerate(basis)}
    h = np.zeros((dim, dim))
    for i, b in enumerate(basis):
        occupied = set(b)
        for q, k in enumerate(b):
            if k + 1 <= lattice.length and k + 1 not in occupied:
                j = index[b[:q] + (k + 1,) + b[q + 1 :]]
                h[i, j] = h[j, i] = -1.0
    return h, basis


def single_particle_energies(lattice: ReducedLattice) -> SpectrumResult:
    m = np.arange(1, lattice.n_prime)
    energies = -2.0 * np.cos(m * np.pi / lattice.n_prime)
    return SpectrumResult(energies=energies, ground_energy=float(energies[: lattice.p].sum()))


def _fix_sign(vec: np.ndarray) -> np.ndarray:
    return -vec if vec[np.argmax(np.abs(vec))] < 0 else vec


def slater_ground_state(lattice: ReducedLattice) -> dict[tuple, float]:
    """Ground-state amplitudes over k-tuples as p x p sine determinants.

    The amplitude of ``(k_1 < ... < k_p)`` is proportional to
    ``det[sin(r * pi * k_s / n')]`` with rows ``r = 1..p``; the overall sign
    makes the largest component positive.
    """
    if lattice.p < 1:
        raise InvalidParameters("slater_ground_state needs at least one particle")
    energies = single_particle_energies(lattice).energies
    if lattice.p < lattice.length and not energies[lattice.p - 1] < energies[lattice.p]:
        raise InvalidParameters(f"degenerate Fermi level for n'={lattice.n_prime}, p={lattice.p}")
    basis = lattice.basis()
    if len(basis) > MAX_BASIS:
        raise TooLarge(f"basis dimension {len(basis)} exceeds {MAX_BASIS}")
    modes = np.arange(1, lattice.p + 1)[:, None]
    sites = np.array(basis, dtype=float)
    orbitals = np.sin(modes[None, :, :] * np.pi * sites[:, None, :] / lattice.n_prime)
    amps = np.linalg.det(orbitals)
    amps = _fix_sign(amps / np.linalg.norm(amps))
    return {k: float(a) for k, a in zip(basis, amps)}


def concurrence_cosine_sum(n: int, p: int) -> float:
    n_prime = n - p + 1
    return 2.0 / n * sum(math.cos(m * math.pi / n_prime) for m in range(1, p + 1))


def concurrence_closed_form(n: int, p: int) -> float:
    """Summed form of the cosine series; ``1 - cos`` is written as ``2 sin^2``."""
    x = math.pi / (n - p + 1)
    num = math.cos(p * x) - math.cos((p + 1) * x) + math.cos(x) - 1.0
    return num / (2.0 * math.sin(x / 2.0) ** 2) / n


def closed_form_concurrence(n: int, p: int) -> float:
    """Largest chain concurrence reachable with block size ``n`` and ``p`` particles."""
    ReducedLattice(n, p)
    if p == 0:
        return 0.0
    series = concurrence_cosine_sum(n, p)
    closed = concurrence_closed_form(n, p)
    if abs(series - closed) > CROSS_CHECK_TOL:
        raise NumericalError(
            f"closed form {closed!r} and cosine sum {series!r} disagree for n={n}, p={p}"
        )
    return max(closed, 0.0)


def optimal_block_coefficients(n: int, p: int) -> dict[tuple, float]:
    """Slater ground state mapped back onto strict-mode j-tuples."""
    lattice = ReducedLattice(n, p)
    if p == 0:
        return {(): 1.0}
    return {unmap_indices(k): a for k, a in slater_ground_state(lattice).items()}
