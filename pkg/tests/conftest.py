import numpy as np
import pytest

from entchain.chain import build_block_state, strict_tuples


def random_block_state(rng, n, p, real_nonneg=False):
    basis = strict_tuples(n, p)
    if real_nonneg:
        amps = rng.random(len(basis))
    else:
        amps = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    amps = amps / np.linalg.norm(amps)
    return build_block_state(n, p, dict(zip(basis, amps)))


def random_density_matrix(rng, rank=None):
    rank = rank or int(rng.integers(1, 5))
    a = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


def random_pure(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    return v / np.linalg.norm(v)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
