"""Block states and the nearest-neighbour pair density matrix of the chain.

An ``n``-site block state is tiled along an infinite line and the chain
state is the equal mixture of its ``n`` translations. The pair density
matrix of two neighbouring sites is therefore the average of ``n - 1``
intra-block reduced states and one cross-block product state.

Occupation patterns are keyed by strictly increasing 1-based site tuples.
In ``strict`` mode the block must also avoid neighbouring occupied sites
and keep its last site empty, which forces the pair density matrix into a
shape where the concurrence is just ``2|rho_23|``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

import numpy as np

from .errors import (
    BadNormalization,
    ConstraintViolation,
    InvalidTuple,
    RelaxedModeUnsupported,
    TooLarge,
    ValidationError,
)
from .linalg import partial_trace_pair, partial_trace_site, tensor_product

STRICT = "strict"
RELAXED = "relaxed"
MAX_EXPAND_SITES = 20
MAX_ENUMERATION_SITES = 12
NORM_REPAIR_TOL = 1e-6


@dataclass(frozen=True)
class BlockState:
    n: int
    p: int
    coefficients: Mapping[tuple, complex]
    mode: str = STRICT

    def amplitude(self, sites: tuple) -> complex:
        return self.coefficients.get(tuple(sites), 0.0)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "coefficients": [
                {"sites": list(k), "re": float(np.real(v)), "im": float(np.imag(v))}
                for k, v in sorted(self.coefficients.items())
            ],
        }


@dataclass(frozen=True)
class PairDensityReport:
    rho: np.ndarray
    y: complex | None
    shift_components: list = field(default_factory=list)


def strict_violation(sites: tuple, n: int) -> str | None:
    """Name the first block-state condition ``sites`` breaks, or None."""
    for a, b in zip(sites, sites[1:]):
        if b - a == 1:
            return f"sites {a} and {b} are neighbours (no two adjacent occupied sites)"
    if sites and sites[-1] == n:
        return f"site {n} is occupied (last site of the block must be empty)"
    return None


def strict_tuples(n: int, p: int) -> list[tuple]:
    """All occupation tuples allowed in strict mode, lexicographically ordered."""
    out: list[tuple] = []

    def grow(prefix: tuple, first: int) -> None:
        if len(prefix) == p:
            out.append(prefix)
            return
        # leave room for the remaining particles, each taking two sites
        last = n - 1 - 2 * (p - len(prefix) - 1)
        for j in range(first, last + 1):
            grow(prefix + (j,), j + 2)

    grow((), 1)
    return out


def build_block_state(n: int, p: int, coefficients: Mapping, mode: str = STRICT) -> BlockState:
    """Validate and normalise a block state.

    Keys may be any iterable of site indices (an int is read as a
    one-particle tuple). Zero amplitudes are dropped. A squared norm within
    ``1e-6`` of one is rescaled to exactly one; anything further off is
    rejected.
    """
    if mode not in (STRICT, RELAXED):
        raise ValidationError(f"unknown constraint mode {mode!r}")
    if n < 2:
        raise ValidationError(f"block size n={n} must be at least 2")
    if p < 0 or p > n:
        raise ValidationError(f"particle count p={p} outside 0..{n}")
    if mode == STRICT and 2 * p > n:
        raise ConstraintViolation(f"strict mode needs 2p <= n, got n={n}, p={p}")

    clean: dict[tuple, complex] = {}
    for key, amp in coefficients.items():
        sites = (key,) if isinstance(key, (int, np.integer)) else tuple(int(s) for s in key)
        if len(sites) != p:
            raise InvalidTuple(f"tuple {sites} has {len(sites)} sites, expected p={p}")
        if any(b <= a for a, b in zip(sites, sites[1:])):
            raise InvalidTuple(f"tuple {sites} is not strictly increasing")
        if sites and (sites[0] < 1 or sites[-1] > n):
            raise InvalidTuple(f"tuple {sites} has a site outside 1..{n}")
        if sites in clean:
            raise InvalidTuple(f"tuple {sites} given twice")
        amp = complex(amp)
        if mode == STRICT:
            why = strict_violation(sites, n)
            if why is not None and amp != 0:
                raise ConstraintViolation(f"tuple {sites}: {why}")
        if amp != 0:
            clean[sites] = amp

    norm = sum(abs(a) ** 2 for a in clean.values())
    if abs(norm - 1.0) > NORM_REPAIR_TOL:
        raise BadNormalization(f"squared norm {norm:.12g} is not within {NORM_REPAIR_TOL:g} of 1")
    scale = 1.0 / math.sqrt(norm)
    clean = {k: v * scale for k, v in sorted(clean.items())}
    return BlockState(n=n, p=p, coefficients=MappingProxyType(clean), mode=mode)


def load_block_state(path, mode: str = STRICT) -> BlockState:
    """Read a coefficient file: ``{"n", "p", "coefficients": [{"sites", "re", "im"}]}``."""
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        line = text.splitlines()[exc.lineno - 1] if text.splitlines() else ""
        raise ValidationError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {line}") from None
    try:
        n, p = int(doc["n"]), int(doc["p"])
        coeffs = {}
        for i, entry in enumerate(doc["coefficients"]):
            key = tuple(int(s) for s in entry["sites"])
            if key in coeffs:
                raise InvalidTuple(f"{path}: coefficient #{i} repeats sites {list(key)}")
            coeffs[key] = complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(f"{path}: malformed coefficient file ({exc!r})") from None
    return build_block_state(n, p, coeffs, mode=mode)


def expand_to_vector(xi: BlockState) -> np.ndarray:
    if xi.n > MAX_EXPAND_SITES:
        raise TooLarge(f"n={xi.n} exceeds the {MAX_EXPAND_SITES}-site expansion limit")
    psi = np.zeros(2**xi.n, dtype=complex)
    for sites, amp in xi.coefficients.items():
        psi[sum(1 << (xi.n - s) for s in sites)] = amp
    return psi


def pair_density_matrix(xi: BlockState) -> PairDensityReport:
    """Neighbour-pair density matrix of the chain by explicit partial traces.

    ``shift_components[k]`` is the pair state seen after shifting the tiling
    left by ``k`` sites: sites ``(k+1, k+2)`` of one block for ``k < n-1``,
    and the product of the last-site and first-site marginals for ``k = n-1``.
    """
    if xi.n > MAX_ENUMERATION_SITES:
        raise TooLarge(f"n={xi.n} exceeds the {MAX_ENUMERATION_SITES}-site enumeration limit")
    psi = expand_to_vector(xi)
    parts = [partial_trace_pair(psi, k + 1) for k in range(xi.n - 1)]
    parts.append(tensor_product(partial_trace_site(psi, xi.n), partial_trace_site(psi, 1)))
    rho = sum(parts) / xi.n
    y = compute_y(xi) if xi.mode == STRICT else None
    return PairDensityReport(rho=rho, y=y, shift_components=parts)


def compute_y(xi: BlockState) -> complex:
    """Sum over adjacent coefficient pairs of conj(a_lower) * a_upper.

    Two tuples are adjacent when they differ in exactly one index and by
    exactly one there; the tuple with the smaller value is conjugated.
    """
    if xi.mode != STRICT:
        raise RelaxedModeUnsupported("compute_y requires a strict-mode block state")
    y = 0j
    for sites, amp in xi.coefficients.items():
        for q in range(len(sites)):
            moved = sites[:q] + (sites[q] + 1,) + sites[q + 1 :]
            partner = xi.coefficients.get(moved)
            if partner is not None:
                y += np.conj(amp) * partner
    return complex(y)


def chain_concurrence(xi: BlockState) -> float:
    """Concurrence ``(2/n)|y|`` of a strict-mode chain."""
    return 2.0 * abs(compute_y(xi)) / xi.n


def template_rho(n: int, p: int, y: complex) -> np.ndarray:
    """The pair density matrix every strict-mode block state must produce."""
    rho = np.diag([n - 2 * p, p, p, 0]).astype(complex)
    rho[1, 2] = y
    rho[2, 1] = np.conj(y)
    return rho / n


def singlet_block() -> BlockState:
    """Two-site singlet (|01> - |10>)/sqrt(2) as a relaxed-mode block."""
    r = 1.0 / math.sqrt(2.0)
    return build_block_state(2, 1, {(2,): r, (1,): -r}, mode=RELAXED)
