"""Direct maximisation of the chain concurrence and its large-block limit.

``brute_force_optimize`` works in the original site labels: it builds the
0/1 adjacency between allowed occupation tuples and finds its Perron
eigenpair by shifted power iteration, without using the free-particle
solution. It is the independent check on the analytic results.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .chain import strict_tuples
from .entanglement import entanglement_of_formation
from .errors import InvalidParameters, NoConvergence, NoRoot, NumericalError, OutOfRange, TooLarge
from .tightbinding import closed_form_concurrence

MAX_BASIS = 100_000
POWER_SHIFT = 2.0
RAYLEIGH_TOL = 1e-12
RESIDUAL_TOL = 1e-10
MAX_ITERATIONS = 100_000
ALPHA_BRACKET = (0.2, 0.45)
STATIONARITY_TOL = 1e-9
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OptimizationResult:
    n: int
    p: int
    best_concurrence: float
    best_coefficients: dict
    lagrange_eigenvalue: float
    iterations: int


@dataclass(frozen=True)
class ContinuumResult:
    alpha: float
    c_lim: float
    stationarity_residual: float


def adjacency(n: int, p: int) -> tuple[np.ndarray, np.ndarray, list[tuple]]:
    """Edges ``(rows, cols)`` of the coefficient adjacency graph and its basis.

    Tuples are adjacent when they differ in one index by exactly one. Each
    undirected edge is listed in both directions.
    """
    if n < 2 or p < 0 or 2 * p > n:
        raise InvalidParameters(f"need n >= 2 and 0 <= 2p <= n, got n={n}, p={p}")
    dim = math.comb(n - p, p)
    if dim > MAX_BASIS:
        raise TooLarge(f"basis dimension {dim} exceeds {MAX_BASIS}")
    basis = strict_tuples(n, p)
    index = {t: i for i, t in enumerate(basis)}
    rows, cols = [], []
    for i, t in enumerate(basis):
        for q in range(p):
            j = index.get(t[:q] + (t[q] + 1,) + t[q + 1 :])
            if j is not None:
                rows += [i, j]
                cols += [j, i]
    return np.array(rows, dtype=int), np.array(cols, dtype=int), basis


def brute_force_optimize(n: int, p: int) -> OptimizationResult:
    """Maximise ``(2/n)|y|`` over normalised strict-mode coefficients.

    On real coefficients ``y = v.A.v / 2`` for the symmetric adjacency
    matrix ``A``, so the optimum is ``C = l/n`` with ``l`` the top eigenvalue
    of ``A`` (the Lagrange multiplier of the normalisation). Power iteration
    runs on ``A + 2I``, which is non-negative with spectrum in ``[0, 4]``,
    starting from the uniform vector. It stops once the Rayleigh quotient moves by
    less than ``1e-12`` and the residual ``|Av - lv|`` is below ``1e-10``.
    """
    rows, cols, basis = adjacency(n, p)
    dim = len(basis)

    def apply(v):
        return np.bincount(rows, weights=v[cols], minlength=dim)

    v = np.full(dim, 1.0 / math.sqrt(dim))
    rq = float(v @ apply(v))
    for it in range(1, MAX_ITERATIONS + 1):
        w = apply(v) + POWER_SHIFT * v
        v = w / np.linalg.norm(w)
        av = apply(v)
        new_rq = float(v @ av)
        residual = float(np.linalg.norm(av - new_rq * v))
        converged = abs(new_rq - rq) <= RAYLEIGH_TOL and residual <= RESIDUAL_TOL
        rq = new_rq
        if converged:
            break
    else:
        raise NoConvergence(f"power iteration for n={n}, p={p} stalled (residual {residual:.3e})")

    if v.min() < -1e-12:
        raise NumericalError(f"Perron vector for n={n}, p={p} has a negative entry {v.min():.3e}")
    v = np.clip(v, 0.0, None)
    v /= np.linalg.norm(v)
    coeffs = {t: float(a) for t, a in zip(basis, v)}
    return OptimizationResult(
        n=n,
        p=p,
        best_concurrence=rq / n,
        best_coefficients=coeffs,
        lagrange_eigenvalue=rq,
        iterations=it,
    )


def c_lim(alpha: float) -> float:
    """Chain concurrence in the infinite-block limit at occupation density ``alpha``."""
    if not 0.0 <= alpha <= 0.5:
        raise OutOfRange(f"density alpha={alpha!r} outside [0, 1/2]")
    return 2.0 / math.pi * (1.0 - alpha) * math.sin(alpha * math.pi / (1.0 - alpha))


def stationarity_residual(alpha: float) -> float:
    """``|tan(a pi / (1 - a)) - pi / (1 - a)|``, zero at the optimal density."""
    return abs(math.tan(alpha * math.pi / (1.0 - alpha)) - math.pi / (1.0 - alpha))


def _slope(alpha: float) -> float:
    # derivative of c_lim up to the positive factor 2/pi; unlike the tangent
    # form it has no pole at alpha = 1/3
    theta = alpha * math.pi / (1.0 - alpha)
    return -math.sin(theta) + math.pi * math.cos(theta) / (1.0 - alpha)


def optimize_alpha() -> ContinuumResult:
    """Bisect for the occupation density that maximises ``c_lim``."""
    lo, hi = ALPHA_BRACKET
    if _slope(lo) * _slope(hi) > 0:
        raise NoRoot(f"stationarity condition has no sign change on [{lo}, {hi}]")
    alpha = bisect(_slope, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    residual = stationarity_residual(alpha)
    if residual > STATIONARITY_TOL:
        raise NoConvergence(f"stationarity residual {residual:.3e} above {STATIONARITY_TOL:g}")
    return ContinuumResult(alpha=alpha, c_lim=c_lim(alpha), stationarity_residual=residual)


@dataclass(frozen=True)
class SweepRow:
    n: int
    p: int
    concurrence: float
    entanglement_of_formation: float


def best_p(n: int) -> int:
    """Particle count maximising the closed form; near-ties go to the smaller p."""
    values = [closed_form_concurrence(n, p) for p in range(n // 2 + 1)]
    top = max(values)
    return next(p for p, c in enumerate(values) if c >= top - TIE_TOL)


def sweep(n_max: int, all_p: bool = False) -> list[SweepRow]:
    """Best ``(n, p)`` per block size ``2 <= n <= n_max``, sorted by ``n``.

    With ``all_p`` every admissible ``p`` is listed instead of just the best.
    """
    if n_max < 2:
        raise InvalidParameters(f"n_max={n_max} must be at least 2")
    rows = []
    for n in range(2, n_max + 1):
        ps = range(n // 2 + 1) if all_p else [best_p(n)]
        for p in ps:
            c = closed_form_concurrence(n, p)
            rows.append(SweepRow(n, p, c, entanglement_of_formation(c)))
    return rows
