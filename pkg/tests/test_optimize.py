import math

import numpy as np
import pytest

from entchain.errors import InvalidParameters, OutOfRange, TooLarge
from entchain.optimize import (
    adjacency,
    best_p,
    brute_force_optimize,
    c_lim,
    optimize_alpha,
    stationarity_residual,
    sweep,
)
from entchain.tightbinding import (
    ReducedLattice,
    closed_form_concurrence,
    hopping_matrix,
    remap_indices,
    single_particle_energies,
    slater_ground_state,
)


def test_brute_force_worked_example():
    res = brute_force_optimize(5, 2)
    assert res.best_concurrence == pytest.approx(math.sqrt(2) / 5, abs=1e-12)
    assert res.lagrange_eigenvalue == pytest.approx(math.sqrt(2), abs=1e-12)
    assert res.best_coefficients == pytest.approx({(1, 3): 0.5, (1, 4): 1 / math.sqrt(2), (2, 4): 0.5}, abs=1e-9)


def test_brute_force_trivial():
    res = brute_force_optimize(2, 1)
    assert res.best_concurrence == 0
    assert res.best_coefficients == {(1,): 1.0}


def test_brute_force_eight_three():
    dense_dim = math.comb(5, 3)
    res = brute_force_optimize(8, 3)
    assert len(res.best_coefficients) == dense_dim
    assert res.best_concurrence == pytest.approx(closed_form_concurrence(8, 3), abs=1e-10)


def test_adjacency_is_minus_hopping_matrix():
    for n in range(2, 13):
        for p in range(n // 2 + 1):
            rows, cols, basis = adjacency(n, p)
            a = np.zeros((len(basis), len(basis)))
            a[rows, cols] = 1
            h, kbasis = hopping_matrix(ReducedLattice(n, p))
            assert [remap_indices(j, p, n=n) for j in basis] == kbasis
            np.testing.assert_array_equal(a, -h)


def test_result_invariants():
    for n in range(2, 13):
        for p in range(n // 2 + 1):
            res = brute_force_optimize(n, p)
            v = np.array(list(res.best_coefficients.values()))
            assert np.linalg.norm(v) == pytest.approx(1, abs=1e-12)
            assert v.min() >= 0
            y = sum(
                res.best_coefficients[t] * res.best_coefficients.get(t[:q] + (t[q] + 1,) + t[q + 1 :], 0.0)
                for t in res.best_coefficients
                for q in range(p)
            )
            assert res.best_concurrence == pytest.approx(2 * y / n, abs=1e-10)
            assert 0 <= res.best_concurrence <= 1 / math.sqrt(2) + 1e-12


def test_brute_force_coefficients_match_slater():
    for n in range(2, 13):
        for p in range(1, n // 2 + 1):
            lat = ReducedLattice(n, p)
            e = single_particle_energies(lat).energies
            if p < lat.length and e[p] - e[p - 1] < 1e-9:
                continue
            slater = slater_ground_state(lat)
            res = brute_force_optimize(n, p)
            for j, v in res.best_coefficients.items():
                assert v == pytest.approx(slater[remap_indices(j, p)], abs=1e-7)


def test_brute_force_too_large():
    with pytest.raises(TooLarge):
        brute_force_optimize(60, 20)


@pytest.mark.parametrize("alpha, expected, tol", [(0.300844, 0.434467, 1e-6), (0.0, 0.0, 0.0), (0.5, 0.0, 1e-15)])
def test_c_lim_values(alpha, expected, tol):
    assert abs(c_lim(alpha) - expected) <= tol


def test_c_lim_range():
    with pytest.raises(OutOfRange):
        c_lim(0.6)


def test_optimize_alpha():
    res = optimize_alpha()
    assert res.alpha == pytest.approx(0.300844, abs=1e-5)
    assert res.c_lim == pytest.approx(0.434467, abs=1e-5)
    assert res.stationarity_residual <= 1e-9
    assert res.stationarity_residual == stationarity_residual(res.alpha)
    assert c_lim(res.alpha) == res.c_lim


def test_c_lim_global_maximum_on_grid():
    best = optimize_alpha().c_lim
    grid = np.linspace(0, 0.5, 10_000)
    assert max(c_lim(a) for a in grid) <= best + 1e-12
    assert max(c_lim(a) for a in grid) <= 0.434467 + 1e-6


def test_finite_size_convergence():
    alpha = 0.300844
    gaps = [0.434467 - closed_form_concurrence(n, round(alpha * n)) for n in (50, 100, 200, 400, 1000)]
    assert all(g > 0 for g in gaps)
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert gaps[2] < 0.01


def test_sweep_small():
    rows = sweep(5)
    assert [(r.n, r.p) for r in rows] == [(2, 0), (3, 1), (4, 1), (5, 1)]
    by_n = {r.n: r for r in rows}
    # oracle: brute force over every p at n = 5
    brute = [brute_force_optimize(5, p).best_concurrence for p in range(3)]
    assert by_n[5].concurrence == pytest.approx(max(brute), abs=1e-10)
    assert int(np.argmax(brute)) == 1
    assert by_n[5].entanglement_of_formation == pytest.approx(0.178620513915, abs=1e-10)


def test_sweep_all_p_contains_worked_example():
    rows = {(r.n, r.p): r for r in sweep(5, all_p=True)}
    assert rows[(5, 2)].concurrence == pytest.approx(0.2828427, abs=1e-7)
    assert rows[(5, 2)].entanglement_of_formation == pytest.approx(0.1437747, abs=1e-7)


def test_sweep_two():
    rows = sweep(2)
    assert len(rows) == 1 and (rows[0].n, rows[0].p) == (2, 0)
    assert rows[0].concurrence == 0


def test_sweep_doubling_and_bounds():
    rows = {r.n: r for r in sweep(120)}
    for n in range(2, 61):
        assert rows[2 * n].concurrence >= rows[n].concurrence - 1e-12
    assert rows[10].concurrence >= rows[5].concurrence
    assert all(0 <= r.concurrence <= 1 / math.sqrt(2) for r in rows.values())
    assert rows[120].concurrence < 0.434467


def test_best_p_ties_go_low():
    assert best_p(2) == 0
    assert best_p(4) == 1


def test_sweep_invalid():
    with pytest.raises(InvalidParameters):
        sweep(1)
