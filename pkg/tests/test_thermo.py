"""Coarse-grained Hamiltonian, Gibbs identities, bulk action bookkeeping."""

import math

import numpy as np
import pytest
from scipy.stats import ortho_group

from holobit import thermo
from holobit.constants import HBAR, LN2


def two_level(e_gap: float) -> thermo.RedefinedHamiltonian:
    return thermo.coarse_grain_hamiltonian([0.0, e_gap], np.eye(2))


def random_unistochastic(rng, n: int) -> np.ndarray:
    q = ortho_group.rvs(n, random_state=rng)
    return thermo.unistochastic_matrix(q)


def test_coarse_grain_row_sums():
    p = np.array([[0.6, 0.4], [0.3, 0.7]])
    h = thermo.coarse_grain_hamiltonian([1.0, 3.0], p)
    assert np.allclose(h.coarse_energies, [1.0 * 0.6 + 3.0 * 0.3,
                                           1.0 * 0.4 + 3.0 * 0.7], rtol=1e-15)
    with pytest.raises(ValueError, match="row"):
        thermo.coarse_grain_hamiltonian([1.0, 3.0],
                                        np.array([[0.6, 0.5], [0.3, 0.7]]))


def test_unistochastic_energies_within_spectrum():
    rng = np.random.default_rng(3)
    for n in (2, 4, 7):
        p = random_unistochastic(rng, n)
        energies = rng.uniform(-5.0, 5.0, size=n)
        h = thermo.coarse_grain_hamiltonian(energies, p)
        assert h.coarse_within_spectrum()
        assert np.all(h.coarse_energies >= energies.min() - 1e-12)
        assert np.all(h.coarse_energies <= energies.max() + 1e-12)


def test_row_stochastic_rectangular_can_violate_bound():
    # a merely row-stochastic map can push coarse energies past the spectrum
    p = np.full((4, 3), 1.0 / 3.0)
    h = thermo.coarse_grain_hamiltonian(np.full(4, 3.0), p)
    assert np.allclose(h.coarse_energies, 4.0, rtol=1e-15)
    assert not h.coarse_within_spectrum()


def test_unistochastic_rejects_non_orthogonal():
    with pytest.raises(ValueError):
        thermo.unistochastic_matrix(np.array([[1.0, 0.0], [1.0, 0.0]]))


def test_boosted_energies():
    e = np.array([1.0, 2.0])
    p = np.array([0.5, -0.5])
    out = thermo.boosted_energies(e, p, v_x=0.2, k_const=0.1)
    assert np.allclose(out, e - 0.2 * p + 0.1, rtol=1e-15)


def test_entropy_identity_random_family():
    rng = np.random.default_rng(17)
    worst = 0.0
    for _ in range(40):
        n = int(rng.integers(2, 11))
        p = random_unistochastic(rng, n)
        h = thermo.coarse_grain_hamiltonian(rng.uniform(-2.0, 2.0, size=n), p)
        beta = float(rng.uniform(0.01, 10.0))
        worst = max(worst, thermo.entropy_identity_check(beta, h))
    assert worst < 1e-9


def test_entropy_identity_infinite_temperature():
    h = two_level(1.7)
    # beta = 0 is exact: S = ln K with no cancellation error
    assert thermo.entropy_identity_check(0.0, h) == 0.0
    state = thermo.canonical_state(0.0, h)
    assert thermo.natural_entropy(state) == pytest.approx(math.log(2.0),
                                                          rel=1e-15)
    with pytest.raises(ValueError, match="beta = 0"):
        thermo.helmholtz(0.0, h)


def test_two_level_analytic_entropy():
    e_gap, beta = 1.3, 0.8
    state = thermo.canonical_state(beta, two_level(e_gap))
    x = beta * e_gap
    analytic = x * math.exp(-x) / (1.0 + math.exp(-x)) + math.log(
        1.0 + math.exp(-x))
    assert thermo.natural_entropy(state) == pytest.approx(analytic, abs=1e-12)


def test_entropy_monotone_and_jensen():
    h = thermo.coarse_grain_hamiltonian([0.0, 0.7, 1.1, 2.0], np.eye(4))
    betas = [0.0, 0.3, 1.0, 2.5, 8.0]
    entropies = []
    for beta in betas:
        state = thermo.canonical_state(beta, h)
        entropies.append(thermo.natural_entropy(state))
        if beta > 0.0:
            f = thermo.helmholtz(beta, h)
            e_avg = thermo.mean_energy(state, h)
            assert f <= e_avg + 1e-12          # F = E - S/beta with S >= 0
    assert all(a >= b - 1e-12 for a, b in zip(entropies, entropies[1:]))
    assert entropies[0] == pytest.approx(math.log(4.0), rel=1e-15)


def test_canonical_state_validation():
    with pytest.raises(ValueError):
        thermo.canonical_state(-1.0, two_level(1.0))
    state = thermo.canonical_state(2.0, two_level(1.0))
    assert state.z == pytest.approx(1.0 + math.exp(-2.0), rel=1e-14)
    assert state.weights.sum() == pytest.approx(1.0, rel=1e-14)


def test_gkpw_action():
    h = two_level(1.0)
    beta = 2.0
    f = thermo.helmholtz(beta, h)
    assert thermo.gkpw_action(beta, f) == pytest.approx(HBAR * beta * f,
                                                        rel=1e-15)
    # beta F = -ln Z: the action reproduces the log partition function
    state = thermo.canonical_state(beta, h)
    assert thermo.gkpw_action(beta, f) == pytest.approx(-HBAR * state.log_z,
                                                        rel=1e-12)


def test_bulk_tn_action_linearity():
    g_newton = 1.0 / (8.0 * math.pi)
    base = thermo.bulk_tn_action(0.0, 0.0, g_newton, 1.0)
    assert base == 0.0
    w_only = thermo.bulk_tn_action(math.pi, 0.0, g_newton, 1.0)
    a_only = thermo.bulk_tn_action(0.0, 1.0, g_newton, 1.0)
    assert w_only == pytest.approx(-LN2, rel=1e-15)
    assert a_only == pytest.approx(-HBAR * LN2, rel=1e-15)
    both = thermo.bulk_tn_action(math.pi, 1.0, g_newton, 1.0)
    assert both == pytest.approx(w_only + a_only, rel=1e-15)
    with pytest.raises(ValueError):
        thermo.bulk_tn_action(math.nan, 0.0, g_newton, 1.0)
    with pytest.raises(ValueError):
        thermo.bulk_tn_action(1.0, 1.0, 0.0, 1.0)


def test_membrane_tension_scaling():
    g_newton = 1.0 / (8.0 * math.pi)
    t1 = thermo.membrane_tension(g_newton, 1.0)
    assert t1 == pytest.approx(LN2, rel=1e-15)  # hbar ln2 at 8 pi G R^2 = 1
    assert thermo.membrane_tension(g_newton, 2.0) == pytest.approx(t1 / 4.0,
                                                                   rel=1e-15)
    assert thermo.membrane_tension(2.0 * g_newton, 1.0) == pytest.approx(
        t1 / 2.0, rel=1e-15)
    assert thermo.membrane_tension(g_newton, 1.0, hbar=3.0) == pytest.approx(
        3.0 * t1, rel=1e-15)
