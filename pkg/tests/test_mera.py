"""Layer counting, thermal pasting, momentum replicas, continuum comparison."""

import math

import pytest

from holobit import geometry, mera

G_UNIT = 1.0 / (8.0 * math.pi)

# frozen relative deviations |count - area| / area at the unit normalization
CONTINUUM_DEVIATION = {
    64: 0.034658431554969726,
    256: 0.008438375496787805,
    1024: 0.002095917924543177,
}


def test_build_network_halving():
    net = mera.build_network(8)
    assert net.layers == (8, 4, 2, 1)
    assert net.depth == 3
    assert not net.is_thermal
    assert mera.build_network(6).layers == (6, 3, 2, 1)  # ceil division
    assert mera.build_network(1).layers == (1,)
    with pytest.raises(ValueError):
        mera.build_network(0)
    with pytest.raises(ValueError):
        mera.MeraNetwork(layers=(4, 2, 1), arity=1)


def test_ground_state_counting_identity():
    for l0 in (1, 2, 3, 6, 8, 37, 64, 100, 511, 512, 1024):
        net = mera.build_network(l0)
        h = mera.shannon_from_counting(net)
        assert h == sum(net.layers) - l0
        if l0 & (l0 - 1) == 0 and l0 > 0:
            assert h == l0 - 1  # powers of two saturate exactly


def test_count_ledger_consistency():
    net = mera.build_network(64)
    ledger = mera.count_ledger(net)
    assert ledger.per_layer == (32, 16, 8, 4, 2, 1)
    assert ledger.total == 63
    with pytest.raises(ValueError):
        mera.CountLedger(per_layer=(2, 1), total=4)


def test_thermal_pasting():
    net = mera.build_network(64, horizon_layer=3)
    assert net.is_thermal
    assert net.layers == (64, 32, 16, 8)
    assert net.pasted_layers == (64, 32, 16, 8, 8, 16, 32, 64)
    ledger = mera.count_ledger(net)
    assert ledger.per_layer == (32, 16, 8, 8, 16, 32)
    assert mera.shannon_from_counting(net) == 2 * (32 + 16 + 8)
    with pytest.raises(ValueError):
        mera.build_network(64, horizon_layer=0)
    with pytest.raises(ValueError):
        mera.build_network(64, horizon_layer=7)  # deeper than the tower


def test_momentum_replicas():
    k = mera.momentum_replicas(1.0, 0.5)
    assert (k.count, k.ratio) == (2, 2.0)
    assert k.fractional == 0.0
    assert mera.momentum_replicas(1.0, 0.3).count == 3
    assert mera.momentum_replicas(1.0, 0.3).fractional == pytest.approx(1 / 3,
                                                                        rel=1e-12)
    assert mera.momentum_replicas(1.0, None).count == 0
    assert mera.momentum_replicas(2.5, 0.9).count == 2
    assert mera.momentum_replicas(2.5, 0.9, mode="round").count == 3
    with pytest.raises(ValueError):
        mera.momentum_replicas(1.0, 0.5, mode="ceil")
    with pytest.raises(ValueError):
        mera.momentum_replicas(0.0, 0.5)
    with pytest.raises(ValueError):
        mera.momentum_replicas(1.0, -1.0)


def test_boundary_microstates_multiplicative():
    net = mera.build_network(8)
    ground = mera.shannon_from_counting(net)
    assert ground == 7
    for k in (0, 1, 2, 5):
        assert mera.boundary_microstates(net, k) == (1 + k) * ground
    # frozen cross-checks at several (r_ads, t_perp, l0) combinations
    cases = {(1.0, 0.5, 8): 21, (2.5, 0.9, 13): 42,
             (1.0, 2.0, 8): 7, (1.0, 0.1, 64): 693}
    for (r_ads, t_perp, l0), expected in cases.items():
        k = mera.momentum_replicas(r_ads, t_perp).count
        assert mera.boundary_microstates(mera.build_network(l0), k) == expected


def test_min_energy_width():
    assert mera.min_energy_width(1.0) == pytest.approx(math.pi / 2.0, rel=1e-15)
    assert mera.min_energy_width(2.0) == pytest.approx(math.pi / 4.0, rel=1e-15)
    with pytest.raises(ValueError):
        mera.min_energy_width(0.0)


def test_bulk_temperature_layer_scaling():
    # halving radius per layer: temperature climbs linearly in depth
    t1 = mera.bulk_temperature(1, kappa=1.0)
    t3 = mera.bulk_temperature(3, kappa=1.0)
    assert t3 == pytest.approx(3.0 * t1, rel=1e-12)
    assert mera.bulk_temperature(4, kappa=2.0) == pytest.approx(
        2.0 * t1, rel=1e-12)


def test_continuum_comparison_frozen_and_monotone():
    prev = None
    for l0, frozen in CONTINUUM_DEVIATION.items():
        geom = geometry.WedgeGeometry(l=float(l0), eps=1.0, g_newton=G_UNIT)
        comp = mera.continuum_comparison(mera.build_network(l0), geom)
        assert comp.count == l0 - 1
        assert comp.relative == pytest.approx(frozen, rel=1e-12)
        assert not comp.below_asymptotic
        if prev is not None:
            assert comp.relative < prev
        prev = comp.relative


def test_continuum_comparison_flags_small_intervals():
    # the window is l/eps >= 16, strict below
    small = mera.continuum_comparison(
        mera.build_network(8),
        geometry.WedgeGeometry(l=8.0, eps=1.0, g_newton=G_UNIT))
    assert small.below_asymptotic
    edge = mera.continuum_comparison(
        mera.build_network(16),
        geometry.WedgeGeometry(l=16.0, eps=1.0, g_newton=G_UNIT))
    assert not edge.below_asymptotic


def test_continuum_comparison_validates_sites():
    geom = geometry.WedgeGeometry(l=64.0, eps=1.0, g_newton=G_UNIT)
    with pytest.raises(ValueError):
        mera.continuum_comparison(mera.build_network(32), geom)
