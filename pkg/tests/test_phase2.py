"""Unit tests for zero-forcing precoders and the joint-capacity routes."""

from dataclasses import replace

import numpy as np
import pytest

from dmimo_sim.channel import ChannelRealization
from dmimo_sim.errors import DimensionError
from dmimo_sim.linalg import pseudo_inverse
from dmimo_sim.phase2 import (
    baseline_capacity,
    layer_count,
    phase2_capacities,
    phase2_capacity_closed,
    phase2_capacity_logdet,
    zf_precoders,
)
from dmimo_sim.scenario import LinkSet, ScenarioConfig, TrialStreams, build_links, sample_nodes


def make_links(cfg, master_seed=0, trial_index=0):
    streams = TrialStreams.derive(master_seed, trial_index)
    return build_links(cfg, sample_nodes(cfg, streams.placement), streams)


def synthetic_links(bs_h, bs_g, node_hs=(), node_gs=()):
    links = LinkSet()
    links.phase2_bs = ChannelRealization(h=np.asarray(bs_h, dtype=complex), g=bs_g)
    for h, g in zip(node_hs, node_gs):
        links.phase2_nodes.append(ChannelRealization(h=np.asarray(h, dtype=complex), g=g))
    return links


def test_identity_channel_gives_identity_precoder():
    cfg = ScenarioConfig(u=1, n_t_bs=2)
    links = synthetic_links(np.eye(2), 1.0, [np.eye(2)], [1.0])
    for mode in ("unit-gain", "power-exact"):
        pre = zf_precoders(replace(cfg, zf_normalization=mode), links, (0,))
        assert np.allclose(pre.bs_precoder, np.eye(2))
        assert np.allclose(pre.node_precoders[0], np.eye(2))
        assert pre.bs_scale == pytest.approx(1.0)


def test_power_exact_rescales_to_budget():
    # F = pinv([1, 1]) = [0.5; 0.5] has trace(FF^H) = 0.5; the exact-power
    # scale is sqrt(2 / 0.5) = 2, giving F = [1; 1]
    h = np.array([[1.0, 1.0]], dtype=complex)
    f = pseudo_inverse(h)
    assert np.allclose(f, [[0.5], [0.5]])
    cfg = ScenarioConfig(u=0, n_t_bs=2, n_r_ue=1, zf_normalization="power-exact")
    links = synthetic_links(h, 1.0)
    pre = zf_precoders(cfg, links, ())
    assert pre.bs_scale == pytest.approx(2.0, rel=1e-12)
    scaled = pre.bs_scale * pre.bs_precoder
    assert np.real(np.trace(scaled @ scaled.conj().T)) == pytest.approx(2.0, rel=1e-12)


def test_closed_form_bs_only():
    # G E / (N_t sigma2) = 3 over two layers: 2 log2(4) = 4
    cfg = ScenarioConfig(u=0, n_t_bs=4, n_r_ue=2)
    links = synthetic_links(np.eye(2, 4), 3.0 * 4.0 * cfg.sigma2_ue_mw / cfg.e_bs_mw)
    assert phase2_capacity_closed(cfg, links, ()) == pytest.approx(4.0, rel=1e-12)


def test_closed_form_two_equal_amplitudes():
    # both transmitters contribute amplitude 1 with sigma2 = 1:
    # 2 log2((1+1)^2 + 1) = 2 log2 5
    cfg = ScenarioConfig(u=1)
    g_bs = cfg.n_t_bs * cfg.sigma2_ue_mw / cfg.e_bs_mw
    g_node = cfg.n_t_node * cfg.sigma2_ue_mw / cfg.e_node_mw
    links = synthetic_links(np.eye(2, 4), g_bs, [np.eye(2)], [g_node])
    assert phase2_capacity_closed(cfg, links, (0,)) == pytest.approx(
        2.0 * np.log2(5.0), rel=1e-12
    )


def test_closed_form_energy_doubling():
    cfg = ScenarioConfig(u=2)
    links = make_links(cfg)
    db_double = 10.0 * np.log10(2.0)
    boosted = replace(cfg, p_bs_dbm=cfg.p_bs_dbm + db_double,
                      p_node_dbm=cfg.p_node_dbm + db_double)
    base = phase2_capacity_closed(cfg, links, (0, 1))
    up = phase2_capacity_closed(boosted, links, (0, 1))
    # doubling every energy doubles the squared coherent sum
    s2 = (2.0 ** (base / cfg.n_s_bar) - 1.0)
    assert 2.0 ** (up / cfg.n_s_bar) - 1.0 == pytest.approx(2.0 * s2, rel=1e-9)


def test_closed_form_permutation_invariant():
    cfg = ScenarioConfig(u=3)
    links = make_links(cfg, master_seed=5)
    a = phase2_capacity_closed(cfg, links, (0, 1, 2))
    b = phase2_capacity_closed(cfg, links, (2, 0, 1))
    assert a == pytest.approx(b, rel=1e-15)


def test_adding_a_node_strictly_increases_capacity():
    cfg = ScenarioConfig(u=4)
    links = make_links(cfg, master_seed=6)
    caps = [phase2_capacity_closed(cfg, links, tuple(range(k))) for k in range(5)]
    assert all(b > a for a, b in zip(caps, caps[1:]))


def test_zero_gains_give_zero_capacity():
    cfg = ScenarioConfig(u=1)
    links = synthetic_links(np.eye(2, 4), 0.0, [np.eye(2)], [0.0])
    pre = zf_precoders(cfg, links, (0,))
    assert phase2_capacity_closed(cfg, links, (0,)) == 0.0
    assert phase2_capacity_logdet(cfg, links, pre, (0,)) == pytest.approx(0.0, abs=1e-15)


def test_logdet_matches_closed_form_unit_gain():
    rng = np.random.default_rng(17)
    for trial in range(300):
        u = int(rng.integers(0, 6))
        cfg = ScenarioConfig(u=u)
        links = make_links(cfg, master_seed=1000 + trial)
        pair = phase2_capacities(cfg, links, tuple(range(u)))
        assert pair.se_logdet == pytest.approx(pair.se_closed, rel=1e-9)


def test_power_exact_routes_agree():
    for trial in range(100):
        cfg = ScenarioConfig(u=2, zf_normalization="power-exact")
        links = make_links(cfg, master_seed=2000 + trial)
        pair = phase2_capacities(cfg, links, (0, 1))
        assert pair.se_logdet == pytest.approx(pair.se_closed, rel=1e-9)


def test_power_exact_shrinks_when_over_budget():
    # weak channels make every pseudo-inverse exceed its power budget, so
    # exact normalization shrinks each scale below 1 and with it the sum
    cfg = ScenarioConfig(u=1, zf_normalization="power-exact")
    links = synthetic_links(0.1 * np.eye(2, 4), 1e-12, [0.1 * np.eye(2)], [1e-12])
    pre = zf_precoders(cfg, links, (0,))
    assert pre.bs_scale == pytest.approx(np.sqrt(4.0 / 200.0), rel=1e-12)
    assert pre.node_scales[0] == pytest.approx(np.sqrt(2.0 / 200.0), rel=1e-12)

    exact = phase2_capacities(cfg, links, (0,))
    unit = phase2_capacities(replace(cfg, zf_normalization="unit-gain"), links, (0,))
    assert exact.se_closed < unit.se_closed


def test_baseline_is_capacity_with_no_nodes():
    cfg = ScenarioConfig(u=7)
    links = make_links(cfg, master_seed=9)
    assert baseline_capacity(cfg, links) == pytest.approx(
        cfg.b2_hz * phase2_capacities(cfg, links, ()).se_closed, rel=1e-15
    )


def test_layer_counts():
    cfg = ScenarioConfig()
    assert layer_count(cfg, 0) == 2
    assert layer_count(cfg, 3) == 2
    assert layer_count(ScenarioConfig(n_t_node=1), 0) == 2


def test_too_few_transmit_antennas_rejected():
    cfg = ScenarioConfig(n_t_node=1)
    links = make_links(ScenarioConfig())
    with pytest.raises(DimensionError):
        zf_precoders(cfg, links, (0,))
