"""Smoke tests for the pyucin extension module."""

import math

import pytest

import pyucin


def reference_config():
    cfg = pyucin.NetworkConfig()
    cfg.lambda_b = 1e-3
    cfg.lambda_u = 1e-2
    cfg.m_antennas = 8
    cfg.alpha = 4.0
    cfg.sinr_threshold = 10.0
    cfg.mu = 1.0
    return cfg


def test_closed_form_basics():
    assert pyucin.activity_probability(0.1) == pytest.approx(0.9911270105, abs=1e-9)
    assert pyucin.mean_requests(0.9911270105, 2.0) == pytest.approx(2.9733810316, abs=1e-9)
    k0, ki = pyucin.quantization_distortion(2, 1)
    assert ki == pytest.approx(1.0 / 3.0, abs=1e-12)
    assert k0 == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert pyucin.q_coefficient(0, 1.0, 0.5, 1.0, 0.0) == pytest.approx(
        math.pi / 4.0, abs=1e-9
    )


def test_coverage_curve_and_optimum():
    cfg = reference_config()
    assert pyucin.ps_analytic(cfg) == pytest.approx(0.5960551378, abs=1e-8)
    opt = pyucin.optimal_mu(cfg, 3.0)
    assert opt.argmax == pytest.approx(1.9, abs=0.1)
    assert opt.value == pytest.approx(0.7844, abs=0.002)
    cfg.feedback_bits = 8
    assert 0.0 < pyucin.ps_mixture_lf(cfg).ps < opt.value


def test_config_round_trip_and_validation():
    cfg = reference_config()
    back = pyucin.NetworkConfig.parse(cfg.serialize())
    assert back == cfg
    cfg.mu = 0.5
    with pytest.raises(ValueError):
        cfg.validate()


def test_simulation_is_deterministic():
    cfg = reference_config()
    cfg.lambda_b = 1e-2
    cfg.lambda_u = 1e-1
    cfg.window_side = 100.0
    cfg.m_antennas = 4
    cfg.sinr_threshold = 1.0
    cfg.mu = 2.0
    cfg.n_realizations = 300
    cfg.seed = 7
    a = pyucin.estimate_ps(cfg, "user-centric")
    b = pyucin.estimate_ps(cfg, "user-centric")
    assert a.p_hat == b.p_hat
    assert 0.0 < a.p_hat < 1.0
    assert a.n == 300
    nc = pyucin.estimate_ps(cfg, "non-coordination")
    assert nc.p_hat <= a.p_hat + 3.0 * (a.std_err + nc.std_err)


def test_density_tradeoff():
    cfg = reference_config()
    cfg.m_antennas = 6
    prop = pyucin.min_density_ratio(cfg, 0.9, "proposed")
    base = pyucin.min_density_ratio(cfg, 0.9, "non-coordination")
    assert prop.feasible and base.feasible
    assert prop.argmax < base.argmax
