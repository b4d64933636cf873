"""Tests for the Monte Carlo engine."""

import math

import numpy as np
import pytest
from scipy import integrate

from conftest import make_cfg
from secrecynet.model import Scheme, cdf_sinr_sd, pdf_sinr_se, power_budget
from secrecynet.montecarlo import (MCConfig, MCEstimate, MCMetrics, TrialDraw,
                                   _block_uniforms, estimate, simulate_trial)

ALL_SCHEMES = tuple(Scheme)


def test_mc_config_validation():
    with pytest.raises(ValueError):
        MCConfig(n_trials=0)
    with pytest.raises(ValueError):
        MCConfig(seed=-1)
    with pytest.raises(ValueError):
        MCConfig(workers=0)


def test_same_seed_reproduces_and_seeds_differ():
    cfg = make_cfg(K=3)
    mc = MCConfig(n_trials=50_000, seed=7)
    assert estimate(Scheme.STS, cfg, mc) == estimate(Scheme.STS, cfg, mc)
    assert estimate(Scheme.STS, cfg, mc) != estimate(Scheme.STS, cfg, MCConfig(n_trials=50_000, seed=8))


def test_worker_count_does_not_change_results():
    cfg = make_cfg(K=2)
    base = estimate(Scheme.OS, cfg, MCConfig(n_trials=150_000, seed=11, workers=1))
    for workers in (2, 5):
        assert estimate(Scheme.OS, cfg, MCConfig(n_trials=150_000, seed=11, workers=workers)) == base


def test_vectorized_engine_matches_scalar_reference():
    cfg = make_cfg(K=3, backhaul_reliability=0.8)
    n = 3000
    f = cfg.fading
    u = _block_uniforms(seed=5, block=0, n=n, k=cfg.K)
    for scheme in ALL_SCHEMES:
        rates = []
        prims = []
        for i in range(n):
            row = u[i]
            draw = TrialDraw(
                g_sd=tuple(-math.log1p(-row[j]) / f.lambda_sd for j in range(3)),
                g_se=tuple(-math.log1p(-row[3 + j]) / f.lambda_se for j in range(3)),
                g_sr=tuple(-math.log1p(-row[6 + j]) / f.lambda_sr for j in range(3)),
                g_td=-math.log1p(-row[9]) / f.lambda_td,
                g_te=-math.log1p(-row[10]) / f.lambda_te,
                g_tr=-math.log1p(-row[11]) / f.lambda_tr,
                backhaul_u=row[12])
            rate, prim = simulate_trial(scheme, cfg, draw)
            rates.append(rate)
            prims.append(prim)
        m = estimate(scheme, cfg, MCConfig(n_trials=n, seed=5))
        assert m.prob_nonzero.mean == sum(r > 0.0 for r in rates) / n
        assert m.sop.mean == sum(r < cfg.secrecy_threshold for r in rates) / n
        assert m.primary_outage.mean == sum(prims) / n
        assert m.ergodic_capacity.mean == pytest.approx(sum(rates) / n, rel=1e-12)


def test_single_transmitter_schemes_agree_trialwise():
    cfg = make_cfg(K=1)
    mc = MCConfig(n_trials=30_000, seed=2)
    results = [estimate(s, cfg, mc) for s in ALL_SCHEMES]
    assert all(r == results[0] for r in results[1:])


def test_stderr_scales_as_inverse_sqrt_n():
    cfg = make_cfg(K=2)
    small = estimate(Scheme.STS, cfg, MCConfig(n_trials=10_000, seed=1))
    large = estimate(Scheme.STS, cfg, MCConfig(n_trials=160_000, seed=1))
    for field in ("prob_nonzero", "sop", "ergodic_capacity", "primary_outage"):
        ratio = getattr(small, field).stderr / getattr(large, field).stderr
        assert ratio == pytest.approx(4.0, rel=0.2)


def test_estimate_fields_and_types():
    cfg = make_cfg(K=2)
    m = estimate(Scheme.MES, cfg, MCConfig(n_trials=1000, seed=0))
    assert isinstance(m, MCMetrics)
    for field in ("prob_nonzero", "sop", "ergodic_capacity", "primary_outage"):
        est = getattr(m, field)
        assert isinstance(est, MCEstimate)
        assert est.n == 1000 and est.seed == 0
        assert est.stderr >= 0.0


def test_degenerate_backhaul_is_exact():
    cfg0 = make_cfg(K=2, backhaul_reliability=0.0)
    m = estimate(Scheme.STS, cfg0, MCConfig(n_trials=20_000, seed=3))
    assert m.prob_nonzero.mean == 0.0 and m.sop.mean == 1.0 and m.ergodic_capacity.mean == 0.0
    cfg1 = make_cfg(K=2, backhaul_reliability=1.0)
    m = estimate(Scheme.STS, cfg1, MCConfig(n_trials=20_000, seed=3))
    assert m.prob_nonzero.mean > 0.9  # delivery never fails here


def test_shutdown_is_exact():
    cfg = make_cfg(gamma_T=0.0)
    m = estimate(Scheme.STS, cfg, MCConfig(n_trials=10_000, seed=4))
    assert m.prob_nonzero.mean == 0.0 and m.sop.mean == 1.0 and m.ergodic_capacity.mean == 0.0
    assert m.primary_outage.mean == 1.0  # no primary power either


def test_primary_outage_hits_qos_cap():
    for scheme in ALL_SCHEMES:
        for phi in (0.05, 0.2):
            cfg = make_cfg(K=4, primary_qos=phi, gamma_T=200.0)
            m = estimate(scheme, cfg, MCConfig(n_trials=100_000, seed=6))
            assert abs(m.primary_outage.mean - phi) <= 4.0 * m.primary_outage.stderr


def test_optimal_selection_dominates_on_shared_draws():
    # same seed means identical channel draws; the optimal scheme shares the
    # power budget of STS and MES and picks the best ratio trial by trial
    cfg = make_cfg(K=4, backhaul_reliability=0.9)
    mc = MCConfig(n_trials=50_000, seed=9)
    m_os = estimate(Scheme.OS, cfg, mc)
    for other in (Scheme.STS, Scheme.MES):
        m = estimate(other, cfg, mc)
        assert m_os.prob_nonzero.mean >= m.prob_nonzero.mean
        assert m_os.sop.mean <= m.sop.mean
        assert m_os.ergodic_capacity.mean >= m.ergodic_capacity.mean


def _empirical_cdf(samples, xs):
    samples = np.sort(samples)
    return np.searchsorted(samples, xs, side="right") / len(samples)


def test_destination_sinr_cdf_within_dkw_band():
    # Dvoretzky-Kiefer-Wolfowitz band at confidence 1 - 1e-2
    cfg = make_cfg(K=3, backhaul_reliability=0.8)
    budget = power_budget(Scheme.STS, cfg)
    n = 200_000
    f = cfg.fading
    rng = np.random.Generator(np.random.Philox(key=123))
    g_sd = rng.exponential(1.0 / f.lambda_sd, size=(n, 3))
    g_td = rng.exponential(1.0 / f.lambda_td, size=n)
    delivered = rng.random(n) < cfg.backhaul_reliability
    sinr = np.where(delivered,
                    budget.gamma_S * g_sd.max(axis=1) / (cfg.gamma_T * g_td + 1.0),
                    0.0)
    eps = math.sqrt(math.log(2.0 / 1e-2) / (2.0 * n))
    xs = np.array([0.0, 0.05, 0.2, 0.5, 1.0, 2.0, 5.0])
    emp = _empirical_cdf(sinr, xs)
    for x, e in zip(xs, emp):
        assert abs(cdf_sinr_sd(Scheme.STS, cfg, budget, float(x)) - e) <= eps


def test_eavesdropper_sinr_within_dkw_band():
    cfg = make_cfg(K=3, backhaul_reliability=0.8)
    budget = power_budget(Scheme.MES, cfg)
    n = 200_000
    f = cfg.fading
    rng = np.random.Generator(np.random.Philox(key=321))
    g_se = rng.exponential(1.0 / f.lambda_se, size=(n, 3)).min(axis=1)
    g_te = rng.exponential(1.0 / f.lambda_te, size=n)
    sinr = budget.gamma_S * g_se / (cfg.gamma_T * g_te + 1.0)
    eps = math.sqrt(math.log(2.0 / 1e-2) / (2.0 * n))
    xs = [0.02, 0.1, 0.4, 1.5]
    emp = _empirical_cdf(sinr, np.array(xs))
    for x, e in zip(xs, emp):
        ref, _ = integrate.quad(lambda t: pdf_sinr_se(Scheme.MES, cfg, budget, t), 0.0, x)
        assert abs(ref - e) <= eps
