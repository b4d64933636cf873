"""Monte Carlo verification of the analytics.

Trials are generated in fixed blocks of a counter-based RNG keyed by the seed,
with one dedicated counter range per block. Blockwise partial sums are reduced
in block order with exact summation, so results are bit-identical for any
worker count and depend only on (seed, n_trials).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import Scheme, SystemConfig, gamma_threshold, power_budget

_BLOCK = 1 << 16
_LN2 = math.log(2.0)


@dataclass(frozen=True)
class MCConfig:
    """Simulation size, seed, and parallelism."""

    n_trials: int = 1_000_000
    seed: int = 0
    workers: int = 1

    def __post_init__(self) -> None:
        if not (isinstance(self.n_trials, int) and self.n_trials >= 1):
            raise ValueError(f"n_trials must be an integer >= 1, got {self.n_trials!r}")
        if not (isinstance(self.seed, int) and self.seed >= 0):
            raise ValueError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not (isinstance(self.workers, int) and self.workers >= 1):
            raise ValueError(f"workers must be an integer >= 1, got {self.workers!r}")


@dataclass(frozen=True)
class MCEstimate:
    """Point estimate with its standard error."""

    mean: float
    stderr: float
    n: int
    seed: int


@dataclass(frozen=True)
class MCMetrics:
    """The four estimates produced by one simulation run."""

    prob_nonzero: MCEstimate
    sop: MCEstimate
    ergodic_capacity: MCEstimate
    primary_outage: MCEstimate


@dataclass(frozen=True)
class TrialDraw:
    """All randomness of one trial: K direct, eavesdropper, and interference
    gains, the three primary-transmitter gains, and the backhaul uniform."""

    g_sd: tuple
    g_se: tuple
    g_sr: tuple
    g_td: float
    g_te: float
    g_tr: float
    backhaul_u: float


def _block_uniforms(seed: int, block: int, n: int, k: int) -> np.ndarray:
    """Uniform draws of one block: columns are K direct, K eavesdropper,
    K interference gains, then g_td, g_te, g_tr, backhaul."""
    gen = np.random.Generator(np.random.Philox(key=seed, counter=block << 128))
    return gen.random((n, 3 * k + 4))


def _exp_from_u(u: np.ndarray, lam: float) -> np.ndarray:
    return -np.log1p(-u) / lam


def _select(scheme: Scheme, sinr_d: np.ndarray, sinr_e: np.ndarray,
            g_sd: np.ndarray, g_se: np.ndarray, g_sr: np.ndarray) -> np.ndarray:
    if scheme is Scheme.STS:
        return np.argmax(g_sd, axis=1)
    if scheme is Scheme.MIS:
        return np.argmin(g_sr, axis=1)
    if scheme is Scheme.MES:
        return np.argmin(g_se, axis=1)
    return np.argmax((1.0 + sinr_d) / (1.0 + sinr_e), axis=1)


def _simulate_block(scheme: Scheme, cfg: SystemConfig, gamma_S: float,
                    seed: int, block: int, n: int) -> tuple:
    """Partial sums over one block: counts of nonzero secrecy, outage, and
    primary outage, plus sum and sum of squares of the secrecy rate."""
    f = cfg.fading
    k = cfg.K
    u = _block_uniforms(seed, block, n, k)
    g_sd = _exp_from_u(u[:, 0:k], f.lambda_sd)
    g_se = _exp_from_u(u[:, k:2 * k], f.lambda_se)
    g_sr = _exp_from_u(u[:, 2 * k:3 * k], f.lambda_sr)
    g_td = _exp_from_u(u[:, 3 * k], f.lambda_td)
    g_te = _exp_from_u(u[:, 3 * k + 1], f.lambda_te)
    g_tr = _exp_from_u(u[:, 3 * k + 2], f.lambda_tr)
    delivered = u[:, 3 * k + 3] < cfg.backhaul_reliability

    sinr_d_all = gamma_S * g_sd / (cfg.gamma_T * g_td + 1.0)[:, None]
    sinr_e_all = gamma_S * g_se / (cfg.gamma_T * g_te + 1.0)[:, None]
    sel = _select(scheme, sinr_d_all, sinr_e_all, g_sd, g_se, g_sr)
    rows = np.arange(n)
    sinr_d = sinr_d_all[rows, sel]
    sinr_e = sinr_e_all[rows, sel]
    rate = np.where(delivered,
                    np.maximum(0.0, (np.log1p(sinr_d) - np.log1p(sinr_e)) / _LN2),
                    0.0)
    gamma_0 = gamma_threshold(cfg.primary_rate)
    primary_out = cfg.gamma_T * g_tr < gamma_0 * (gamma_S * g_sr[rows, sel] + 1.0)
    return (int(np.count_nonzero(rate > 0.0)),
            int(np.count_nonzero(rate < cfg.secrecy_threshold)),
            float(np.sum(rate)),
            float(np.sum(rate * rate)),
            int(np.count_nonzero(primary_out)))


def simulate_trial(scheme: Scheme, cfg: SystemConfig, draw: TrialDraw) -> tuple:
    """Scalar reference path: (secrecy_rate, primary_outage) for one draw.

    Mirrors the vectorized engine exactly, including first-index tie breaks.
    """
    budget = power_budget(scheme, cfg)
    gs = budget.gamma_S
    den_d = cfg.gamma_T * draw.g_td + 1.0
    den_e = cfg.gamma_T * draw.g_te + 1.0
    sinr_d_all = [gs * g / den_d for g in draw.g_sd]
    sinr_e_all = [gs * g / den_e for g in draw.g_se]
    if scheme is Scheme.STS:
        sel = max(range(cfg.K), key=lambda i: draw.g_sd[i])
    elif scheme is Scheme.MIS:
        sel = min(range(cfg.K), key=lambda i: draw.g_sr[i])
    elif scheme is Scheme.MES:
        sel = min(range(cfg.K), key=lambda i: draw.g_se[i])
    else:
        sel = max(range(cfg.K),
                  key=lambda i: (1.0 + sinr_d_all[i]) / (1.0 + sinr_e_all[i]))
    delivered = draw.backhaul_u < cfg.backhaul_reliability
    rate = 0.0
    if delivered:
        rate = max(0.0, (math.log1p(sinr_d_all[sel]) - math.log1p(sinr_e_all[sel])) / _LN2)
    gamma_0 = gamma_threshold(cfg.primary_rate)
    primary_outage = cfg.gamma_T * draw.g_tr < gamma_0 * (gs * draw.g_sr[sel] + 1.0)
    return rate, primary_outage


def estimate(scheme: Scheme, cfg: SystemConfig, mc: MCConfig = MCConfig()) -> MCMetrics:
    """Simulate n_trials draws and estimate all four performance metrics."""
    budget = power_budget(scheme, cfg)
    n = mc.n_trials
    blocks = [(i, min(_BLOCK, n - i * _BLOCK)) for i in range((n + _BLOCK - 1) // _BLOCK)]

    def run(args):
        block, size = args
        return _simulate_block(scheme, cfg, budget.gamma_S, mc.seed, block, size)

    if mc.workers == 1:
        partials = [run(b) for b in blocks]
    else:
        with ThreadPoolExecutor(max_workers=mc.workers) as pool:
            partials = list(pool.map(run, blocks))

    n_nz = sum(p[0] for p in partials)
    n_out = sum(p[1] for p in partials)
    rate_sum = math.fsum(p[2] for p in partials)
    rate_sq = math.fsum(p[3] for p in partials)
    n_prim = sum(p[4] for p in partials)

    def binom(count: int) -> MCEstimate:
        p = count / n
        se = math.sqrt(p * (1.0 - p) / n)
        return MCEstimate(mean=p, stderr=se, n=n, seed=mc.seed)

    mean = rate_sum / n
    var = max(0.0, (rate_sq - n * mean * mean) / (n - 1)) if n > 1 else 0.0
    erg = MCEstimate(mean=mean, stderr=math.sqrt(var / n), n=n, seed=mc.seed)
    return MCMetrics(prob_nonzero=binom(n_nz), sop=binom(n_out),
                     ergodic_capacity=erg, primary_outage=binom(n_prim))
