"""System model: parameters, transmitter-selection schemes, the interference
power budget imposed by the primary quality-of-service constraint, and the
resulting SINR distributions at destination, eavesdropper, and primary receiver.

All channel power gains are exponential; lambda_* are their rate parameters
(reciprocal mean gains). gamma_T is the primary transmit SNR on linear scale.
The wireless backhaul of each small-cell transmitter delivers the message with
probability backhaul_reliability, independently of the fading.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass


class Scheme(enum.Enum):
    """Transmitter-selection rule used by the small-cell network."""

    STS = "STS"  # strongest transmitter to destination
    MIS = "MIS"  # minimal interference to the primary receiver
    MES = "MES"  # minimal eavesdropping exposure
    OS = "OS"  # optimal: maximises the instantaneous secrecy rate


def _require_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValueError(f"{name} must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class FadingParams:
    """Rate parameters of the exponential channel power gains.

    s* legs start at the small-cell transmitters, t* legs at the primary
    transmitter; suffixes d, e, r denote destination, eavesdropper, and
    primary receiver.
    """

    lambda_sd: float
    lambda_se: float
    lambda_sr: float
    lambda_td: float
    lambda_te: float
    lambda_tr: float

    def __post_init__(self) -> None:
        for name in ("lambda_sd", "lambda_se", "lambda_sr",
                     "lambda_td", "lambda_te", "lambda_tr"):
            _require_positive(name, getattr(self, name))


@dataclass(frozen=True)
class SystemConfig:
    """Full scenario description for one operating point."""

    K: int
    backhaul_reliability: float
    primary_qos: float
    primary_rate: float
    secrecy_threshold: float
    gamma_T: float
    fading: FadingParams

    def __post_init__(self) -> None:
        if not (isinstance(self.K, int) and self.K >= 1):
            raise ValueError(f"K must be an integer >= 1, got {self.K!r}")
        if not (0.0 <= self.backhaul_reliability <= 1.0):
            raise ValueError(
                f"backhaul_reliability must lie in [0, 1], got {self.backhaul_reliability!r}")
        if not (0.0 < self.primary_qos < 1.0):
            raise ValueError(f"primary_qos must lie in (0, 1), got {self.primary_qos!r}")
        _require_positive("primary_rate", self.primary_rate)
        if not (math.isfinite(self.secrecy_threshold) and self.secrecy_threshold >= 0.0):
            raise ValueError(
                f"secrecy_threshold must be finite and >= 0, got {self.secrecy_threshold!r}")
        if not (math.isfinite(self.gamma_T) and self.gamma_T >= 0.0):
            raise ValueError(f"gamma_T must be finite and >= 0, got {self.gamma_T!r}")
        if not isinstance(self.fading, FadingParams):
            raise ValueError("fading must be a FadingParams instance")


@dataclass(frozen=True)
class PowerBudget:
    """Interference budget granted to the scheduled small-cell transmitter.

    xi is the admissible power scale, gamma_S the resulting transmit SNR.
    active is False when the primary constraint cannot be met at any positive
    power, in which case the secondary network stays silent.
    """

    xi: float
    gamma_S: float
    active: bool


def gamma_threshold(beta: float) -> float:
    """SINR threshold protecting a primary rate of beta bits/s/Hz."""
    _require_positive("beta", beta)
    return 2.0**beta - 1.0


def db_to_linear(value_db: float) -> float:
    """Power quantity in dB to linear scale."""
    return 10.0 ** (value_db / 10.0)


def power_budget(scheme: Scheme, cfg: SystemConfig) -> PowerBudget:
    """Largest admissible secondary power scale under the primary constraint.

    The outage probability of the primary link, with the scheduled secondary
    transmitter interfering, must not exceed primary_qos. MIS schedules the
    transmitter with the weakest interference channel, which relaxes the
    budget by a factor K; every other scheme faces an unconditioned
    interference channel.
    """
    gamma_0 = gamma_threshold(cfg.primary_rate)
    lam_tr = cfg.fading.lambda_tr
    phi = cfg.primary_qos
    # exp(-lam_tr*gamma_0/gamma_T) -> 0 as gamma_T -> 0, so the budget closes.
    decay = math.exp(-lam_tr * gamma_0 / cfg.gamma_T) if cfg.gamma_T > 0.0 else 0.0
    xi = (decay / (1.0 - phi) - 1.0) / (lam_tr * gamma_0)
    if scheme is Scheme.MIS:
        xi *= cfg.K
    if xi <= 0.0:
        return PowerBudget(xi=0.0, gamma_S=0.0, active=False)
    return PowerBudget(xi=xi, gamma_S=cfg.gamma_T * cfg.fading.lambda_sr * xi, active=True)


def _sd_terms(scheme: Scheme, cfg: SystemConfig, budget: PowerBudget):
    """Weight, pole, and exponential rate of each term of P[SINR_D > x].

    The complementary CDF of the destination SINR, conditioned on a delivered
    backhaul message, is sum_k w_k * p_k/(x + p_k) * exp(-r_k x).
    """
    lam_sd, lam_td = cfg.fading.lambda_sd, cfg.fading.lambda_td
    gs, gt = budget.gamma_S, cfg.gamma_T
    if scheme is Scheme.STS:
        terms = []
        for k in range(1, cfg.K + 1):
            w = math.comb(cfg.K, k) * (-1.0) ** (k + 1)
            pole = lam_td * gs / (k * lam_sd * gt)
            terms.append((w, pole, k * lam_sd / gs))
        return terms
    if scheme in (Scheme.MIS, Scheme.MES):
        pole = lam_td * gs / (lam_sd * gt)
        return [(1.0, pole, lam_sd / gs)]
    raise ValueError(f"no closed-form destination distribution for scheme {scheme}")


def cdf_sinr_sd(scheme: Scheme, cfg: SystemConfig, budget: PowerBudget, x: float) -> float:
    """CDF of the destination SINR, including the backhaul point mass at zero.

    Valid for STS, MIS, and MES; the optimal scheme couples the destination
    and eavesdropper links and has no closed form, so it raises ValueError.
    Values lie in [1 - backhaul_reliability, 1) for x >= 0.
    """
    if scheme is Scheme.OS:
        raise ValueError("destination SINR of the optimal scheme has no closed-form CDF")
    if x < 0.0:
        return 0.0
    lam = cfg.backhaul_reliability
    if not budget.active:
        return 1.0  # silent secondary: SINR is identically zero
    sf = 0.0
    for w, pole, rate in _sd_terms(scheme, cfg, budget):
        sf += w * pole / (x + pole) * math.exp(-rate * x)
    return (1.0 - lam) + lam * (1.0 - sf)


def pdf_sinr_se(scheme: Scheme, cfg: SystemConfig, budget: PowerBudget, x: float) -> float:
    """PDF of the eavesdropper SINR for the scheduled transmitter.

    MES conditions the eavesdropper channel on being the weakest of K, which
    scales its rate parameter by K; STS and MIS leave it unconditioned. The
    optimal scheme raises ValueError (no closed form), as does an inactive
    budget (the SINR degenerates to a point mass at zero).
    """
    if scheme is Scheme.OS:
        raise ValueError("eavesdropper SINR of the optimal scheme has no closed-form PDF")
    if not budget.active:
        raise ValueError("eavesdropper SINR is a point mass at zero when the budget is inactive")
    if x < 0.0:
        return 0.0
    lam_e = cfg.K * cfg.fading.lambda_se if scheme is Scheme.MES else cfg.fading.lambda_se
    gs, gt = budget.gamma_S, cfg.gamma_T
    b = cfg.fading.lambda_te * gs / (lam_e * gt)
    return math.exp(-lam_e * x / gs) * (lam_e / gs * b / (x + b) + b / (x + b) ** 2)


def cdf_sinr_tr(scheme: Scheme, cfg: SystemConfig, budget: PowerBudget, x: float) -> float:
    """CDF of the primary receiver SINR under secondary interference.

    MIS schedules the least-interfering transmitter (rate parameter K times
    larger); all other schemes interfere through an unconditioned channel.
    When the budget is inactive the secondary is silent and the primary link
    is interference-free. At the protection threshold the active-case CDF
    equals primary_qos exactly, by construction of the budget.
    """
    if x < 0.0:
        return 0.0
    if cfg.gamma_T == 0.0:
        return 1.0  # no primary power: SINR identically zero
    lam_tr, gt = cfg.fading.lambda_tr, cfg.gamma_T
    if not budget.active:
        return 1.0 - math.exp(-lam_tr * x / gt)
    lam_i = cfg.K * cfg.fading.lambda_sr if scheme is Scheme.MIS else cfg.fading.lambda_sr
    a = lam_i * gt / (lam_tr * budget.gamma_S)
    return 1.0 - a / (x + a) * math.exp(-lam_tr * x / gt)
