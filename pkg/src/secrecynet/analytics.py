"""Closed-form secrecy metrics and their high-SNR asymptotes.

Every metric reduces to exponential-weighted integrals of rational functions,
which in turn are divided differences of e^z Ei(-z). The divided differences
are evaluated with explicit confluence handling so that repeated or nearly
repeated poles (which occur on every call: one pole is always squared) cost no
accuracy. The asymptotes replace the exponential weight by 1 and become
divided differences of the logarithm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import Scheme, SystemConfig, _sd_terms, gamma_threshold, power_budget
from .specfun import scaled_ei

_DD1_SWITCH = 1e-5  # relative node separation below which dd1 uses the series
_DD2_SWITCH = 1e-2  # same for dd2
_ASY_SWITCH = 40.0  # derivatives switch to the asymptotic series beyond this


def _g_derivs(z: float, order: int) -> list[float]:
    """scaled_ei and its derivatives up to the given order at z > 0.

    Below _ASY_SWITCH the recurrence g^(m) = g^(m-1) + (-1)^(m-1) (m-1)!/z^m
    is stable. Beyond it the recurrence cancels catastrophically, but the
    alternating asymptotic series sum_i (-1)^i (m+i)!/z^(m+i+1) truncated at
    its smallest term is accurate to far below 1e-12 there.
    """
    if z < _ASY_SWITCH:
        vals = [scaled_ei(z)]
        sign, fact, pw = 1.0, 1.0, z
        for m in range(1, order + 1):
            vals.append(vals[-1] + sign * fact / pw)
            sign = -sign
            fact *= m
            pw *= z
        return vals
    vals = []
    for m in range(order + 1):
        total = 0.0
        term = math.factorial(m) / z ** (m + 1)
        sign = 1.0
        i = 0
        while True:
            total += sign * term
            nxt = term * (m + i + 1) / z
            if nxt >= term or nxt < 1e-18 * abs(total):
                break
            term = nxt
            sign = -sign
            i += 1
        vals.append(total if m % 2 == 1 else -total)
    return vals


def _dd1(z1: float, z2: float) -> float:
    """First divided difference of scaled_ei over two positive nodes."""
    if abs(z1 - z2) >= _DD1_SWITCH * max(abs(z1), abs(z2)):
        return (scaled_ei(z1) - scaled_ei(z2)) / (z1 - z2)
    zm = 0.5 * (z1 + z2)
    h = 0.5 * (z2 - z1)
    d = _g_derivs(zm, 3)
    return d[1] + h * h / 6.0 * d[3]


def _dd2(z1: float, z2: float, z3: float) -> float:
    """Second divided difference of scaled_ei over three positive nodes."""
    lo, mid, hi = sorted((z1, z2, z3))
    if hi - lo >= _DD2_SWITCH * hi:
        return (_dd1(lo, mid) - _dd1(mid, hi)) / (lo - hi)
    zm = (lo + mid + hi) / 3.0
    d1, d2, d3 = lo - zm, mid - zm, hi - zm
    p2 = d1 * d1 + d2 * d2 + d3 * d3
    p3 = d1**3 + d2**3 + d3**3
    p4 = d1**4 + d2**4 + d3**4
    # complete homogeneous symmetric polynomials with sum of offsets = 0
    h2 = 0.5 * p2
    h3 = p3 / 3.0
    h4 = 0.125 * p2 * p2 + 0.25 * p4
    d = _g_derivs(zm, 6)
    return d[2] / 2.0 + d[4] * h2 / 24.0 + d[5] * h3 / 120.0 + d[6] * h4 / 720.0


def _ld1(z1: float, z2: float) -> float:
    """First divided difference of ln, exact at any separation."""
    if z1 == z2:
        return 1.0 / z1
    zm = 0.5 * (z1 + z2)
    h = 0.5 * (z2 - z1)
    return math.atanh(h / zm) / h


def _ld2(z1: float, z2: float, z3: float) -> float:
    """Second divided difference of ln over three positive nodes."""
    lo, mid, hi = sorted((z1, z2, z3))
    if hi - lo >= _DD2_SWITCH * hi:
        return (_ld1(lo, mid) - _ld1(mid, hi)) / (lo - hi)
    zm = (lo + mid + hi) / 3.0
    d1, d2, d3 = lo - zm, mid - zm, hi - zm
    p2 = d1 * d1 + d2 * d2 + d3 * d3
    p3 = d1**3 + d2**3 + d3**3
    p4 = d1**4 + d2**4 + d3**4
    h2 = 0.5 * p2
    h3 = p3 / 3.0
    h4 = 0.125 * p2 * p2 + 0.25 * p4
    # ln^(m)(z) = (-1)^(m-1) (m-1)!/z^m
    return (-1.0 / (2.0 * zm**2) + 6.0 * h2 / (24.0 * zm**4)
            - 24.0 * h3 / (120.0 * zm**5) + 120.0 * h4 / (720.0 * zm**6))


@dataclass(frozen=True)
class KernelParams:
    """Pole pair and exponential rate of the two secrecy kernels."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"KernelParams.{name} must be finite and > 0, got {v!r}")


def kernel_I1(p: KernelParams) -> float:
    """int_0^inf exp(-c x) / ((x+a)(x+b)) dx."""
    return p.c * _dd1(p.a * p.c, p.b * p.c)


def kernel_I2(p: KernelParams) -> float:
    """int_0^inf exp(-c x) / ((x+a)(x+b)^2) dx."""
    return -p.c * p.c * _dd2(p.a * p.c, p.b * p.c, p.b * p.c)


def _require_pos(name: str, v: float) -> None:
    if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
        raise ValueError(f"{name} must be finite and > 0, got {v!r}")


def erg_kernel_I1(b: float, c1: float) -> float:
    """int_0^inf b exp(-c1 x) / ((x+1)(x+b)) dx, the direct ergodic term."""
    _require_pos("b", b)
    _require_pos("c1", c1)
    return b * c1 * _dd1(c1, b * c1)


def erg_kernel_I2(a: float, b: float, c2: float) -> float:
    """-int_0^inf a b exp(-c2 x) / ((x+1)(x+a)(x+b)) dx, the (negative)
    eavesdropper coupling term of the ergodic capacity."""
    _require_pos("a", a)
    _require_pos("b", b)
    _require_pos("c2", c2)
    return a * b * c2 * c2 * _dd2(c2, a * c2, b * c2)


@dataclass(frozen=True)
class SecrecyMetrics:
    """Bundle of the three secrecy metrics at one operating point."""

    prob_nonzero: float
    sop: float
    ergodic_capacity: float | None = None


def _eaves_params(scheme: Scheme, cfg: SystemConfig, gamma_S: float) -> tuple[float, float]:
    """Eavesdropper rate parameter and pole: MES picks the weakest of K
    eavesdropper channels, every other scheme an unconditioned one."""
    lam_e = cfg.K * cfg.fading.lambda_se if scheme is Scheme.MES else cfg.fading.lambda_se
    b_pole = cfg.fading.lambda_te * gamma_S / (lam_e * cfg.gamma_T)
    return lam_e, b_pole


def _require_closed_form(scheme: Scheme) -> None:
    if scheme not in (Scheme.STS, Scheme.MIS, Scheme.MES):
        raise ValueError(
            f"no closed form for scheme {scheme}; use os_numeric for the optimal scheme")


def prob_nonzero_secrecy(scheme: Scheme, cfg: SystemConfig) -> float:
    """Probability of a strictly positive secrecy capacity."""
    _require_closed_form(scheme)
    budget = power_budget(scheme, cfg)
    if not budget.active:
        return 0.0
    lam_e, b_pole = _eaves_params(scheme, cfg, budget.gamma_S)
    lam_te_over_gt = cfg.fading.lambda_te / cfg.gamma_T
    total = 0.0
    for w, pole, rd in _sd_terms(scheme, cfg, budget):
        p = KernelParams(a=pole, b=b_pole, c=rd + lam_e / budget.gamma_S)
        total += w * pole * (lam_te_over_gt * kernel_I1(p) + b_pole * kernel_I2(p))
    return min(1.0, max(0.0, cfg.backhaul_reliability * total))


def secrecy_outage_prob(scheme: Scheme, cfg: SystemConfig) -> float:
    """Probability that the secrecy capacity falls below secrecy_threshold."""
    _require_closed_form(scheme)
    if cfg.secrecy_threshold <= 0.0:
        raise ValueError("secrecy_outage_prob requires secrecy_threshold > 0")
    budget = power_budget(scheme, cfg)
    if not budget.active:
        return 1.0
    rho = 2.0**cfg.secrecy_threshold
    lam_e, b_pole = _eaves_params(scheme, cfg, budget.gamma_S)
    lam_te_over_gt = cfg.fading.lambda_te / cfg.gamma_T
    total = 0.0
    for w, pole, rd in _sd_terms(scheme, cfg, budget):
        p = KernelParams(a=(rho - 1.0 + pole) / rho, b=b_pole,
                         c=rho * rd + lam_e / budget.gamma_S)
        total += (w * math.exp(-rd * (rho - 1.0)) * pole / rho
                  * (lam_te_over_gt * kernel_I1(p) + b_pole * kernel_I2(p)))
    return min(1.0, max(0.0, 1.0 - cfg.backhaul_reliability * total))


def ergodic_secrecy_capacity(scheme: Scheme, cfg: SystemConfig) -> float:
    """Mean secrecy rate E[(log2((1+SINR_D)/(1+SINR_E)))^+] in bits/s/Hz."""
    _require_closed_form(scheme)
    budget = power_budget(scheme, cfg)
    if not budget.active:
        return 0.0
    lam_e, b_pole = _eaves_params(scheme, cfg, budget.gamma_S)
    total = 0.0
    for w, pole, rd in _sd_terms(scheme, cfg, budget):
        total += w * (erg_kernel_I1(pole, rd)
                      + erg_kernel_I2(b_pole, pole, rd + lam_e / budget.gamma_S))
    return max(0.0, cfg.backhaul_reliability * total / math.log(2.0))


def secrecy_metrics(scheme: Scheme, cfg: SystemConfig,
                    include_ergodic: bool = True) -> SecrecyMetrics:
    """All closed-form metrics at one operating point."""
    return SecrecyMetrics(
        prob_nonzero=prob_nonzero_secrecy(scheme, cfg),
        sop=secrecy_outage_prob(scheme, cfg),
        ergodic_capacity=ergodic_secrecy_capacity(scheme, cfg) if include_ergodic else None)


def _pole_integral(a: float, b: float) -> float:
    """int_0^inf dx / ((x+a)(x+b)^2), the high-SNR kernel limit."""
    return -_ld2(a, b, b)


def _asym_power_scale(scheme: Scheme, cfg: SystemConfig) -> float:
    """High-SNR limit of gamma_S/gamma_T: the budget saturates at a constant."""
    gamma_0 = gamma_threshold(cfg.primary_rate)
    xi = cfg.primary_qos / ((1.0 - cfg.primary_qos) * cfg.fading.lambda_tr * gamma_0)
    if scheme is Scheme.MIS:
        xi *= cfg.K
    return cfg.fading.lambda_sr * xi


def asym_prob_nonzero(scheme: Scheme, cfg: SystemConfig) -> float:
    """High-SNR asymptote of the nonzero-secrecy probability.

    Independent of gamma_T: both links scale with the same transmit power, so
    the metric saturates. For the optimal scheme this is the independent-branch
    approximation, accurate when the eavesdropper channel is weak.
    """
    f = cfg.fading
    lam = cfg.backhaul_reliability
    r = _asym_power_scale(scheme, cfg)
    if scheme is Scheme.OS:
        a = f.lambda_td * r / f.lambda_sd
        b = f.lambda_te * r / f.lambda_se
        return 1.0 - (1.0 - lam * a * b * _pole_integral(a, b)) ** cfg.K
    lam_e = cfg.K * f.lambda_se if scheme is Scheme.MES else f.lambda_se
    b = f.lambda_te * r / lam_e
    if scheme is Scheme.STS:
        total = 0.0
        for k in range(1, cfg.K + 1):
            w = math.comb(cfg.K, k) * (-1.0) ** (k + 1)
            a_k = f.lambda_td * r / (k * f.lambda_sd)
            total += w * a_k * b * _pole_integral(a_k, b)
        return lam * total
    a = f.lambda_td * r / f.lambda_sd
    return lam * a * b * _pole_integral(a, b)


def asym_sop(scheme: Scheme, cfg: SystemConfig) -> float:
    """High-SNR asymptote of the secrecy outage probability."""
    if cfg.secrecy_threshold <= 0.0:
        raise ValueError("asym_sop requires secrecy_threshold > 0")
    f = cfg.fading
    lam = cfg.backhaul_reliability
    rho = 2.0**cfg.secrecy_threshold
    r = _asym_power_scale(scheme, cfg)
    if scheme is Scheme.OS:
        amp = f.lambda_td * r / (rho * f.lambda_sd)
        a = ((rho - 1.0) * f.lambda_sd + f.lambda_td * r) / (rho * f.lambda_sd)
        b = f.lambda_te * r / f.lambda_se
        return (1.0 - lam * amp * b * _pole_integral(a, b)) ** cfg.K
    lam_e = cfg.K * f.lambda_se if scheme is Scheme.MES else f.lambda_se
    b = f.lambda_te * r / lam_e
    if scheme is Scheme.STS:
        total = 0.0
        for k in range(1, cfg.K + 1):
            w = math.comb(cfg.K, k) * (-1.0) ** (k + 1)
            amp_k = f.lambda_td * r / (k * rho * f.lambda_sd)
            a_k = (k * (rho - 1.0) * f.lambda_sd + f.lambda_td * r) / (k * rho * f.lambda_sd)
            total += w * amp_k * b * _pole_integral(a_k, b)
        return 1.0 - lam * total
    amp = f.lambda_td * r / (rho * f.lambda_sd)
    a = ((rho - 1.0) * f.lambda_sd + f.lambda_td * r) / (rho * f.lambda_sd)
    return 1.0 - lam * amp * b * _pole_integral(a, b)


def _erg_limit_term(a: float, b: float) -> float:
    """High-SNR limit of erg_kernel_I1(b, .) + erg_kernel_I2(a, b, .)."""
    return b * _ld1(1.0, b) + a * b * _ld2(1.0, a, b)


def asym_ergodic(scheme: Scheme, cfg: SystemConfig) -> float:
    """High-SNR asymptote of the ergodic secrecy capacity (no optimal scheme:
    its ergodic capacity has no closed form at any SNR)."""
    _require_closed_form(scheme)
    f = cfg.fading
    r = _asym_power_scale(scheme, cfg)
    lam_e = cfg.K * f.lambda_se if scheme is Scheme.MES else f.lambda_se
    a = f.lambda_te * r / lam_e
    if scheme is Scheme.STS:
        total = 0.0
        for k in range(1, cfg.K + 1):
            w = math.comb(cfg.K, k) * (-1.0) ** (k + 1)
            b_k = f.lambda_td * r / (k * f.lambda_sd)
            total += w * _erg_limit_term(a, b_k)
        return max(0.0, cfg.backhaul_reliability * total / math.log(2.0))
    b = f.lambda_td * r / f.lambda_sd
    return max(0.0, cfg.backhaul_reliability * _erg_limit_term(a, b) / math.log(2.0))
