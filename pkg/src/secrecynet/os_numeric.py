"""Numerical secrecy metrics for the optimal selection scheme.

Selecting the transmitter with the largest instantaneous secrecy rate couples
the destination and eavesdropper links, so no closed form exists. Both
metrics reduce to smooth double integrals over the two primary-interference
gains, evaluated here with an adaptive tensor Gauss-Legendre rule on the
compactified quadrant.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .model import Scheme, SystemConfig, power_budget

_NODES_LO, _WEIGHTS_LO = np.polynomial.legendre.leggauss(7)
_NODES_HI, _WEIGHTS_HI = np.polynomial.legendre.leggauss(15)


@dataclass(frozen=True)
class QuadSpec:
    """Termination controls for the adaptive quadrature."""

    rel_tol: float = 1e-8
    abs_tol: float = 1e-12
    max_subdivisions: int = 20000

    def __post_init__(self) -> None:
        if not (math.isfinite(self.rel_tol) and self.rel_tol > 0):
            raise ValueError(f"rel_tol must be finite and > 0, got {self.rel_tol!r}")
        if not (math.isfinite(self.abs_tol) and self.abs_tol > 0):
            raise ValueError(f"abs_tol must be finite and > 0, got {self.abs_tol!r}")
        if not (isinstance(self.max_subdivisions, int) and self.max_subdivisions >= 1):
            raise ValueError(
                f"max_subdivisions must be an integer >= 1, got {self.max_subdivisions!r}")


def _panel(f: Callable, t0: float, t1: float, u0: float, u1: float):
    """Integral estimate and error for f over one panel of the unit square,
    after mapping (t, u) -> (t/(1-t), u/(1-u)) onto the quadrant."""

    def tensor(nodes, weights):
        t = 0.5 * (t0 + t1) + 0.5 * (t1 - t0) * nodes
        u = 0.5 * (u0 + u1) + 0.5 * (u1 - u0) * nodes
        tt, uu = np.meshgrid(t, u, indexing="ij")
        x = tt / (1.0 - tt)
        y = uu / (1.0 - uu)
        jac = 1.0 / ((1.0 - tt) ** 2 * (1.0 - uu) ** 2)
        vals = np.asarray(f(x, y), dtype=float) * jac
        if not np.all(np.isfinite(vals)):
            raise ArithmeticError("integrand produced a non-finite value")
        scale = 0.25 * (t1 - t0) * (u1 - u0)
        return scale * float(weights @ vals @ weights)

    hi = tensor(_NODES_HI, _WEIGHTS_HI)
    lo = tensor(_NODES_LO, _WEIGHTS_LO)
    return hi, abs(hi - lo)


def integrate_quadrant(f: Callable, spec: QuadSpec = QuadSpec()) -> float:
    """Integral of f over [0, inf)^2.

    f must accept two equal-shape float arrays and return an array of the
    same shape. Panels are refined worst-error first until the summed error
    estimate meets spec, else ArithmeticError after max_subdivisions splits.
    """
    value, err = _panel(f, 0.0, 1.0, 0.0, 1.0)
    heap = [(-err, 0.0, 1.0, 0.0, 1.0, value)]
    total = value
    total_err = err
    for _ in range(spec.max_subdivisions):
        if total_err <= max(spec.abs_tol, spec.rel_tol * abs(total)):
            break
        neg_err, t0, t1, u0, u1, val = heapq.heappop(heap)
        total -= val
        total_err += neg_err
        tm, um = 0.5 * (t0 + t1), 0.5 * (u0 + u1)
        for ct0, ct1, cu0, cu1 in ((t0, tm, u0, um), (tm, t1, u0, um),
                                   (t0, tm, um, u1), (tm, t1, um, u1)):
            v, e = _panel(f, ct0, ct1, cu0, cu1)
            heapq.heappush(heap, (-e, ct0, ct1, cu0, cu1, v))
            total += v
            total_err += e
    else:
        raise ArithmeticError(
            f"quadrature did not converge within {spec.max_subdivisions} subdivisions "
            f"(error estimate {total_err:.3e})")
    # fsum is correctly rounded, so the result is independent of heap order
    return math.fsum(entry[5] for entry in heap)


def _no_secrecy_integrand(cfg: SystemConfig) -> Callable:
    """Joint density term for every transmitter offering no secrecy advantage,
    as a function of the eavesdropper-side (x) and destination-side (y)
    primary interference gains. The secondary power cancels from the
    destination-to-eavesdropper SINR ratio, so it does not appear."""
    f = cfg.fading
    gt = cfg.gamma_T

    def integrand(x, y):
        d_part = f.lambda_sd * (gt * y + 1.0)
        e_part = f.lambda_se * (gt * x + 1.0)
        return ((d_part / (d_part + e_part)) ** cfg.K
                * f.lambda_te * np.exp(-f.lambda_te * x)
                * f.lambda_td * np.exp(-f.lambda_td * y))

    return integrand


def _all_below_threshold_integrand(cfg: SystemConfig, gamma_S: float) -> Callable:
    """Joint density term for every transmitter falling short of the secrecy
    threshold, as a function of the destination-side (x) and eavesdropper-side
    (y) primary interference gains."""
    f = cfg.fading
    gt = cfg.gamma_T
    rho = 2.0**cfg.secrecy_threshold

    def integrand(x, y):
        d_scale = f.lambda_sd * (gt * x + 1.0)
        e_scale = f.lambda_se * (gt * y + 1.0)
        short = 1.0 - (e_scale / (rho * d_scale + e_scale)
                       * np.exp(-f.lambda_sd * (rho - 1.0) * (gt * x + 1.0) / gamma_S))
        return (short**cfg.K
                * f.lambda_td * np.exp(-f.lambda_td * x)
                * f.lambda_te * np.exp(-f.lambda_te * y))

    return integrand


def os_prob_nonzero_secrecy(cfg: SystemConfig, spec: QuadSpec = QuadSpec()) -> float:
    """Probability of strictly positive secrecy capacity under optimal selection."""
    budget = power_budget(Scheme.OS, cfg)
    if not budget.active:
        return 0.0
    no_adv = integrate_quadrant(_no_secrecy_integrand(cfg), spec)
    return min(1.0, max(0.0, cfg.backhaul_reliability * (1.0 - no_adv)))


def os_secrecy_outage(cfg: SystemConfig, spec: QuadSpec = QuadSpec()) -> float:
    """Secrecy outage probability under optimal selection."""
    if cfg.secrecy_threshold <= 0.0:
        raise ValueError("os_secrecy_outage requires secrecy_threshold > 0")
    budget = power_budget(Scheme.OS, cfg)
    if not budget.active:
        return 1.0
    below = integrate_quadrant(_all_below_threshold_integrand(cfg, budget.gamma_S), spec)
    return min(1.0, max(0.0, (1.0 - cfg.backhaul_reliability)
                        + cfg.backhaul_reliability * below))
