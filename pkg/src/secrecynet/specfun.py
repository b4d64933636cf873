"""Exponential-integral primitives used by the closed-form secrecy expressions.

Everything downstream needs Ei on the negative real axis, almost always inside
the product e^z Ei(-z) whose two factors overflow and underflow separately.
The scaled form is therefore exposed as its own function.
"""

from __future__ import annotations

import math

_EULER_GAMMA = 0.57721566490153286061
_SWITCH = 2.0  # power series at or below, continued fraction above
_MAX_TERMS = 500
_TINY = 1e-300  # Lentz underflow guard


def _ei_series(z: float) -> float:
    """Ei(-z) = gamma + ln z + sum_{n>=1} (-z)^n / (n n!) for 0 < z <= _SWITCH."""
    terms = []
    term = 1.0
    for n in range(1, _MAX_TERMS):
        term *= -z / n
        contrib = term / n
        terms.append(contrib)
        if abs(contrib) < 1e-20:
            break
    return _EULER_GAMMA + math.log(z) + math.fsum(terms)


def _e1_cf_scaled(z: float) -> float:
    """e^z E1(z) for z > _SWITCH via modified Lentz applied to the tail of
    1/(z+1 - 1^2/(z+3 - 2^2/(z+5 - ...))), so no tiny seed is needed."""
    f = z + 1.0
    c = f
    d = 0.0
    for n in range(2, _MAX_TERMS):
        a_n = -float((n - 1) * (n - 1))
        b_n = z + 2.0 * n - 1.0
        d = b_n + a_n * d
        if d == 0.0:
            d = _TINY
        c = b_n + a_n / c
        if c == 0.0:
            c = _TINY
        d = 1.0 / d
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-15:  # one ulp slack; 1e-16 can oscillate forever
            return 1.0 / f
    raise ArithmeticError(f"continued fraction for E1 did not converge at z={z!r}")


def exp_int_ei(x: float) -> float:
    """Exponential integral Ei(x) on the negative real axis.

    Raises ValueError unless x is finite and strictly negative.
    """
    x = float(x)
    if not math.isfinite(x) or x >= 0.0:
        raise ValueError(f"exp_int_ei requires finite x < 0, got {x!r}")
    z = -x
    if z <= _SWITCH:
        return _ei_series(z)
    # Ei(-z) = -E1(z); exp(-z) underflows gracefully to 0 below about z = 745.
    return -math.exp(-z) * _e1_cf_scaled(z)


def scaled_ei(z: float) -> float:
    """e^z Ei(-z) for z > 0, stable for arbitrarily large z.

    Monotone increasing from -inf toward 0- with -1/z < value < -1/(z+1).
    Raises ValueError unless z is finite and strictly positive.
    """
    z = float(z)
    if not math.isfinite(z) or z <= 0.0:
        raise ValueError(f"scaled_ei requires finite z > 0, got {z!r}")
    if z <= _SWITCH:
        return math.exp(z) * _ei_series(z)
    return -_e1_cf_scaled(z)
