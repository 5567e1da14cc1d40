"""Special functions: incomplete gammas (any real first argument), E1, erf/erfc,
and the one-parameter Mittag-Leffler function on the negative real axis.

Everything here is pure float64 arithmetic built from series, continued
fractions, and the upward gamma recurrence; no external special-function
library is used in the production path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InversionInstabilityError
from .laplace import InversionConfig, gaver_stehfest, invert

__all__ = [
    "SpecFunResult",
    "upper_gamma",
    "lower_gamma",
    "exp_integral_E1",
    "erf",
    "erfc",
    "mittag_leffler_neg",
    "mittag_leffler_neg_result",
    "EULER_GAMMA",
]

EULER_GAMMA = 0.5772156649015328606

_MAX_ITER = 500
_TINY = 1e-300


@dataclass(frozen=True)
class SpecFunResult:
    """Value with an estimated absolute error bound."""

    value: float
    est_abs_error: float


def _lower_series(s: float, x: float) -> float:
    # gamma(s,x) = x^s e^-x sum_n x^n / (s(s+1)...(s+n)); s > 0, x < s+1
    term = 1.0 / s
    total = term
    for n in range(1, _MAX_ITER):
        term *= x / (s + n)
        total += term
        if abs(term) < 1e-17 * abs(total):
            return math.exp(-x + s * math.log(x)) * total
    raise DomainError(f"lower gamma series did not converge at s={s}, x={x}")


def _upper_cf(s: float, x: float) -> float:
    # Lentz continued fraction for Gamma(s,x); reliable for x > s + 1
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - s)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.exp(-x + s * math.log(x)) * h
    raise DomainError(f"upper gamma continued fraction did not converge at s={s}, x={x}")


def _upper_gamma_positive(s: float, x: float) -> float:
    if x == 0.0:
        return math.gamma(s)
    if x < s + 1.0:
        return math.gamma(s) - _lower_series(s, x)
    return _upper_cf(s, x)


def upper_gamma(s: float, x: float) -> float:
    """Upper incomplete gamma integral from ``x`` to infinity, any real ``s``.

    Negative ``s`` is reached by the upward recurrence
    ``Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s`` applied from the first
    shifted argument above zero (through E1 at integer stops).
    """
    if x < 0.0:
        raise DomainError("upper_gamma requires x >= 0")
    if x == 0.0:
        if s <= 0.0:
            raise DomainError("Gamma(s, 0) diverges for s <= 0")
        return math.gamma(s)
    # the upward recurrence cancels catastrophically within ~eps/|s - n| of a
    # nonpositive integer; snap to the integer route (E1 anchor) there
    nearest = round(s)
    if nearest <= 0 and abs(s - nearest) < 1e-9:
        s = float(nearest)
    if s > 0.0:
        return _upper_gamma_positive(s, x)
    if s == 0.0:
        return exp_integral_E1(x)
    n = math.ceil(-s)
    top = s + n  # in [0, 1)
    if top == 0.0:
        value = exp_integral_E1(x)
    else:
        value = _upper_gamma_positive(top, x)
    log_x = math.log(x)
    for k in range(1, n + 1):
        sk = top - k
        value = (value - math.exp((sk) * log_x - x)) / sk
    return value


def lower_gamma(s: float, x: float) -> float:
    """Lower incomplete gamma integral from 0 to ``x``; requires ``s`` > 0."""
    if s <= 0.0:
        raise DomainError("lower_gamma requires s > 0")
    if x < 0.0:
        raise DomainError("lower_gamma requires x >= 0")
    if x == 0.0:
        return 0.0
    if x < s + 1.0:
        return _lower_series(s, x)
    return math.gamma(s) - _upper_cf(s, x)


def exp_integral_E1(x: float) -> float:
    """Exponential integral E1(x) = Gamma(0, x) for ``x`` > 0."""
    if x <= 0.0:
        raise DomainError("exp_integral_E1 requires x > 0")
    if x <= 1.5:
        total = -EULER_GAMMA - math.log(x)
        term = 1.0
        for k in range(1, _MAX_ITER):
            term *= -x / k
            contrib = -term / k
            total += contrib
            if abs(contrib) < 1e-17 * max(abs(total), 1e-30):
                return total
        raise DomainError(f"E1 series did not converge at x={x}")
    # Lentz for E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    b = x + 1.0
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * i
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return math.exp(-x) * h
    raise DomainError(f"E1 continued fraction did not converge at x={x}")


def erf(x: float) -> float:
    """Error function via Taylor series (small x) or the erfc continued fraction."""
    if x == 0.0:
        return 0.0
    if x < 0.0:
        return -erf(-x)
    if x > 2.5:
        return 1.0 - erfc(x)
    term = x
    total = x
    for n in range(1, _MAX_ITER):
        term *= -x * x / n
        contrib = term / (2 * n + 1)
        total += contrib
        if abs(contrib) < 1e-18 * max(abs(total), 1e-30):
            return 2.0 / math.sqrt(math.pi) * total
    raise DomainError(f"erf series did not converge at x={x}")


def erfc(x: float) -> float:
    """Complementary error function, |error| well below 1e-12 on the real line."""
    if x < 2.5:
        return 1.0 - erf(x)
    # Laplace continued fraction: erfc(x) e^{x^2} sqrt(pi) = 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    b = x
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = 0.5 * i
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-17:
            return math.exp(-x * x) / math.sqrt(math.pi) * h
    raise DomainError(f"erfc continued fraction did not converge at x={x}")


def _ml_transform(alpha: float):
    # t-Laplace transform of E_alpha(-t^alpha)
    def transform(lam):
        return lam ** (alpha - 1.0) / (lam ** alpha + 1.0)

    return transform


def mittag_leffler_neg(alpha: float, y: float) -> float:
    """Mittag-Leffler value E_alpha(-y) for ``alpha`` in (0, 1] and ``y`` >= 0.

    Computed by Laplace inversion of lam^(alpha-1)/(lam^alpha + 1) at
    t = y^(1/alpha); completely monotone, with E_alpha(0) = 1.
    """
    return mittag_leffler_neg_result(alpha, y).value


def mittag_leffler_neg_result(alpha: float, y: float) -> SpecFunResult:
    """As :func:`mittag_leffler_neg` but carrying a two-method error estimate."""
    if not 0.0 < alpha <= 1.0:
        raise DomainError("mittag_leffler_neg requires alpha in (0, 1]")
    if y < 0.0:
        raise DomainError("mittag_leffler_neg requires y >= 0")
    if y == 0.0:
        return SpecFunResult(1.0, 0.0)
    t = y ** (1.0 / alpha)
    transform = _ml_transform(alpha)
    cfg = InversionConfig("talbot", 32)
    value = invert(transform, t, cfg)
    check = gaver_stehfest(transform, t, 16)
    est = abs(value - check)
    if not math.isfinite(value) or value < -1e-8 or value > 1.0 + 1e-8:
        raise InversionInstabilityError(
            f"Mittag-Leffler inversion out of range at alpha={alpha}, y={y}: "
            f"talbot={value!r} (contour scale {2 * cfg.order / (5 * t):!r}), "
            f"gaver_stehfest={check!r}"
        )
    return SpecFunResult(min(max(value, 0.0), 1.0), est)
