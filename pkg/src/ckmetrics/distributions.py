"""Regularized incomplete beta and the Student t / F tail probabilities
built on it."""
from __future__ import annotations

import math

from .errors import DomainError

_EPS = 1e-16
_TINY = 1e-300
_MAX_ITER = 10_000


def _beta_cf(x, a, b):
    """Continued fraction for I_x(a, b) (modified Lentz evaluation)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, _MAX_ITER + 1):
        m2 = 2 * m
        # even step
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        # odd step
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta did not converge for x={x}, a={a}, b={b}")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """I_x(a, b) for x in [0, 1] and a, b > 0."""
    if not (a > 0 and b > 0):
        raise DomainError(f"shape parameters must be positive, got a={a}, b={b}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if x == 0.0 or x == 1.0:
        return float(x)
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    # the fraction converges fast only left of the mean; use symmetry otherwise
    if x < (a + 1.0) / (a + b + 2.0):
        val = math.exp(log_front) * _beta_cf(x, a, b) / a
    else:
        val = 1.0 - math.exp(log_front) * _beta_cf(1.0 - x, b, a) / b
    return min(max(val, 0.0), 1.0)


def student_t_two_sided_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise DomainError(f"df must be positive, got {df}")
    if math.isinf(t):
        return 0.0
    t2 = t * t
    if t2 < df:
        # df/(df+t^2) is close to 1 here; evaluate the complement directly
        return 1.0 - regularized_incomplete_beta(t2 / (df + t2), 0.5, df / 2.0)
    return regularized_incomplete_beta(df / (df + t2), df / 2.0, 0.5)


def student_t_cdf(t: float, df: float) -> float:
    tail = student_t_two_sided_p(t, df) / 2.0
    return 1.0 - tail if t > 0 else tail


def f_upper_tail_p(f: float, d1: float, d2: float) -> float:
    """P(F >= f) for the F distribution with (d1, d2) degrees of freedom."""
    if d1 <= 0 or d2 <= 0:
        raise DomainError(f"degrees of freedom must be positive, got ({d1}, {d2})")
    if f < 0:
        raise DomainError(f"f must be non-negative, got {f}")
    if f == 0:
        return 1.0
    if math.isinf(f):
        return 0.0
    if d1 * f < d2:
        return 1.0 - regularized_incomplete_beta(d1 * f / (d2 + d1 * f), d1 / 2.0, d2 / 2.0)
    return regularized_incomplete_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0)
