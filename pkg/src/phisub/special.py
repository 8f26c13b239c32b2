"""Upper incomplete gamma function, self-contained.

Gamma(s, x) = integral_x^inf t^(s-1) e^(-t) dt  for s > 0, x >= 0.

Evaluation follows the classic split: a continued fraction (modified Lentz)
for x >= s + 1, and Gamma(s) minus the lower-gamma power series otherwise.
Both routes carry the e^(-x) x^s prefactor explicitly, so the result is the
unnormalized function (scipy's gammaincc(s, x) * Gamma(s)).
"""

from __future__ import annotations

import math

from .exceptions import NumericError

_MAX_ITER = 400
_EPS = 1e-15
_TINY = 1e-300


def upper_incomplete_gamma(s: float, x: float) -> float:
    """Unnormalized upper incomplete gamma Gamma(s, x)."""
    if not (s > 0.0) or not math.isfinite(s):
        raise ValueError(f"shape parameter must be positive and finite, got {s}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise ValueError(f"lower limit must be nonnegative and finite, got {x}")
    if s > 170.0:
        # Gamma(s) overflows double precision just above 171
        raise NumericError(f"shape {s} too large for unnormalized evaluation")
    if x == 0.0:
        return math.gamma(s)
    # prefactor x^s e^(-x); underflows cleanly to 0 for very large x
    log_pre = s * math.log(x) - x
    if log_pre < -745.0:
        return 0.0
    pre = math.exp(log_pre)
    if x >= s + 1.0:
        return pre * _upper_continued_fraction(s, x)
    return math.gamma(s) - pre * _lower_series(s, x)


def _upper_continued_fraction(s: float, x: float) -> float:
    """Continued fraction for Gamma(s,x)/(x^s e^-x), modified Lentz method.

    b0 = x + 1 - s, a_j = -j (j - s), b_j = b0 + 2j.
    """
    b = x + 1.0 - s
    c = 1.0 / _TINY
    d = 1.0 / b if b != 0.0 else 1.0 / _TINY
    f = d
    for j in range(1, _MAX_ITER + 1):
        a = -j * (j - s)
        b += 2.0
        d = a * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + a / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        f *= delta
        if abs(delta - 1.0) < _EPS:
            return f
    raise NumericError(f"continued fraction for Gamma({s}, {x}) did not converge")


def _lower_series(s: float, x: float) -> float:
    """Series for gamma_lower(s,x)/(x^s e^-x) = sum_n x^n / (s (s+1) ... (s+n))."""
    term = 1.0 / s
    total = term
    denom = s
    for _ in range(_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _EPS:
            return total
    raise NumericError(f"series for gamma({s}, {x}) did not converge")
