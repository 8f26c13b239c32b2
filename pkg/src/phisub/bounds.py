"""Closed-form tail bounds and the summability of the bound series.

Everything descends from one inequality: if tau <= C then

    P(|xi| >= eps) <= 2 exp(-phi_q(eps / C)),        1/p + 1/q = 1.

Specializing C to the norm-growth hypothesis tau(S_n) <= c n^(1-alpha) at
level n*eps gives the partial-sum bound with its explicit constants; the
Marcinkiewicz-Zygmund variant uses C = n^(1/r) b at level n^(1/s) eps.  Both
return the trivial bound 1 below the validity threshold of the closed form
(where the power branch of phi_q is not in force), carrying a machine-
readable flag instead of an unlicensed number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .nfunctions import PIndex, as_pindex, conjugate_index, phi_p_eval
from .exceptions import NumericError
from .special import upper_incomplete_gamma

MEAN_SCALE = "mean"   # event |S_n| >= n * eps
MZ_SCALE = "mz"       # event |S_n| >= n^(1/s) * eps
RAW_SCALE = "raw"     # event |xi|  >= eps

_NORMALIZATIONS = (MEAN_SCALE, MZ_SCALE, RAW_SCALE)

# least-squares alpha below this is indistinguishable from 0 in float
_ALPHA_MIN = 1e-9

_EXPLICIT_TERM_CAP = 200_000
_TERM_FLOOR = 1e-300


@dataclass(frozen=True)
class SllnBoundParams:
    """Norm-growth hypothesis tau(S_n) <= c * n^(1-alpha) for all n >= 1."""

    c: float
    alpha: float
    p: PIndex

    def __post_init__(self):
        object.__setattr__(self, "p", as_pindex(self.p))
        if not (self.c > 0.0 and math.isfinite(self.c)):
            raise ValueError(f"c must be positive, got {self.c}")
        if not (self.alpha > 0.0 and math.isfinite(self.alpha)):
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.p.p <= 1.0:
            raise ValueError("partial-sum bounds need p > 1")


@dataclass(frozen=True)
class MzParams:
    """Uniform per-term norm bound b = sup_n tau(xi_n) and rate exponent s.

    The admissible power is r = min(p, 2); the bound requires 0 < s < r.
    """

    b: float
    s: float
    p: PIndex

    def __post_init__(self):
        object.__setattr__(self, "p", as_pindex(self.p))
        if not (self.b > 0.0 and math.isfinite(self.b)):
            raise ValueError(f"b must be positive, got {self.b}")
        if self.p.p <= 1.0:
            raise ValueError("Marcinkiewicz-Zygmund bounds need p > 1")
        if not (0.0 < self.s < self.r):
            raise ValueError(
                f"need 0 < s < r = min(p, 2) = {self.r}, got s = {self.s}")

    @property
    def r(self) -> float:
        return min(self.p.p, 2.0)


@dataclass(frozen=True)
class TailQuery:
    """Deviation level and sequence index, plus how the level scales with n."""

    epsilon: float
    n: int
    normalization: str = MEAN_SCALE

    def __post_init__(self):
        if not (self.epsilon > 0.0 and math.isfinite(self.epsilon)):
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 1):
            raise ValueError(f"n must be a positive integer, got {self.n}")
        if self.normalization not in _NORMALIZATIONS:
            raise ValueError(f"unknown normalization {self.normalization!r}")


@dataclass(frozen=True)
class BoundValue:
    """A probability bound plus whether the closed form was licensed at (eps, n)."""

    value: float
    valid: bool


def tail_bound(p, C: float, epsilon: float) -> float:
    """Generic tail bound min(1, 2 exp(-phi_q(eps/C))) for any tau upper bound C.

    Monotone decreasing in eps and increasing in C; C = 0 means the variable
    is a.s. zero, so the tail probability is 0 for any eps > 0.
    """
    pi = as_pindex(p)
    if pi.p == 1.0:
        raise ValueError("tail bound needs p > 1 (conjugate exponent diverges at p = 1)")
    if not (epsilon > 0.0 and math.isfinite(epsilon)):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    if not (C >= 0.0 and math.isfinite(C)):
        raise ValueError(f"norm bound must be nonnegative, got {C}")
    if C == 0.0:
        return 0.0
    q = conjugate_index(pi)
    e = phi_p_eval(q, epsilon / C)
    return min(1.0, 2.0 * math.exp(-e)) if e != math.inf else 0.0


def partial_sum_tail_bound(params: SllnBoundParams, query: TailQuery) -> BoundValue:
    """Bound on P(|S_n| >= n*eps) under tau(S_n) <= c n^(1-alpha):

        2 exp(1/q - 1/2) exp(- n^(q alpha) (eps/c)^q / q)

    valid for n > (c/eps)^(1/alpha), where the phi_q argument exceeds 1.
    Below the threshold the closed form is not licensed and the trivial
    bound 1 is returned with valid=False.
    """
    if query.normalization != MEAN_SCALE:
        raise ValueError("partial-sum bound is for the mean normalization n*eps")
    c, alpha, q = params.c, params.alpha, params.p.q
    eps, n = query.epsilon, query.n
    if n <= (c / eps) ** (1.0 / alpha):
        return BoundValue(1.0, False)
    try:
        t = (n ** (q * alpha)) * ((eps / c) ** q) / q
    except OverflowError:
        t = math.inf
    value = 0.0 if t == math.inf else 2.0 * math.exp(1.0 / q - 0.5) * math.exp(-t)
    return BoundValue(min(1.0, value), True)


def mz_tail_bound(params: MzParams, query: TailQuery) -> BoundValue:
    """Bound on P(|S_n| >= n^(1/s)*eps) under the r-power norm inequality:

        2 exp(-phi_q(n^(1/s - 1/r) eps / b)),   r = min(p, 2),

    valid for n > (b/eps)^(1/(1/s - 1/r)); trivial bound 1 with a flag below.
    """
    if query.normalization != MZ_SCALE:
        raise ValueError("MZ bound is for the n^(1/s) normalization")
    expo = 1.0 / params.s - 1.0 / params.r
    eps, n = query.epsilon, query.n
    if n <= (params.b / eps) ** (1.0 / expo):
        return BoundValue(1.0, False)
    q = conjugate_index(params.p)
    try:
        arg = (n ** expo) * eps / params.b
    except OverflowError:
        return BoundValue(0.0, True)
    e = phi_p_eval(q, arg)
    value = 0.0 if e == math.inf else 2.0 * math.exp(-e)
    return BoundValue(min(1.0, value), True)


@dataclass(frozen=True)
class SeriesReport:
    """Certified upper bound for sum_n P(|S_n| >= n*eps).

    finite is always True for valid parameters (q*alpha > 0 makes the terms
    exp(-beta n^(q alpha)) summable); upper_bound may still be inf in the
    extreme slow-decay corner where the gamma-function remainder overflows
    double precision (1/(q alpha) > 170) — the series is finite but no
    certified numeric bound fits in a float.
    """

    finite: bool
    upper_bound: float
    n0: int
    n_explicit: int
    remainder: float


def series_sum_bound(params: SllnBoundParams, epsilon: float) -> SeriesReport:
    """Upper-bound the full bound series by n0 trivial terms, an explicit
    partial sum, and an integral-test remainder in upper-incomplete-gamma
    form (substituting u = beta x^(q alpha) into the tail integral)."""
    if not (epsilon > 0.0 and math.isfinite(epsilon)):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    c, alpha, q = params.c, params.alpha, params.p.q
    gamma_exp = q * alpha
    beta = ((epsilon / c) ** q) / q
    amp = 2.0 * math.exp(1.0 / q - 0.5)

    threshold = (c / epsilon) ** (1.0 / alpha)
    if not math.isfinite(threshold):
        raise ValueError("validity threshold (c/eps)^(1/alpha) overflows")
    n0 = max(1, math.ceil(threshold))

    def term(n: int) -> float:
        try:
            t = beta * n ** gamma_exp
        except OverflowError:
            return 0.0
        return amp * math.exp(-t) if t < 745.0 else 0.0

    terms = []
    n = n0 + 1
    while n - n0 <= _EXPLICIT_TERM_CAP:
        t = term(n)
        if t < _TERM_FLOOR:
            break
        terms.append(t)
        n += 1
    n_expl = n - 1
    explicit = math.fsum(terms)

    remainder = _tail_integral(amp, beta, gamma_exp, float(n_expl))
    upper = float(n0) + explicit + remainder
    return SeriesReport(finite=True, upper_bound=upper, n0=n0,
                        n_explicit=n_expl - n0, remainder=remainder)


def _tail_integral(amp: float, beta: float, gamma_exp: float, start: float) -> float:
    """amp * integral_start^inf exp(-beta x^gamma) dx, an upper bound for the
    series tail from start+1 on (the integrand is decreasing)."""
    x_rem = beta * start ** gamma_exp
    if x_rem > 745.0:
        return 0.0  # every remaining term underflows double precision
    s = 1.0 / gamma_exp
    try:
        g = upper_incomplete_gamma(s, x_rem)
        if g == 0.0:
            return 0.0
        log_rem = math.log(amp) - math.log(gamma_exp) - s * math.log(beta) + math.log(g)
        return math.exp(log_rem) if log_rem < 709.0 else math.inf
    except NumericError:
        # conservative majorant exp(-beta N^g) * N / (g*beta*N^g - 1); valid
        # only when the denominator is positive
        denom = gamma_exp * x_rem - 1.0
        if denom > 0.0:
            return amp * math.exp(-x_rem) * start / denom
        return math.inf


@dataclass(frozen=True)
class FitResult:
    """Power-law fit tau(S_n) ~= c * n^(1-alpha); satisfied means alpha > 0
    is resolvable, i.e. the norm-growth hypothesis is consistent with the data."""

    c: float
    alpha: float
    residual: float
    satisfied: bool


def slln_condition_fit(measured_norms: Sequence[tuple[float, float]]) -> FitResult:
    """Least-squares fit of log tau = log c + (1 - alpha) log n.

    Needs at least three (n, tau) pairs with strictly increasing n and
    positive tau.  A fitted alpha at or below numeric resolution means the
    norm grows (at least) linearly — as for identical copies — and the
    hypothesis is unverifiable: satisfied=False.
    """
    if len(measured_norms) < 3:
        raise ValueError("need at least three (n, tau) pairs to fit")
    ns = np.array([float(n) for n, _ in measured_norms])
    taus = np.array([float(t) for _, t in measured_norms])
    if np.any(ns <= 0.0) or np.any(np.diff(ns) <= 0.0):
        raise ValueError("n values must be positive and strictly increasing")
    if np.any(taus <= 0.0):
        raise ValueError("tau values must be positive")
    slope, intercept = np.polyfit(np.log(ns), np.log(taus), 1)
    fit = intercept + slope * np.log(ns)
    residual = float(np.sqrt(np.mean((np.log(taus) - fit) ** 2)))
    alpha = 1.0 - float(slope)
    return FitResult(
        c=float(np.exp(intercept)),
        alpha=alpha,
        residual=residual,
        satisfied=alpha > _ALPHA_MIN,
    )
