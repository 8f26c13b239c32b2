"""Cumulant generating functions psi(lambda) = ln E exp(lambda * xi).

A small catalog of centered models backs the norm solver: closed forms
(Gaussian, symmetric signs, centered uniform, the Hoeffding majorant for
bounded variables), one quadrature-backed entry (powers of |g| for standard
Gaussian g, recentred), and an empirical estimator over observed samples.

Every model satisfies psi(0) = 0, psi convex, psi'(0) = 0 (centering);
the test suite probes all three.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.integrate import IntegrationWarning, quad
from scipy.special import erfc, logsumexp

from .exceptions import QuadratureError
from .nfunctions import PIndex, as_pindex

# Empirical MGFs are unreliable once lambda * (sample deviation) is large:
# a handful of extreme samples dominates the sum.  30 keeps exp() well inside
# range while bounding the undersampling exposure.
EMPIRICAL_EXPONENT_CAP = 30.0


class CgfModel:
    """Base interface: a source of cumulant generating function values."""

    label: str = "?"

    def value(self, lam: float) -> float:
        raise NotImplementedError

    def variance(self) -> float:
        """Exact psi''(0) where the catalog knows it."""
        raise NotImplementedError

    def exact_tau(self, p: PIndex) -> float | None:
        """Closed-form tau norm, when one exists for this (model, p)."""
        return None

    def stability_window(self) -> tuple[float, float]:
        """Symmetric lambda interval on which value() is trustworthy."""
        return (-math.inf, math.inf)

    def params(self) -> dict:
        return {}


def cgf_eval(model: CgfModel, lam: float) -> float:
    """Evaluate psi(lambda) for any catalog model."""
    if not math.isfinite(lam):
        raise ValueError(f"lambda must be finite, got {lam}")
    return model.value(lam)


@dataclass(frozen=True)
class GaussianCgf(CgfModel):
    """Centered Gaussian with standard deviation sigma: psi = sigma^2 lambda^2 / 2."""

    sigma: float
    label = "gaussian"

    def __post_init__(self):
        if not (self.sigma >= 0.0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be a nonnegative real, got {self.sigma}")

    def value(self, lam: float) -> float:
        t = self.sigma * lam
        return 0.5 * t * t

    def variance(self) -> float:
        return self.sigma * self.sigma

    def exact_tau(self, p: PIndex) -> float | None:
        # psi(lam) = phi_2(sigma*lam) exactly, so the infimum is attained
        return self.sigma if p.p == 2.0 else None

    def params(self) -> dict:
        return {"sigma": self.sigma}


@dataclass(frozen=True)
class RademacherCgf(CgfModel):
    """Symmetric +-1 variable: psi = ln cosh lambda."""

    label = "rademacher"

    def value(self, lam: float) -> float:
        t = abs(lam)
        if t > 20.0:
            return t - math.log(2.0) + math.log1p(math.exp(-2.0 * t))
        return math.log(math.cosh(t))

    def variance(self) -> float:
        return 1.0


@dataclass(frozen=True)
class CenteredUniformCgf(CgfModel):
    """Uniform on [-h, h]: psi = ln(sinh(h lambda)/(h lambda)), 0 at lambda = 0."""

    half_width: float
    label = "centered-uniform"

    def __post_init__(self):
        if not (self.half_width > 0.0 and math.isfinite(self.half_width)):
            raise ValueError(f"half-width must be positive, got {self.half_width}")

    def value(self, lam: float) -> float:
        t = abs(self.half_width * lam)
        if t == 0.0:
            return 0.0
        if t < 0.05:
            t2 = t * t
            return t2 / 6.0 - t2 * t2 / 180.0
        if t > 30.0:
            return t - math.log(2.0 * t) + math.log1p(-math.exp(-2.0 * t))
        return math.log(math.sinh(t) / t)

    def variance(self) -> float:
        return self.half_width * self.half_width / 3.0

    def params(self) -> dict:
        return {"half_width": self.half_width}


@dataclass(frozen=True)
class BoundedCenteredCgf(CgfModel):
    """Hoeffding majorant for |xi| <= d, E xi = 0: psi <= d^2 lambda^2 / 2.

    Represents the bound itself, not a particular distribution; tau norms
    computed from it are upper bounds for every such variable.
    """

    bound: float
    label = "bounded-centered"

    def __post_init__(self):
        if not (self.bound > 0.0 and math.isfinite(self.bound)):
            raise ValueError(f"bound must be positive, got {self.bound}")

    def value(self, lam: float) -> float:
        t = self.bound * lam
        return 0.5 * t * t

    def variance(self) -> float:
        return self.bound * self.bound

    def exact_tau(self, p: PIndex) -> float | None:
        return self.bound if p.p == 2.0 else None

    def params(self) -> dict:
        return {"bound": self.bound}


def _log_window_integral(g, gp, peak: float, noise_scale: float,
                         drop: float = 60.0) -> float:
    """ln integral_0^inf e^g for concave g with maximum at `peak` (>= 0).

    Integrates e^(g - M) on the window where g stays within `drop` of the
    max M = g(peak); the window edges come from bisection (g is monotone on
    each side of the peak) and the clipped tails are *added* via the
    linear-decay majorant e^(g(edge) - M) / |g'(edge)|, never assumed away.

    noise_scale is the magnitude of the largest term inside g at the peak:
    the components of g cancel to machine ulps of that term, an evaluation
    noise floor no quadrature can beat, so the error gate allows it.
    """
    shift = g(peak)

    hi = peak + 1.0
    for _ in range(200):
        if g(hi) - shift <= -drop:
            break
        hi *= 2.0
    else:
        raise QuadratureError("window search failed: log-integrand does not decay")
    lo_b = max(peak, hi / 2.0)
    for _ in range(100):
        mid = 0.5 * (lo_b + hi)
        if mid == lo_b or mid == hi:
            break
        if g(mid) - shift > -drop:
            lo_b = mid
        else:
            hi = mid
    hi2 = hi
    right_tail = math.exp(g(hi2) - shift) / max(abs(gp(hi2)), 1e-300)

    lo2 = 0.0
    left_tail = 0.0
    if peak > 0.0 and g(0.0) - shift < -drop:
        lo_a, lo_c = 0.0, peak
        for _ in range(100):
            mid = 0.5 * (lo_a + lo_c)
            if mid == lo_a or mid == lo_c:
                break
            if g(mid) - shift <= -drop:
                lo_a = mid
            else:
                lo_c = mid
        lo2 = lo_a
        if lo2 > 0.0:
            density = math.exp(g(lo2) - shift)
            slope = gp(lo2)
            left_tail = min(density / slope, lo2 * density) if slope > 0.0 \
                else lo2 * density

    points = [peak] if lo2 < peak < hi2 else None
    with warnings.catch_warnings():
        # the explicit error-estimate gate below supersedes QUADPACK's
        # roundoff warning
        warnings.simplefilter("ignore", IntegrationWarning)
        # min() guards exp overflow if float noise pushes g a hair above shift
        integral, err = quad(lambda x: math.exp(min(g(x) - shift, 50.0)), lo2, hi2,
                             points=points, limit=200, epsabs=0.0, epsrel=1e-11)
    noise = 32.0 * 2.220446049250313e-16 * max(1.0, noise_scale)
    if not (integral > 0.0) or err > (1e-8 + noise) * integral:
        raise QuadratureError(f"quadrature error estimate {err} too large")
    return shift + math.log(integral + left_tail + right_tail)


@dataclass(frozen=True)
class AbsGaussianPowerCgf(CgfModel):
    """xi = |g|^a - E|g|^a for standard Gaussian g and 0 < a < 2.

    psi(lambda) = ln E exp(lambda |g|^a) - lambda E|g|^a, evaluated by
    adaptive Gauss-Kronrod quadrature on a finite window [0, X] in a
    log-shifted frame (the integrand peak can be astronomically large),
    plus an analytic Gaussian-tail majorant for the remainder beyond X.
    """

    exponent: float
    label = "abs-gaussian-power"

    def __post_init__(self):
        if not (0.0 < self.exponent < 2.0):
            raise ValueError(
                f"exponent must lie in (0, 2) for a finite MGF, got {self.exponent}")

    @property
    def mean(self) -> float:
        """E|g|^a = 2^(a/2) Gamma((a+1)/2) / sqrt(pi)."""
        a = self.exponent
        return 2.0 ** (a / 2.0) * math.gamma((a + 1.0) / 2.0) / math.sqrt(math.pi)

    def variance(self) -> float:
        a = self.exponent
        second = 2.0 ** a * math.gamma(a + 0.5) / math.sqrt(math.pi)
        return second - self.mean ** 2

    def value(self, lam: float) -> float:
        if lam == 0.0:
            return 0.0
        return self._log_abs_power_mgf(lam) - lam * self.mean

    def _log_abs_power_mgf(self, lam: float) -> float:
        """ln E exp(lam |g|^a) via shifted quadrature of a concave log-integrand.

        Default frame: ln integrand h(x) = lam x^a - x^2/2 on (0, inf) with
        the half-Gaussian prefactor.  For lam < 0 with a < 1 the x^a cusp at
        the origin is removed by substituting u = x^a, giving the equally
        concave  (1/a - 1) ln u + lam u - u^(2/a)/2.
        """
        a = self.exponent
        if lam < 0.0 and a < 1.0:
            c = 1.0 / a - 1.0

            def g(u):
                return c * math.log(u) + lam * u - 0.5 * u ** (2.0 / a) if u > 0.0 else -math.inf

            def gp(u):
                return c / u + lam - (1.0 / a) * u ** (2.0 / a - 1.0)

            # peak where gp = 0: gp is decreasing, -> +inf at 0+, and
            # provably negative at min(c/|lam|, (a c)^(a/2))
            hi = min(c / abs(lam), (a * c) ** (a / 2.0))
            lo = hi
            for _ in range(2000):
                lo *= 0.5
                if gp(lo) > 0.0:
                    break
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if gp(mid) > 0.0:
                    lo = mid
                else:
                    hi = mid
            peak = 0.5 * (lo + hi)
            scale = max(abs(lam) * peak, 0.5 * peak ** (2.0 / a),
                        abs(c * math.log(peak)))
            log_front = math.log(2.0 / math.sqrt(2.0 * math.pi) / a)
            return _log_window_integral(g, gp, peak, noise_scale=scale) + log_front

        def h(x):
            return lam * x ** a - 0.5 * x * x if x > 0.0 else 0.0

        def hp(x):
            return a * lam * x ** (a - 1.0) - x

        peak = (a * lam) ** (1.0 / (2.0 - a)) if lam > 0.0 else 0.0
        if peak > 1e5:
            # Laplace regime: h's terms at the peak exceed 1e10, so float
            # evaluation of h is ulp noise there, while the saddle-point
            # value M + ln(2/sqrt(2-a)) (|h''| = 2-a exactly at the peak) has
            # relative error O(peak^-2) <= 1e-10 plus an exponentially small
            # half-line truncation
            m_peak = h(peak)
            if not math.isfinite(m_peak):
                raise QuadratureError(
                    f"integrand peak overflows double precision at lambda={lam}")
            return m_peak + math.log(2.0 / math.sqrt(2.0 - a))
        # lam <= 0: terms inside h stay within the drop window, scale ~ 60
        scale = max(abs(lam) * peak ** a, 0.5 * peak * peak) if peak > 0.0 else 60.0
        log_front = math.log(2.0 / math.sqrt(2.0 * math.pi))
        return _log_window_integral(h, hp, peak, noise_scale=scale) + log_front

    def params(self) -> dict:
        return {"exponent": self.exponent}


@dataclass(frozen=True)
class EmpiricalCgf(CgfModel):
    """Empirical CGF of observed samples, always mean-centered.

    psi(lambda) = ln( (1/N) sum exp(lambda (x_i - xbar)) ), trusted only on
    the stability window |lambda| <= cap / max|x_i - xbar|.
    """

    samples: tuple[float, ...]
    _centered: np.ndarray = field(init=False, repr=False, compare=False)

    label = "empirical"

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=float)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("need at least two samples")
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", tuple(float(x) for x in arr))
        object.__setattr__(self, "_centered", arr - arr.mean())

    def stability_window(self) -> tuple[float, float]:
        max_dev = float(np.max(np.abs(self._centered)))
        if max_dev == 0.0:
            return (-math.inf, math.inf)
        w = EMPIRICAL_EXPONENT_CAP / max_dev
        return (-w, w)

    def value(self, lam: float) -> float:
        lo, hi = self.stability_window()
        if not (lo <= lam <= hi):
            raise ValueError(
                f"lambda={lam} outside the empirical stability window "
                f"[{lo:.6g}, {hi:.6g}]; the sample MGF is unreliable there")
        if float(np.max(np.abs(self._centered))) == 0.0:
            return 0.0
        return float(logsumexp(lam * self._centered) - math.log(self._centered.size))

    def variance(self) -> float:
        return float(np.mean(self._centered ** 2))

    def params(self) -> dict:
        return {"n_samples": len(self.samples)}


def empirical_stability_window(samples) -> tuple[float, float]:
    """Reliable lambda interval for the empirical CGF of these samples."""
    return EmpiricalCgf(tuple(np.asarray(samples, dtype=float))).stability_window()


def read_samples(path) -> np.ndarray:
    """Load one-column numeric samples: one value per line, '#' comments."""
    values = []
    text = Path(path).read_text(encoding="utf-8")
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            values.append(float(body))
        except ValueError:
            raise ValueError(f"{path}:{lineno}: not a number: {body!r}") from None
    if not values:
        raise ValueError(f"{path}: no numeric samples found")
    return np.array(values, dtype=float)


def psi_second_derivative_at_zero(model: CgfModel, h: float = 1e-3) -> float:
    """psi''(0): central second difference for analytic kinds, sample
    variance for the empirical kind (the difference quotient would be
    dominated by MGF noise there)."""
    if isinstance(model, EmpiricalCgf):
        return model.variance()
    return (model.value(h) + model.value(-h)) / (h * h)
