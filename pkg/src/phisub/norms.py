"""The tau norm: smallest a >= 0 with psi(lambda) <= phi_p(a*lambda) for all lambda.

Since phi_p is even and increasing on [0, inf), the defining condition is
equivalent to  a >= sup_{lambda != 0} phi_p^{-1}(psi(lambda)) / |lambda|,
which is what the solver computes: a symmetric geometric lambda grid, the
extrapolated lambda -> 0 limit sqrt(psi''(0)) (exact because phi_p = x^2/2
near 0), and a local golden-section refinement around the best grid point.

Also here: the norm algebra for partial sums (triangle inequality, the
r-power inequality for independent/acceptable summands, and the
Hoeffding-Azuma upper bound for bounded martingale differences).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cgf import CgfModel, psi_second_derivative_at_zero
from .exceptions import NotPhiSubgaussianError
from .nfunctions import (
    NUMERIC_SUP,
    SolverParams,
    DEFAULT_SOLVER,
    PIndex,
    _golden_max,
    as_pindex,
    phi_p_eval,
    phi_p_inverse,
)

EXACT = "exact"
UPPER_BOUND = "upper-bound"


@dataclass(frozen=True)
class NormEstimate:
    """A tau value plus how it was obtained and solver diagnostics."""

    tau: float
    method: str  # EXACT, NUMERIC_SUP or UPPER_BOUND
    sup_location: float | None = None
    diagnostics: dict | None = None


def _ratio(model: CgfModel, p: PIndex, lam: float) -> float:
    psi = model.value(lam)
    if psi < 0.0:
        # convex psi with psi(0)=0 cannot dip below 0; tolerate rounding
        if psi < -1e-9:
            raise ValueError(f"psi({lam}) = {psi} < 0: model is not centered")
        psi = 0.0
    return phi_p_inverse(p, psi) / abs(lam)


def _check_divergence(grid, r, lam_hi, pi: PIndex, params: SolverParams) -> None:
    """Flag an unbounded supremum: the ratio still grows materially at the
    grid end AND the per-decade growth is not decaying.

    A true power-law divergence (e.g. Gaussian at p < 2, ratio ~ lambda^(2/p-1))
    grows by the same factor every decade; a ratio converging to a finite sup
    from below (e.g. recentred |g| powers) shows shrinking increments.
    """
    if r[-1] < np.max(r) or not math.isfinite(lam_hi):
        return
    k1 = min(max(int(np.searchsorted(grid, lam_hi / 10.0)), 0), len(grid) - 2)
    k2 = min(max(int(np.searchsorted(grid, lam_hi / 100.0)), 0), k1)
    if k2 >= k1 or r[k1] <= 0.0 or r[k2] <= 0.0:
        return
    g1 = r[-1] / r[k1]
    g2 = r[k1] / r[k2]
    if g1 > 1.0 + params.growth_tol and (g1 - 1.0) >= 0.8 * (g2 - 1.0):
        raise NotPhiSubgaussianError(
            f"phi_{pi.p}-subgaussian supremum diverges: ratio grew by "
            f"{g2:.4g}x then {g1:.4g}x over the last two grid decades")


def tau_norm(model: CgfModel, p, solver: SolverParams | None = None) -> NormEstimate:
    """Compute tau for a catalog CGF model at exponent p >= 1.

    Uses a closed form when the catalog has one (method "exact"), otherwise
    the grid-plus-refinement supremum (method "numeric-sup").  Raises
    NotPhiSubgaussianError when the ratio is still growing materially across
    the last decade of the grid, i.e. the supremum diverges.
    """
    pi = as_pindex(p)
    params = solver or DEFAULT_SOLVER

    if model.variance() == 0.0:
        return NormEstimate(0.0, EXACT, None, {"degenerate": True})

    exact = model.exact_tau(pi)
    if exact is not None:
        return NormEstimate(float(exact), EXACT, None, {"catalog": True})

    lo_w, hi_w = model.stability_window()
    window_limited = hi_w < params.lambda_max
    lam_hi = min(params.lambda_max, hi_w)
    lam_lo = min(params.lambda_min, lam_hi * 1e-8)
    grid = np.geomspace(lam_lo, lam_hi, params.lambda_grid_points)

    limit0 = math.sqrt(max(0.0, psi_second_derivative_at_zero(model)))
    best_tau = limit0
    best_lam = 0.0

    ratios = {}
    for sign in (1.0, -1.0):
        r = np.array([_ratio(model, pi, sign * lam) for lam in grid])
        ratios[sign] = r
        _check_divergence(grid, r, lam_hi, pi, params)
        i = int(np.argmax(r))
        if r[i] > best_tau:
            best_tau = float(r[i])
            best_lam = float(sign * grid[i])

    refined = False
    if best_lam != 0.0:
        sign = math.copysign(1.0, best_lam)
        i = int(np.argmin(np.abs(grid - abs(best_lam))))
        a = grid[i - 1] if i > 0 else grid[i] * 0.5
        b = grid[i + 1] if i + 1 < len(grid) else grid[i]
        if b > a:
            lam_star, tau_star = _golden_max(
                lambda t: _ratio(model, pi, sign * t), a, b,
                x_tol=max(params.x_tol, 1e-12 * b), max_iter=params.max_iterations)
            if tau_star > best_tau:
                best_tau = float(tau_star)
                best_lam = float(sign * lam_star)
                refined = True

    # defining inequality psi(lam) <= phi_p(tau * lam) re-checked on the grid
    slack = best_tau * (1.0 + 1e-9)
    verified = True
    for sign in (1.0, -1.0):
        for lam, r in zip(grid, ratios[sign]):
            if r > slack:
                verified = False

    return NormEstimate(
        tau=best_tau,
        method=NUMERIC_SUP,
        sup_location=best_lam,
        diagnostics={
            "grid_points": int(len(grid)),
            "lambda_lo": float(lam_lo),
            "lambda_hi": float(lam_hi),
            "window_limited": bool(window_limited),
            "refined": refined,
            "verified": verified,
        },
    )


def triangle_bound(norms: Sequence[float]) -> float:
    """Norm bound for a sum: tau(sum xi_i) <= sum tau(xi_i)."""
    for t in norms:
        if not (t >= 0.0 and math.isfinite(t)):
            raise ValueError(f"norms must be nonnegative reals, got {t}")
    return math.fsum(norms)


def sum_norm_bound(norms: Sequence[float], r: float) -> float:
    """r-power norm bound (sum tau_i^r)^(1/r), valid for independent or
    acceptable summands with 0 < r <= 2; r = min(p, 2) is always admissible
    for the phi_p family."""
    if not (0.0 < r <= 2.0):
        raise ValueError(f"power must lie in (0, 2], got {r}")
    for t in norms:
        if not (t >= 0.0 and math.isfinite(t)):
            raise ValueError(f"norms must be nonnegative reals, got {t}")
    if not norms:
        return 0.0
    return math.fsum(t ** r for t in norms) ** (1.0 / r)


def hoeffding_azuma_norm_bound(d: Sequence[float]) -> NormEstimate:
    """tau at p=2 of a sum of centered variables with |xi_i| <= d_i a.s.
    (independent, or martingale differences): sqrt(sum d_i^2).

    Follows from the MGF bound E exp(lambda sum xi_i) <= exp(lambda^2 sum d_i^2 / 2).
    """
    if not d:
        raise ValueError("need at least one bound")
    for di in d:
        if not (di > 0.0 and math.isfinite(di)):
            raise ValueError(f"a.s. bounds must be positive reals, got {di}")
    tau = math.sqrt(math.fsum(di * di for di in d))
    return NormEstimate(tau, UPPER_BOUND, None, {"n_terms": len(d)})
