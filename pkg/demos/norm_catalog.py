#!/usr/bin/env python3
"""Computing tau norms across the CGF catalog and bounding norms of sums.

The norm of xi is the smallest a with ln E exp(lambda xi) <= phi_p(a lambda)
for every lambda.  Closed forms exist for quadratic CGFs; everything else
goes through the grid-supremum solver.
"""

import math

import numpy as np

from phisub import (
    AbsGaussianPowerCgf,
    BoundedCenteredCgf,
    CenteredUniformCgf,
    EmpiricalCgf,
    GaussianCgf,
    NotPhiSubgaussianError,
    RademacherCgf,
    hoeffding_azuma_norm_bound,
    phi_p_eval,
    sum_norm_bound,
    tau_norm,
    triangle_bound,
)

print("tau at p = 2 across the catalog")
catalog = [
    ("gaussian sigma=3", GaussianCgf(3.0), 3.0),
    ("rademacher", RademacherCgf(), 1.0),
    ("uniform on [-1,1]", CenteredUniformCgf(1.0), 1.0 / math.sqrt(3.0)),
    ("bounded |xi|<=2 (majorant)", BoundedCenteredCgf(2.0), 2.0),
    ("|g| - E|g|", AbsGaussianPowerCgf(1.0), 1.0),
]
for name, model, reference in catalog:
    est = tau_norm(model, 2)
    print(f"  {name:<28s} tau = {est.tau:<12.8f} ({est.method}),"
          f" reference value {reference:.8f}")

# the defining inequality, spot-checked for the symmetric sign variable
est = tau_norm(RademacherCgf(), 2)
lams = np.geomspace(1e-3, 1e3, 7)
print("\nln cosh(lam) <= phi_2(tau lam) on a lambda grid (tau tight to <0.1%):")
for lam in lams:
    lhs = RademacherCgf().value(float(lam))
    rhs = phi_p_eval(2, est.tau * float(lam))
    print(f"  lam={lam:<9.3g} psi={lhs:<12.6g} phi_2(tau lam)={rhs:<12.6g} ok={lhs <= rhs * (1 + 1e-9)}")

# a Gaussian has no finite norm below p = 2: its CGF grows like lambda^2
# while phi_p only allows lambda^p
try:
    tau_norm(GaussianCgf(1.0), 1.5)
except NotPhiSubgaussianError as exc:
    print(f"\ngaussian at p=1.5 rejected: {exc}")

# empirical norm from samples (trusted only on the MGF stability window)
rng = np.random.default_rng(42)
est = tau_norm(EmpiricalCgf(tuple(rng.normal(size=20_000))), 2)
print(f"\nempirical tau of 20k N(0,1) samples: {est.tau:.4f} "
      f"(window-limited: {est.diagnostics['window_limited']})")

# --- norms of partial sums ---------------------------------------------------
# triangle inequality always; the r-power inequality for independent (or
# acceptable) summands with r = min(p, 2); Hoeffding-Azuma for bounded
# martingale differences.
taus = [1.0] * 16
print(f"\nten ways to bound tau(S_16) for 16 unit-norm terms:")
print(f"  triangle (any dependence):        {triangle_bound(taus):g}")
print(f"  r-power, r=2 (independent):       {sum_norm_bound(taus, 2.0):g}")
print(f"  r-power, r=1.5 (p=1.5 family):    {sum_norm_bound(taus, 1.5):g}")
ha = hoeffding_azuma_norm_bound([1.0] * 16)
print(f"  Hoeffding-Azuma (|xi_i| <= 1):    {ha.tau:g} ({ha.method})")
print("identical copies saturate the triangle bound: tau(S_n) = n tau(xi),")
print("which is why averaging fails for them (see slln_convergence demo).")
