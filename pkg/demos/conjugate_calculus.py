#!/usr/bin/env python3
"""Tour of the quadratic power-type N-functions and their conjugates.

Walks through: evaluating phi_p, the closed-form conjugate pair (phi_p, phi_q),
the numeric Legendre transform agreeing with it, the scaling rule, biconjugation,
and the axiom validator on a function that is *not* an N-function.
"""

import numpy as np

from phisub import (
    NFunctionSpec,
    PIndex,
    conjugate_index,
    conjugate_of_scaled,
    decade_probe_grid,
    legendre_transform,
    phi_p_eval,
    phi_p_inverse,
    validate_nfunction,
)

# --- the function family ----------------------------------------------------
# phi_p is x^2/2 inside [-1, 1] and a shifted power |x|^p/p - 1/p + 1/2 outside,
# glued C^1 at the seam.

print("phi_p values (rows: p, columns: x)")
xs = [0.0, 0.5, 1.0, 2.0, 5.0]
print("      " + "".join(f"x={x:<8g}" for x in xs))
for p in [1.25, 2.0, 3.0]:
    print(f"p={p:<4g}" + "".join(f"{phi_p_eval(p, x):<10.5f}" for x in xs))

# the closed-form inverse restricted to x >= 0 round-trips exactly
x = 1.7
assert abs(phi_p_inverse(3, phi_p_eval(3, x)) - x) < 1e-12

# --- conjugate pairs ---------------------------------------------------------
# For p > 1 the Young-Fenchel transform maps phi_p to phi_q with 1/p + 1/q = 1.
# The numeric transform (bracket expansion + golden section) reproduces it.

print("\nnumeric Legendre transform vs closed-form phi_q")
for p in [1.25, 1.5, 3.0]:
    q = conjugate_index(p)
    spec = NFunctionSpec.builtin(p)
    worst = max(abs(legendre_transform(spec, y).value - phi_p_eval(q, y))
                for y in np.linspace(-8, 8, 33))
    print(f"  p={p:<5g} q={q.p:<6.4g} max deviation on [-8,8]: {worst:.2e}")

# --- scaling rule ------------------------------------------------------------
# (a f(b x))*(y) = a f*(y / (a b))
a, b, y = 2.0, 0.5, 1.2
direct = legendre_transform(
    NFunctionSpec.from_callable(lambda t: a * phi_p_eval(3, b * t)), y).value
via_rule = conjugate_of_scaled(NFunctionSpec.builtin(3), a, b, y)
print(f"\nscaling rule at (a={a}, b={b}, y={y}): rule {via_rule:.8f}"
      f" vs direct transform {direct:.8f}")

# --- biconjugation -----------------------------------------------------------
# Convexity and closedness give f** = f; numerically the double transform
# returns to phi_p within solver tolerance.
p = 2.5
inner = NFunctionSpec.from_callable(
    lambda t: legendre_transform(NFunctionSpec.builtin(p), t).value)
worst = max(abs(legendre_transform(inner, x).value - phi_p_eval(p, x))
            for x in np.linspace(-4, 4, 17))
print(f"biconjugation: max |phi_{p}** - phi_{p}| = {worst:.2e}")

# --- axiom validation --------------------------------------------------------
# |x| grows linearly: it fails superlinearity and has no quadratic core.
print("\naxiom probe of |x| on a grid spanning 1e-6..1e6:")
report = validate_nfunction(NFunctionSpec.from_callable(abs), decade_probe_grid())
for name in ["even", "zero_at_origin", "monotone_increasing", "midpoint_convex",
             "sublinear_near_zero", "superlinear_at_infinity", "quadratic_near_zero"]:
    print(f"  {name:<26s} {getattr(report, name)}")
print(f"  passed: {report.passed}")

report = validate_nfunction(NFunctionSpec.builtin(3), decade_probe_grid())
print(f"phi_3 passes all axioms: {report.passed}, quadratic coefficient "
      f"{report.quadratic_coefficient:.6f} (= 1/2)")
