"""Quadratic power-type N-functions and their convex conjugates.

The family implemented here is, for p >= 1,

    phi_p(x) = x^2 / 2                      for |x| <= 1,
    phi_p(x) = |x|^p / p - 1/p + 1/2        for |x| > 1,

a standardization of |x|^p/p that is exactly quadratic near the origin and
C^1 across the seam at |x| = 1.  For p, q > 1 with 1/p + 1/q = 1 the
Young-Fenchel conjugate satisfies phi_p^* = phi_q, which the numeric
Legendre transform in this module reproduces and the test suite checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .exceptions import BracketDivergenceError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0

# method tags shared with the norm solver
ANALYTIC = "analytic"
NUMERIC_SUP = "numeric-sup"


@dataclass(frozen=True)
class PIndex:
    """A validated growth exponent p >= 1 with its Holder conjugate q."""

    p: float

    def __post_init__(self):
        if not (isinstance(self.p, (int, float)) and math.isfinite(self.p)):
            raise ValueError(f"exponent must be a finite real, got {self.p!r}")
        if self.p < 1.0:
            raise ValueError(f"exponent must satisfy p >= 1, got {self.p}")
        object.__setattr__(self, "p", float(self.p))

    @property
    def q(self) -> float:
        """Holder conjugate q = p/(p-1); undefined at p = 1."""
        if self.p == 1.0:
            raise ValueError("conjugate exponent is undefined for p = 1")
        return self.p / (self.p - 1.0)


def as_pindex(p) -> PIndex:
    return p if isinstance(p, PIndex) else PIndex(float(p))


def conjugate_index(p) -> PIndex:
    """PIndex of the Holder conjugate; rejects p = 1 (q would diverge)."""
    return PIndex(as_pindex(p).q)


@dataclass(frozen=True)
class SolverParams:
    """Tolerances and search ranges shared by the conjugate and norm solvers."""

    x_tol: float = 1e-8            # absolute tolerance on argmax location
    value_tol: float = 1e-6        # reported value tolerance
    bracket_start: float = 1.0
    max_expansions: int = 200      # doublings before declaring divergence
    max_iterations: int = 500      # golden-section iteration cap
    lambda_min: float = 1e-4       # norm solver: geometric lambda grid
    lambda_max: float = 1e4
    lambda_grid_points: int = 200  # per sign
    growth_tol: float = 0.05       # unbounded-sup detector (last grid decade)


DEFAULT_SOLVER = SolverParams()


def phi_p_eval(p, x: float) -> float:
    """Evaluate phi_p at x.  Quadratic below |x| = 1, power branch above."""
    pi = as_pindex(p)
    if not math.isfinite(x):
        raise ValueError(f"argument must be finite, got {x}")
    ax = abs(x)
    if ax <= 1.0:
        return 0.5 * x * x
    try:
        return (ax ** pi.p - 1.0) / pi.p + 0.5
    except OverflowError:
        return math.inf


def phi_p_inverse(p, y: float) -> float:
    """The unique x >= 0 with phi_p(x) = y, in closed form.

    sqrt(2y) on the quadratic branch (y <= 1/2), (p(y - 1/2) + 1)^(1/p) above.
    """
    pi = as_pindex(p)
    if math.isnan(y) or y < 0.0:
        raise ValueError(f"level must be nonnegative, got {y}")
    if y == math.inf:
        return math.inf
    if y <= 0.5:
        return math.sqrt(2.0 * y)
    return (pi.p * (y - 0.5) + 1.0) ** (1.0 / pi.p)


@dataclass(frozen=True)
class NFunctionSpec:
    """An evaluable candidate N-function.

    Either a member of the built-in power family (``p`` is set) or an
    arbitrary user evaluator.  ``quadratic_radius`` is the |x| below which
    the function is exactly c*x^2 (1 for the built-in family).
    """

    evaluator: Callable[[float], float]
    quadratic_radius: float = 1.0
    p: PIndex | None = None

    @classmethod
    def builtin(cls, p) -> "NFunctionSpec":
        pi = as_pindex(p)
        return cls(evaluator=lambda x: phi_p_eval(pi, x), quadratic_radius=1.0, p=pi)

    @classmethod
    def from_callable(cls, fn: Callable[[float], float],
                      quadratic_radius: float = 1.0) -> "NFunctionSpec":
        return cls(evaluator=fn, quadratic_radius=quadratic_radius, p=None)

    @property
    def is_builtin(self) -> bool:
        return self.p is not None

    def __call__(self, x: float) -> float:
        return self.evaluator(x)


@dataclass(frozen=True)
class ConjugateResult:
    value: float
    argmax: float
    method: str  # ANALYTIC or NUMERIC_SUP


def _coerce_spec(f) -> NFunctionSpec:
    if isinstance(f, NFunctionSpec):
        return f
    if isinstance(f, PIndex):
        return NFunctionSpec.builtin(f)
    if callable(f):
        return NFunctionSpec.from_callable(f)
    raise TypeError(f"expected NFunctionSpec, PIndex or callable, got {type(f)!r}")


def _golden_max(g, a: float, b: float, x_tol: float, max_iter: int):
    """Golden-section maximization of a unimodal g on [a, b]."""
    h = b - a
    if h <= x_tol:
        xm = 0.5 * (a + b)
        return xm, g(xm)
    n = int(math.ceil(math.log(x_tol / h) / math.log(_INV_PHI)))
    n = min(n, max_iter)
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    yc = g(c)
    yd = g(d)
    for _ in range(n):
        if yc > yd:
            b, d, yd = d, c, yc
            h *= _INV_PHI
            c = a + _INV_PHI2 * h
            yc = g(c)
        else:
            a, c, yc = c, d, yd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            yd = g(d)
    return (c, yc) if yc > yd else (d, yd)


def legendre_transform(f, y: float, search: SolverParams | None = None) -> ConjugateResult:
    """Numeric Young-Fenchel transform f*(y) = sup_x { x*y - f(x) }.

    The objective is concave for convex f, so an adaptive doubling bracket
    followed by golden-section search is exact up to tolerance.  The search
    runs on the sign side of y (for y = 0 on the positive side); a bracket
    that never closes means f grows at most linearly there, and the
    supremum is infinite.
    """
    params = search or DEFAULT_SOLVER
    spec = _coerce_spec(f)
    if not math.isfinite(y):
        raise ValueError(f"conjugate argument must be finite, got {y}")

    direction = -1.0 if y < 0.0 else 1.0
    ay = abs(y)

    def obj(t: float) -> float:
        x = direction * t
        try:
            v = spec(x)
        except OverflowError:
            return -math.inf
        if math.isnan(v):
            return -math.inf
        return t * ay - v

    # doubling bracket: expand while the objective still increases end to end
    t_prev = 0.0
    g_prev = obj(0.0)
    best_t, best_g = t_prev, g_prev
    t_cur = params.bracket_start
    g_cur = obj(t_cur)
    expansions = 0
    while g_cur > g_prev and expansions < params.max_expansions:
        t_prev, g_prev = t_cur, g_cur
        if g_cur > best_g:
            best_t, best_g = t_cur, g_cur
        t_cur *= 2.0
        g_cur = obj(t_cur)
        expansions += 1
    if g_cur > g_prev:
        raise BracketDivergenceError(
            f"supremum not bracketed after {expansions} doublings at y={y}; "
            "the function is not superlinear")

    t_star, g_star = _golden_max(obj, 0.0, t_cur, params.x_tol, params.max_iterations)
    if g_star < best_g:
        t_star, g_star = best_t, best_g
    return ConjugateResult(value=g_star, argmax=direction * t_star, method=NUMERIC_SUP)


def conjugate_of_scaled(f, a: float, b: float, y: float,
                        search: SolverParams | None = None) -> float:
    """Conjugate of psi(x) = a*f(b*x) at y, via the scaling rule a*f*(y/(a*b)).

    Uses the closed-form conjugate for the built-in family (phi_p^* = phi_q)
    and the numeric transform otherwise.
    """
    if not (a > 0.0):
        raise ValueError(f"outer scale must be positive, got {a}")
    if b == 0.0:
        raise ValueError("inner scale must be nonzero")
    spec = _coerce_spec(f)
    inner = y / (a * b)
    if spec.is_builtin and spec.p.p > 1.0:
        return a * phi_p_eval(conjugate_index(spec.p), inner)
    return a * legendre_transform(spec, inner, search).value


# --- N-function axiom validation -------------------------------------------

_EXACT_TOL = 1e-12        # evenness / origin / monotonicity slack
_SMALL_SLOPE_MAX = 1e-2   # f(x)/x at the smallest probes
_LARGE_SLOPE_MIN = 10.0   # f(x)/x at the largest probes
_QUAD_RATIO_RTOL = 1e-9   # spread of f(x)/x^2 below the quadratic radius


@dataclass(frozen=True)
class ValidationReport:
    """Per-axiom outcome of probing a candidate N-function on a finite grid.

    Finite probes cannot prove limits; a True entry means "consistent with"
    the axiom on the probed grid.
    """

    even: bool
    zero_at_origin: bool
    monotone_increasing: bool
    midpoint_convex: bool
    sublinear_near_zero: bool
    superlinear_at_infinity: bool
    quadratic_near_zero: bool
    quadratic_coefficient: float | None

    @property
    def passed(self) -> bool:
        return (self.even and self.zero_at_origin and self.monotone_increasing
                and self.midpoint_convex and self.sublinear_near_zero
                and self.superlinear_at_infinity and self.quadratic_near_zero)


def decade_probe_grid(lo: float = 1e-6, hi: float = 1e6, per_decade: int = 4) -> list[float]:
    """Symmetric geometric probe grid spanning [lo, hi] plus the origin."""
    if not (0.0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    decades = math.log10(hi / lo)
    count = max(2, int(round(decades * per_decade)) + 1)
    pos = [lo * (hi / lo) ** (i / (count - 1)) for i in range(count)]
    return [-x for x in reversed(pos)] + [0.0] + pos


def validate_nfunction(f, probe_grid: Sequence[float]) -> ValidationReport:
    """Probe the N-function axioms on a grid spanning several decades."""
    spec = _coerce_spec(f)
    grid = sorted(set(float(x) for x in probe_grid))
    pos = [x for x in grid if x > 0.0]
    if len(pos) < 3:
        raise ValueError("probe grid needs at least three positive points")

    def ev(x):
        try:
            v = spec(x)
        except OverflowError:
            return math.inf
        return v

    vals = {x: ev(x) for x in grid}
    for x in pos:
        vals.setdefault(-x, ev(-x))

    even = all(
        abs(vals[x] - vals[-x]) <= _EXACT_TOL * max(1.0, abs(vals[x]))
        for x in pos if math.isfinite(vals[x]) and math.isfinite(vals[-x])
    )
    f0 = ev(0.0)
    zero_at_origin = abs(f0) <= _EXACT_TOL

    fpos = [vals[x] for x in pos]
    monotone = all(
        b >= a - _EXACT_TOL * max(1.0, abs(a))
        for a, b in zip(fpos, fpos[1:])
    )

    convex = True
    for i in range(len(pos)):
        for j in range(i + 1, len(pos)):
            xm = 0.5 * (pos[i] + pos[j])
            lhs = ev(xm)
            rhs = 0.5 * (vals[pos[i]] + vals[pos[j]])
            if math.isfinite(rhs) and lhs > rhs + 1e-9 * max(1.0, abs(rhs)):
                convex = False
                break
        if not convex:
            break

    sublinear = vals[pos[0]] / pos[0] <= _SMALL_SLOPE_MAX
    vlast = vals[pos[-1]]
    superlinear = (vlast == math.inf) or (vlast / pos[-1] >= _LARGE_SLOPE_MIN)

    quad_probes = [x for x in pos if x < spec.quadratic_radius]
    quad_coeff = None
    quadratic = False
    if quad_probes:
        ratios = [vals[x] / (x * x) for x in quad_probes]
        rmax, rmin = max(ratios), min(ratios)
        if rmax > 0.0 and (rmax - rmin) <= _QUAD_RATIO_RTOL * rmax:
            quadratic = True
            quad_coeff = 0.5 * (rmax + rmin)

    return ValidationReport(
        even=even,
        zero_at_origin=zero_at_origin,
        monotone_increasing=monotone,
        midpoint_convex=convex,
        sublinear_near_zero=sublinear,
        superlinear_at_infinity=superlinear,
        quadratic_near_zero=quadratic,
        quadratic_coefficient=quad_coeff,
    )
