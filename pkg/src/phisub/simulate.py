"""Seeded sequence generators and the Monte-Carlo convergence harness.

Reproducibility contract: every generator consumes exactly one Philox
uniform per variate (Gaussians go through the inverse CDF, not a rejection
sampler), so identical (distribution, n, seed) give bit-identical paths on
any platform, and streams stay aligned when only scale parameters change.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import ndtri

from .bounds import (
    MEAN_SCALE,
    MZ_SCALE,
    RAW_SCALE,
    BoundValue,
    MzParams,
    SllnBoundParams,
    TailQuery,
    mz_tail_bound,
    partial_sum_tail_bound,
)
from .cgf import AbsGaussianPowerCgf, BoundedCenteredCgf, CenteredUniformCgf, \
    CgfModel, GaussianCgf, RademacherCgf
from .nfunctions import PIndex, as_pindex
from .norms import tau_norm

_U_FLOOR = 2.0 ** -53  # keeps ndtri off the u = 0 singularity

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def _mdiff_path_py(eta: np.ndarray, bound: float) -> np.ndarray:
    """Mean-reverting bounded martingale differences.

    xi_k = bound * eta_k * w_k with w_k = -clamp(S_{k-1}/k, -1, 1), except
    w_k = 1 when S_{k-1} = 0 (otherwise 0 would be absorbing and every path
    would be identically zero).  w_k is a function of the past and |w_k| <= 1,
    so E[xi_k | past] = 0 and |xi_k| <= bound hold by construction.
    """
    n = eta.shape[0]
    out = np.empty(n)
    s = 0.0
    for k in range(n):
        if s == 0.0:
            w = 1.0
        else:
            v = s / (k + 1.0)
            if v > 1.0:
                v = 1.0
            elif v < -1.0:
                v = -1.0
            w = -v
        x = bound * eta[k] * w
        out[k] = x
        s += x
    return out


if _HAVE_NUMBA:
    _mdiff_path = njit(cache=True)(_mdiff_path_py)
else:  # pragma: no cover
    _mdiff_path = _mdiff_path_py


def _make_rng(seed: int) -> np.random.Generator:
    if not (isinstance(seed, (int, np.integer)) and 0 <= seed < 2 ** 64):
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return np.random.Generator(np.random.Philox(key=int(seed)))


class Distribution:
    """Base class for sequence generators; subclasses fill in one path."""

    label: str = "?"

    def sample(self, u: np.ndarray) -> np.ndarray:
        """Map uniforms in [0, 1) to variates, one-to-one."""
        raise NotImplementedError

    def path(self, n: int, rng: np.random.Generator) -> np.ndarray:
        return self.sample(rng.random(n))

    def cgf_model(self) -> CgfModel:
        raise NotImplementedError

    def max_abs(self) -> float:
        """Almost-sure bound on |xi|, inf if unbounded."""
        return math.inf

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class Gaussian(Distribution):
    sigma: float = 1.0
    label = "gaussian"

    def sample(self, u):
        return self.sigma * ndtri(np.maximum(u, _U_FLOOR))

    def cgf_model(self):
        return GaussianCgf(self.sigma)

    def params(self):
        return {"sigma": self.sigma}


@dataclass(frozen=True)
class Rademacher(Distribution):
    label = "rademacher"

    def sample(self, u):
        return np.where(u < 0.5, -1.0, 1.0)

    def cgf_model(self):
        return RademacherCgf()

    def max_abs(self):
        return 1.0


@dataclass(frozen=True)
class CenteredUniform(Distribution):
    half_width: float = 1.0
    label = "centered-uniform"

    def sample(self, u):
        return self.half_width * (2.0 * u - 1.0)

    def cgf_model(self):
        return CenteredUniformCgf(self.half_width)

    def max_abs(self):
        return self.half_width

    def params(self):
        return {"half_width": self.half_width}


@dataclass(frozen=True)
class AbsGaussianPower(Distribution):
    """|g|^a - E|g|^a for standard Gaussian g, 0 < a < 2."""

    exponent: float
    label = "abs-gaussian-power"

    def sample(self, u):
        model = AbsGaussianPowerCgf(self.exponent)
        g = ndtri(np.maximum(u, _U_FLOOR))
        return np.abs(g) ** self.exponent - model.mean

    def cgf_model(self):
        return AbsGaussianPowerCgf(self.exponent)

    def params(self):
        return {"exponent": self.exponent}


@dataclass(frozen=True)
class BoundedMartingaleDifference(Distribution):
    """Dependent but Azuma-valid increments: |xi_k| <= bound a.s. and
    conditional mean zero given the past (mean-reverting driver)."""

    bound: float = 1.0
    label = "martingale-difference"

    def sample(self, u):
        eta = np.where(u < 0.5, -1.0, 1.0)
        return _mdiff_path(eta, self.bound)

    def cgf_model(self):
        # Hoeffding majorant: the exact CGF of the dependent sequence is not
        # available in closed form, but this dominates it
        return BoundedCenteredCgf(self.bound)

    def max_abs(self):
        return self.bound

    def params(self):
        return {"bound": self.bound}


@dataclass(frozen=True)
class IdenticalCopies(Distribution):
    """xi_k = xi_1 for all k: the negative control where the norm of the
    partial sum grows linearly and no averaging takes place."""

    base: Distribution
    label = "identical-copies"

    def __post_init__(self):
        if isinstance(self.base, (IdenticalCopies, BoundedMartingaleDifference)):
            raise ValueError("identical copies need an iid base distribution")

    def sample(self, u):
        first = self.base.sample(np.asarray(u[:1]))
        return np.full(u.shape[0], first[0])

    def cgf_model(self):
        return self.base.cgf_model()

    def max_abs(self):
        return self.base.max_abs()

    def params(self):
        return {"base": self.base.label, **self.base.params()}


@dataclass(frozen=True)
class SequenceSpec:
    """Declarative description of one simulated path."""

    distribution: Distribution
    n_max: int
    seed: int

    def __post_init__(self):
        if not (isinstance(self.n_max, (int, np.integer)) and self.n_max >= 1):
            raise ValueError(f"n_max must be a positive integer, got {self.n_max}")
        if not (isinstance(self.seed, (int, np.integer)) and 0 <= self.seed < 2 ** 64):
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


def generate_sequence(spec: SequenceSpec) -> np.ndarray:
    """Generate the path; a pure function of (distribution, n_max, seed)."""
    return spec.distribution.path(spec.n_max, _make_rng(spec.seed))


def normalized_path(samples: Sequence[float], s: float,
                    n_grid: Sequence[int]) -> list[tuple[int, float]]:
    """(n, n^(-1/s) * S_n) at each checkpoint, with error-free partial sums
    (segment-wise fsum, recombined exactly)."""
    if not (s > 0.0):
        raise ValueError(f"rate exponent must be positive, got {s}")
    x = np.asarray(samples, dtype=float)
    grid = sorted(set(int(n) for n in n_grid))
    if not grid:
        return []
    if grid[0] < 1 or grid[-1] > x.size:
        raise ValueError(f"checkpoints must lie in [1, {x.size}]")
    out = []
    seg_sums = []
    prev = 0
    for n in grid:
        seg_sums.append(math.fsum(x[prev:n]))
        prev = n
        sn = math.fsum(seg_sums)
        out.append((n, sn / n ** (1.0 / s)))
    return out


def _threshold(normalization: str, epsilon: float, n: int, s: float) -> float:
    if normalization == MEAN_SCALE:
        return n * epsilon
    if normalization == MZ_SCALE:
        return n ** (1.0 / s) * epsilon
    if normalization == RAW_SCALE:
        return epsilon
    raise ValueError(f"unknown normalization {normalization!r}")


def exceedance_frequency(spec: SequenceSpec, normalization: str, epsilon: float,
                         n: int, replications: int, seed_base: int,
                         s: float = 1.0) -> tuple[float, float]:
    """Fraction of replications with |S_n| beyond the scaled level, plus its
    binomial standard error.  Replication i uses seed seed_base + i."""
    if replications < 1:
        raise ValueError("need at least one replication")
    if not (epsilon > 0.0):
        raise ValueError(f"epsilon must be positive, got {epsilon}")
    level = _threshold(normalization, epsilon, int(n), s)
    hits = 0
    for i in range(replications):
        path = generate_sequence(SequenceSpec(spec.distribution, int(n), seed_base + i))
        if abs(float(np.add.reduce(path))) >= level:
            hits += 1
    freq = hits / replications
    return freq, math.sqrt(freq * (1.0 - freq) / replications)


def norm_upper_bound(dist: Distribution, p) -> float:
    """Per-variable tau upper bound used to parameterize the theoretical
    bounds: known closed forms at p = 2, else the numeric norm with a small
    safety margin (the grid supremum can only undershoot the true norm)."""
    pi = as_pindex(p)
    if pi.p == 2.0:
        if isinstance(dist, Gaussian):
            return dist.sigma
        if isinstance(dist, Rademacher):
            return 1.0
        if isinstance(dist, CenteredUniform):
            return dist.half_width / math.sqrt(3.0)
        if isinstance(dist, (BoundedMartingaleDifference,)):
            return dist.bound
        if isinstance(dist, IdenticalCopies):
            return norm_upper_bound(dist.base, pi)
    return tau_norm(dist.cgf_model(), pi).tau * (1.0 + 2e-3)


@dataclass(frozen=True)
class CheckpointRow:
    n: int
    mean_abs_mean_scaled: float   # average over replications of |S_n| / n
    mean_abs_mz_scaled: float     # average of |S_n| / n^(1/s)


@dataclass(frozen=True)
class ExceedanceRow:
    n: int
    epsilon: float
    normalization: str
    threshold: float
    frequency: float
    std_error: float
    bound: float
    bound_valid: bool
    violated: bool


@dataclass(frozen=True)
class SimulationReport:
    """Measured trajectory statistics versus the theoretical bounds."""

    distribution: str
    distribution_params: dict
    p: float
    s: float
    n_grid: tuple[int, ...]
    replications: int
    seed_base: int
    tau_single: float
    checkpoints: tuple[CheckpointRow, ...]
    exceedances: tuple[ExceedanceRow, ...]

    @property
    def any_violation(self) -> bool:
        return any(row.violated for row in self.exceedances)

    def to_dict(self) -> dict:
        return {
            "distribution": self.distribution,
            "distribution_params": dict(self.distribution_params),
            "p": self.p,
            "s": self.s,
            "n_grid": list(self.n_grid),
            "replications": self.replications,
            "seed_base": self.seed_base,
            "tau_single": self.tau_single,
            "checkpoints": [
                {"n": r.n,
                 "mean_abs_mean_scaled": r.mean_abs_mean_scaled,
                 "mean_abs_mz_scaled": r.mean_abs_mz_scaled}
                for r in self.checkpoints
            ],
            "exceedances": [
                {"n": r.n, "epsilon": r.epsilon, "normalization": r.normalization,
                 "threshold": r.threshold, "frequency": r.frequency,
                 "std_error": r.std_error, "bound": r.bound,
                 "bound_valid": r.bound_valid, "violated": r.violated}
                for r in self.exceedances
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_csv_text(self) -> str:
        """Flat CSV, one row per checkpoint x epsilon x normalization."""
        means = {r.n: r for r in self.checkpoints}
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([
            "n", "epsilon", "normalization", "threshold", "frequency",
            "std_error", "bound", "bound_valid", "violated",
            "mean_abs_mean_scaled", "mean_abs_mz_scaled",
        ])
        for r in self.exceedances:
            cp = means[r.n]
            writer.writerow([
                r.n, repr(r.epsilon), r.normalization, repr(r.threshold),
                repr(r.frequency), repr(r.std_error), repr(r.bound),
                r.bound_valid, r.violated,
                repr(cp.mean_abs_mean_scaled), repr(cp.mean_abs_mz_scaled),
            ])
        return buf.getvalue()

    def write(self, path) -> None:
        from pathlib import Path

        p = Path(path)
        if p.suffix.lower() == ".json":
            p.write_text(self.to_json() + "\n", encoding="utf-8")
        elif p.suffix.lower() == ".csv":
            p.write_text(self.to_csv_text(), encoding="utf-8")
        else:
            raise ValueError(f"unknown report format {p.suffix!r} (want .json or .csv)")


def convergence_report(spec: SequenceSpec, s: float, n_grid: Sequence[int],
                       eps_grid: Sequence[float], replications: int, seed_base: int,
                       p=2.0, tau_single: float | None = None,
                       normalizations: Sequence[str] = (MEAN_SCALE, MZ_SCALE),
                       ) -> SimulationReport:
    """Run replications, measure normalized partial sums and exceedance
    frequencies at the checkpoints, and attach matching theoretical bounds.

    A row is flagged violated when the empirical frequency exceeds a
    valid-regime bound by more than three binomial standard errors.
    """
    pi = as_pindex(p)
    if not (s > 0.0):
        raise ValueError(f"rate exponent must be positive, got {s}")
    grid = sorted(set(int(n) for n in n_grid))
    if not grid or grid[0] < 1:
        raise ValueError("n_grid must contain positive integers")
    if grid[-1] > spec.n_max:
        raise ValueError(f"n_grid exceeds spec.n_max = {spec.n_max}")
    if replications < 1:
        raise ValueError("need at least one replication")
    eps_grid = [float(e) for e in eps_grid]
    if any(e <= 0.0 for e in eps_grid):
        raise ValueError("epsilon grid must be positive")
    r_power = min(pi.p, 2.0)
    if MZ_SCALE in normalizations and not (s < r_power):
        raise ValueError(f"MZ normalization needs s < r = min(p, 2) = {r_power}")

    tau1 = float(tau_single) if tau_single is not None else norm_upper_bound(
        spec.distribution, pi)

    n_max = grid[-1]
    starts = np.array([0] + grid[:-1], dtype=np.int64)
    k_n = len(grid)
    sum_abs_mean = np.zeros(k_n)
    sum_abs_mz = np.zeros(k_n)
    exceed = np.zeros((k_n, len(eps_grid), len(normalizations)), dtype=np.int64)
    levels = np.array([
        [[_threshold(norm, e, n, s) for norm in normalizations] for e in eps_grid]
        for n in grid
    ])

    for i in range(replications):
        path = generate_sequence(SequenceSpec(spec.distribution, n_max, seed_base + i))
        partial = np.cumsum(np.add.reduceat(path, starts))
        abs_s = np.abs(partial)
        sum_abs_mean += abs_s / grid
        sum_abs_mz += abs_s / np.power(grid, 1.0 / s)
        exceed += (abs_s[:, None, None] >= levels).astype(np.int64)

    checkpoints = tuple(
        CheckpointRow(n=grid[k],
                      mean_abs_mean_scaled=float(sum_abs_mean[k] / replications),
                      mean_abs_mz_scaled=float(sum_abs_mz[k] / replications))
        for k in range(k_n)
    )

    slln = SllnBoundParams(c=tau1, alpha=1.0 - 1.0 / r_power, p=pi)
    mz = MzParams(b=tau1, s=s, p=pi) if MZ_SCALE in normalizations else None

    rows = []
    for k, n in enumerate(grid):
        for j, e in enumerate(eps_grid):
            for m, norm in enumerate(normalizations):
                if norm == MEAN_SCALE:
                    bv = partial_sum_tail_bound(slln, TailQuery(e, n, MEAN_SCALE))
                elif norm == MZ_SCALE:
                    bv = mz_tail_bound(mz, TailQuery(e, n, MZ_SCALE))
                else:
                    bv = BoundValue(1.0, False)
                freq = exceed[k, j, m] / replications
                se = math.sqrt(freq * (1.0 - freq) / replications)
                rows.append(ExceedanceRow(
                    n=n, epsilon=e, normalization=norm,
                    threshold=float(levels[k, j, m]),
                    frequency=float(freq), std_error=float(se),
                    bound=float(bv.value), bound_valid=bool(bv.valid),
                    violated=bool(bv.valid and freq > bv.value + 3.0 * se),
                ))

    return SimulationReport(
        distribution=spec.distribution.label,
        distribution_params=spec.distribution.params(),
        p=pi.p, s=float(s),
        n_grid=tuple(grid),
        replications=int(replications),
        seed_base=int(seed_base),
        tau_single=tau1,
        checkpoints=checkpoints,
        exceedances=tuple(rows),
    )
