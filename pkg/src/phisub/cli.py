"""Command-line front end.

Subcommands
-----------
conjugate   evaluate phi_p, its closed-form conjugate and the numeric
            Legendre transform at a point or on a grid
norm        tau norm of a catalog model or of a sample file
tailbound   generic / partial-sum / Marcinkiewicz-Zygmund tail bounds over grids
slln-check  fit the norm-growth constants (c, alpha) from an (n, tau) table
            and report summability of the bound series
simulate    Monte-Carlo convergence run with bound comparison

Examples
--------
  phisub conjugate --p 3 --y 2
  phisub norm --model gaussian --sigma 3 --p 2
  phisub tailbound --kind slln --p 2 --c 1 --alpha 0.5 --eps 0.5 --n 10,100
  phisub slln-check --pairs 1:1,4:2,16:4,64:8
  phisub simulate --dist rademacher --n-grid 100,1000 --eps-grid 0.3,0.5 \
      --replications 500 --seed 7 --out report.json

Exit codes: 0 success, 1 validation/usage error, 2 numeric failure,
3 bound violation detected by simulate.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import __version__
from .bounds import (
    MEAN_SCALE,
    MZ_SCALE,
    MzParams,
    SllnBoundParams,
    TailQuery,
    mz_tail_bound,
    partial_sum_tail_bound,
    series_sum_bound,
    slln_condition_fit,
    tail_bound,
)
from .cgf import (
    AbsGaussianPowerCgf,
    BoundedCenteredCgf,
    CenteredUniformCgf,
    EmpiricalCgf,
    GaussianCgf,
    RademacherCgf,
    read_samples,
)
from .exceptions import NumericError
from .nfunctions import (
    NFunctionSpec,
    as_pindex,
    conjugate_index,
    legendre_transform,
    phi_p_eval,
)
from .norms import tau_norm
from . import simulate as sim

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_VIOLATION = 3


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; the contract here
    reserves 2 for numeric failures, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v, decimals: int) -> str:
    """Fixed-point with trailing zeros trimmed; scientific below 1e-4."""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if not isinstance(v, float):
        return str(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    if v != 0.0 and abs(v) < 1e-4:
        mant, exp = f"{v:.{decimals}e}".split("e")
        mant = mant.rstrip("0").rstrip(".")
        return f"{mant}e{exp}"
    s = f"{v:.{decimals}f}"
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return s if s not in ("-0", "") else "0"


def _print_table(headers, rows, decimals):
    cells = [[_fmt(v, decimals) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip())
    for row in cells:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())


def _write_rows(path, command, headers, rows):
    p = Path(path)
    if p.suffix.lower() == ".json":
        payload = {"command": command,
                   "rows": [dict(zip(headers, row)) for row in rows]}
        p.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    elif p.suffix.lower() == ".csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(headers)
        for row in rows:
            w.writerow([repr(v) if isinstance(v, float) else v for v in row])
        p.write_text(buf.getvalue(), encoding="utf-8")
    else:
        raise ValueError(f"unknown output format {p.suffix!r} (want .json or .csv)")


def _float_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of numbers: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}")


def _add_common(sp):
    sp.add_argument("--out", help="write results to a .csv or .json file")
    sp.add_argument("--precision", type=int, default=6,
                    help="decimal digits printed (max 15)")
    sp.add_argument("--config", help="flat key=value file with default options")


def _build_parser():
    parser = _Parser(prog="phisub",
                     description="phi_p-subgaussian norm and tail-bound toolkit")
    parser.add_argument("--version", action="version", version=f"phisub {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_conj = sub.add_parser("conjugate", parents=[], help="conjugate calculus")
    p_conj.add_argument("--p", type=float, required=True)
    p_conj.add_argument("--y", type=float)
    p_conj.add_argument("--grid", help="lo:hi:count grid of y values")
    _add_common(p_conj)

    p_norm = sub.add_parser("norm", help="tau norm of a model or sample file")
    p_norm.add_argument("--model", required=True,
                        choices=["gaussian", "rademacher", "uniform", "bounded",
                                 "abs-gauss-power", "empirical"])
    p_norm.add_argument("--p", type=float, required=True)
    p_norm.add_argument("--sigma", type=float, default=1.0)
    p_norm.add_argument("--half-width", type=float, default=1.0)
    p_norm.add_argument("--bound", type=float, default=1.0)
    p_norm.add_argument("--exponent", type=float, default=1.0)
    p_norm.add_argument("--samples", help="one-column sample file (empirical model)")
    _add_common(p_norm)

    p_tb = sub.add_parser("tailbound", help="closed-form tail bounds over grids")
    p_tb.add_argument("--kind", required=True, choices=["basic", "slln", "mz"])
    p_tb.add_argument("--p", type=float, required=True)
    p_tb.add_argument("--eps", type=_float_list, required=True,
                      help="comma list of deviation levels")
    p_tb.add_argument("--C", type=float, help="norm upper bound (basic)")
    p_tb.add_argument("--c", type=float, help="norm growth constant (slln)")
    p_tb.add_argument("--alpha", type=float, help="norm growth exponent deficit (slln)")
    p_tb.add_argument("--b", type=float, help="uniform per-term norm bound (mz)")
    p_tb.add_argument("--s", type=float, help="rate exponent (mz)")
    p_tb.add_argument("--n", type=_int_list, help="comma list of sequence indices")
    _add_common(p_tb)

    p_fit = sub.add_parser("slln-check",
                           help="fit (c, alpha) from an (n, tau) table")
    p_fit.add_argument("--pairs", help="inline table n:tau,n:tau,...")
    p_fit.add_argument("--table", help="file with 'n tau' or 'n,tau' lines")
    p_fit.add_argument("--p", type=float, default=2.0)
    p_fit.add_argument("--eps", type=float, default=1.0,
                       help="deviation level for the series bound")
    _add_common(p_fit)

    p_sim = sub.add_parser("simulate", help="Monte-Carlo convergence run")
    p_sim.add_argument("--dist", required=True,
                       choices=["rademacher", "gaussian", "uniform",
                                "abs-gauss-power", "martingale", "identical-copies"])
    p_sim.add_argument("--base", default="rademacher",
                       choices=["rademacher", "gaussian", "uniform", "abs-gauss-power"],
                       help="base distribution for identical-copies")
    p_sim.add_argument("--sigma", type=float, default=1.0)
    p_sim.add_argument("--half-width", type=float, default=1.0)
    p_sim.add_argument("--bound", type=float, default=1.0)
    p_sim.add_argument("--exponent", type=float, default=1.0)
    p_sim.add_argument("--p", type=float, default=2.0)
    p_sim.add_argument("--s", type=float, default=1.0)
    p_sim.add_argument("--n-grid", type=_int_list, required=True)
    p_sim.add_argument("--eps-grid", type=_float_list, required=True)
    p_sim.add_argument("--replications", type=int, default=200)
    p_sim.add_argument("--seed", type=int, default=0, help="base seed")
    p_sim.add_argument("--tau-single", type=float,
                       help="override the per-variable norm bound")
    p_sim.add_argument("--normalizations", default="mean,mz",
                       help="comma list from: mean, mz")
    _add_common(p_sim)

    return parser, sub


def _apply_config(argv, sub):
    """Load --config key=value defaults into the chosen subparser (explicit
    flags still win, argparse applies defaults only for absent options)."""
    if "--config" in argv:
        path = argv[argv.index("--config") + 1] if argv.index("--config") + 1 < len(argv) else None
    else:
        path = next((a.split("=", 1)[1] for a in argv if a.startswith("--config=")), None)
    if path is None:
        return
    command = next((a for a in argv if not a.startswith("-")), None)
    if command not in sub.choices:
        return
    parser = sub.choices[command]
    entries = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {body!r}")
        key, value = body.split("=", 1)
        entries[key.strip().replace("-", "_")] = value.strip()
    defaults = {}
    for action in parser._actions:
        if action.dest in entries:
            raw = entries[action.dest]
            if isinstance(action, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
                defaults[action.dest] = raw.lower() in ("1", "true", "yes")
            elif action.type is not None:
                defaults[action.dest] = action.type(raw)
            else:
                defaults[action.dest] = raw
            # a value from the config satisfies a required option
            action.required = False
    parser.set_defaults(**defaults)


def _cmd_conjugate(args):
    pi = as_pindex(args.p)
    if args.y is None and args.grid is None:
        raise ValueError("need --y or --grid")
    if args.grid is not None:
        lo, hi, count = args.grid.split(":")
        lo, hi, count = float(lo), float(hi), int(count)
        ys = [lo + (hi - lo) * i / (count - 1) for i in range(count)] if count > 1 else [lo]
    else:
        ys = [args.y]
    analytic_ok = pi.p > 1.0
    q = conjugate_index(pi) if analytic_ok else None
    headers = ["y", "phi_p", "conjugate", "legendre", "argmax"]
    rows = []
    spec = NFunctionSpec.builtin(pi)
    for y in ys:
        res = legendre_transform(spec, y)
        analytic = phi_p_eval(q, y) if analytic_ok else float("nan")
        rows.append([y, phi_p_eval(pi, y), analytic, res.value, res.argmax])
    _print_table(headers, rows, args.precision)
    if args.out:
        _write_rows(args.out, "conjugate", headers, rows)
    return EXIT_OK


def _build_cgf_model(args):
    if args.model == "gaussian":
        return GaussianCgf(args.sigma)
    if args.model == "rademacher":
        return RademacherCgf()
    if args.model == "uniform":
        return CenteredUniformCgf(args.half_width)
    if args.model == "bounded":
        return BoundedCenteredCgf(args.bound)
    if args.model == "abs-gauss-power":
        return AbsGaussianPowerCgf(args.exponent)
    if args.samples is None:
        raise ValueError("empirical model needs --samples FILE")
    return EmpiricalCgf(tuple(read_samples(args.samples)))


def _cmd_norm(args):
    model = _build_cgf_model(args)
    est = tau_norm(model, args.p)
    headers = ["model", "p", "tau", "method", "sup_location"]
    rows = [[model.label, args.p, est.tau, est.method,
             est.sup_location if est.sup_location is not None else float("nan")]]
    _print_table(headers, rows, args.precision)
    if args.out:
        _write_rows(args.out, "norm", headers, rows)
    return EXIT_OK


def _cmd_tailbound(args):
    pi = as_pindex(args.p)
    if args.kind == "basic":
        if args.C is None:
            raise ValueError("basic bound needs --C")
        headers = ["epsilon", "bound"]
        rows = [[e, tail_bound(pi, args.C, e)] for e in args.eps]
    elif args.kind == "slln":
        if args.c is None or args.alpha is None or args.n is None:
            raise ValueError("slln bound needs --c, --alpha and --n")
        params = SllnBoundParams(c=args.c, alpha=args.alpha, p=pi)
        headers = ["n", "epsilon", "bound", "valid"]
        rows = []
        for n in args.n:
            for e in args.eps:
                bv = partial_sum_tail_bound(params, TailQuery(e, n, MEAN_SCALE))
                rows.append([n, e, bv.value, bv.valid])
    else:
        if args.b is None or args.s is None or args.n is None:
            raise ValueError("mz bound needs --b, --s and --n")
        params = MzParams(b=args.b, s=args.s, p=pi)
        headers = ["n", "epsilon", "bound", "valid"]
        rows = []
        for n in args.n:
            for e in args.eps:
                bv = mz_tail_bound(params, TailQuery(e, n, MZ_SCALE))
                rows.append([n, e, bv.value, bv.valid])
    _print_table(headers, rows, args.precision)
    if args.out:
        _write_rows(args.out, "tailbound", headers, rows)
    return EXIT_OK


def _read_pairs(args):
    if (args.pairs is None) == (args.table is None):
        raise ValueError("need exactly one of --pairs or --table")
    pairs = []
    if args.pairs is not None:
        for tok in args.pairs.split(","):
            tok = tok.strip()
            if not tok:
                continue
            n, tau = tok.split(":")
            pairs.append((float(n), float(tau)))
    else:
        for lineno, line in enumerate(
                Path(args.table).read_text(encoding="utf-8").splitlines(), 1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            toks = body.replace(",", " ").split()
            if len(toks) != 2:
                raise ValueError(f"{args.table}:{lineno}: expected 'n tau', got {body!r}")
            pairs.append((float(toks[0]), float(toks[1])))
    return pairs


def _cmd_slln_check(args):
    fit = slln_condition_fit(_read_pairs(args))
    headers = ["c", "alpha", "residual", "hypothesis_satisfied",
               "series_finite", "series_upper_bound", "n0"]
    if fit.satisfied:
        report = series_sum_bound(
            SllnBoundParams(c=fit.c, alpha=fit.alpha, p=as_pindex(args.p)), args.eps)
        rows = [[fit.c, fit.alpha, fit.residual, True,
                 report.finite, report.upper_bound, report.n0]]
    else:
        rows = [[fit.c, fit.alpha, fit.residual, False, False, float("inf"), 0]]
        print("norm-growth hypothesis not satisfied: fitted alpha <= 0 "
              "(norm grows at least linearly, as for identical copies)")
    _print_table(headers, rows, args.precision)
    if args.out:
        _write_rows(args.out, "slln-check", headers, rows)
    return EXIT_OK


def _build_distribution(args):
    iid = {
        "rademacher": lambda: sim.Rademacher(),
        "gaussian": lambda: sim.Gaussian(args.sigma),
        "uniform": lambda: sim.CenteredUniform(args.half_width),
        "abs-gauss-power": lambda: sim.AbsGaussianPower(args.exponent),
    }
    if args.dist in iid:
        return iid[args.dist]()
    if args.dist == "martingale":
        return sim.BoundedMartingaleDifference(args.bound)
    return sim.IdenticalCopies(iid[args.base]())


def _cmd_simulate(args):
    dist = _build_distribution(args)
    normalizations = tuple(tok.strip() for tok in args.normalizations.split(",") if tok.strip())
    for norm in normalizations:
        if norm not in (MEAN_SCALE, MZ_SCALE):
            raise ValueError(f"unknown normalization {norm!r}")
    n_max = max(args.n_grid)
    spec = sim.SequenceSpec(dist, n_max, args.seed)
    report = sim.convergence_report(
        spec, s=args.s, n_grid=args.n_grid, eps_grid=args.eps_grid,
        replications=args.replications, seed_base=args.seed, p=args.p,
        tau_single=args.tau_single, normalizations=normalizations)

    print(f"distribution={report.distribution} p={_fmt(report.p, args.precision)} "
          f"s={_fmt(report.s, args.precision)} replications={report.replications} "
          f"seed_base={report.seed_base} tau_single={_fmt(report.tau_single, args.precision)}")
    _print_table(
        ["n", "mean|S_n|/n", "mean|S_n|/n^(1/s)"],
        [[r.n, r.mean_abs_mean_scaled, r.mean_abs_mz_scaled] for r in report.checkpoints],
        args.precision)
    print()
    _print_table(
        ["n", "epsilon", "normalization", "frequency", "std_error",
         "bound", "valid", "violated"],
        [[r.n, r.epsilon, r.normalization, r.frequency, r.std_error,
          r.bound, r.bound_valid, r.violated] for r in report.exceedances],
        args.precision)
    if args.out:
        report.write(args.out)
    if report.any_violation:
        print("bound violation detected (frequency > bound + 3 std errors)",
              file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


_COMMANDS = {
    "conjugate": _cmd_conjugate,
    "norm": _cmd_norm,
    "tailbound": _cmd_tailbound,
    "slln-check": _cmd_slln_check,
    "simulate": _cmd_simulate,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, sub = _build_parser()
    try:
        _apply_config(argv, sub)
        args = parser.parse_args(argv)
        if not (1 <= args.precision <= 15):
            raise ValueError("--precision must be between 1 and 15")
        return _COMMANDS[args.command](args)
    except SystemExit as exc:  # argparse --help or usage error
        return int(exc.code or 0)
    except (ValueError, OSError) as exc:
        print(f"phisub: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"phisub: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
