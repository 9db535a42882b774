"""Command-line entry point: ``fouriersub <command> ...``.

Exit codes: 0 success, 1 failed verification, 2 bad arguments. Errors go
to stderr as a single JSON line ``{"error": ..., "code": ...}``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import bound_report
from .core import COND_CAP, SubmatrixSpec, singular_spectrum
from .empirics import Infeasible, RationalShape, default_threads, empirical_rate, grid_csv, rate_grid
from .symmetry import near_symmetry_csv, near_symmetry_map
from .verify import SUITES, run_suite

NEARSYMM_NS = (8, 16, 32)
FIGURE_GRIDS = ((30, "full"), (50, "corner"))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fraction(text: str) -> Fraction:
    if "/" not in text:
        raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}")
    try:
        n, d = (int(x) for x in text.split("/"))
        return Fraction(n, d)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected num/den, got {text!r}") from None


def _shape_arg(text: str) -> str:
    _fraction(text)
    return text


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="fouriersub", description="Conditioning of contiguous DFT submatrices.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("cond", help="singular values and cond of one submatrix")
    c.add_argument("--N", type=_positive, required=True)
    c.add_argument("--p", type=_positive, required=True)
    c.add_argument("--q", type=_positive, required=True)
    c.add_argument("--row-offset", type=int)
    c.add_argument("--col-offset", type=int)

    b = sub.add_parser("bounds", help="computed cond next to every bound")
    b.add_argument("--N", type=_positive, required=True)
    b.add_argument("--p", type=_positive, required=True)
    b.add_argument("--q", type=_positive, required=True)
    b.add_argument("--json", action="store_true")

    r = sub.add_parser("rate", help="empirical growth rate of one shape")
    r.add_argument("--alpha", type=_shape_arg, required=True, help="num/den")
    r.add_argument("--beta", type=_shape_arg, required=True, help="num/den")
    r.add_argument("--cap", type=float, default=16.0, help="log10 of the cond cap")
    r.add_argument("--max-N", type=_positive, default=1 << 15)

    g = sub.add_parser("grid", help="rate map over a grid of shapes, as CSV")
    g.add_argument("--spacing", type=_fraction, required=True, help="1/d")
    g.add_argument("--region", choices=("full", "corner"), default="full")
    g.add_argument("--out", type=Path, required=True)
    g.add_argument("--threads", type=_positive)
    g.add_argument("--max-N", type=_positive, default=1 << 13)

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", choices=("all", *SUITES), default="all")

    f = sub.add_parser("figure", help="CSV datasets for the near-symmetry tables and rate maps")
    f.add_argument("--which", choices=("nearsymm", "rates"), required=True)
    f.add_argument("--out", type=Path, required=True)
    f.add_argument("--threads", type=_positive)
    f.add_argument("--max-N", type=_positive, default=1 << 13)
    return ap


def _cmd_cond(a) -> int:
    if a.p > a.N or a.q > a.N:
        raise UsageError("p and q must not exceed N")
    if (a.row_offset is None) != (a.col_offset is None):
        raise UsageError("give both --row-offset and --col-offset or neither")
    if a.row_offset is None:
        spec = SubmatrixSpec.centered(a.N, a.p, a.q)
    else:
        spec = SubmatrixSpec(a.N, a.p, a.q, a.row_offset, a.col_offset)
    sp = singular_spectrum(spec)
    print(f"sigma_1   {sp.sigma1:.15g}")
    print(f"sigma_min {sp.sigma_min:.15g}")
    print(f"cond      {f'overflow(>{COND_CAP:.0e})' if sp.overflow else f'{sp.cond:.15g}'}")
    return 0


def _cmd_bounds(a) -> int:
    if a.p > a.N or a.q > a.N:
        raise UsageError("p and q must not exceed N")
    rep = bound_report(a.N, a.p, a.q)
    if a.json:
        print(rep.to_json(indent=2))
        return 0
    for k, v in rep.to_dict().items():
        if k.endswith("_log10"):
            continue
        print(f"{k:24s} {v if not isinstance(v, float) else f'{v:.10g}'}")
    return 0


def _cmd_rate(a) -> int:
    try:
        shape = RationalShape.parse(a.alpha, a.beta)
    except ValueError as e:
        raise UsageError(str(e)) from None
    try:
        est = empirical_rate(shape, a.cap, a.max_N)
    except Infeasible as e:
        print(json.dumps({"shape": str(shape), "infeasible": str(e)}))
        return 0
    print(json.dumps({
        "shape": str(shape),
        "N_hi": est.N_hi, "N_lo": est.N_lo,
        "cond_hi_log": est.cond_hi_log, "cond_lo_log": est.cond_lo_log,
        "rho_emp": est.rho_tilde, "accuracy_est": est.accuracy_est,
    }, indent=2))
    return 0


def _spacing_den(spacing: Fraction) -> int:
    if spacing.numerator != 1 or spacing.denominator < 2:
        raise UsageError("--spacing must be 1/d with d >= 2")
    return spacing.denominator


def _cmd_grid(a) -> int:
    d = _spacing_den(a.spacing)
    cells = rate_grid(d, a.region, a.threads or default_threads(), max_N=a.max_N)
    a.out.write_text(grid_csv(cells))
    print(f"wrote {len(cells)} cells to {a.out}")
    return 0


def _cmd_verify(a) -> int:
    ok = True
    for check in run_suite(a.suite):
        print(check.line(), flush=True)
        ok &= check.passed
    return 0 if ok else 1


def _cmd_figure(a) -> int:
    a.out.mkdir(parents=True, exist_ok=True)
    if a.which == "nearsymm":
        for N in NEARSYMM_NS:
            path = a.out / f"nearsymm_N{N}.csv"
            path.write_text(near_symmetry_csv(near_symmetry_map(N)))
            print(f"wrote {path}")
    else:
        threads = a.threads or default_threads()
        for d, region in FIGURE_GRIDS:
            path = a.out / f"rates_{region}_1-{d}.csv"
            path.write_text(grid_csv(rate_grid(d, region, threads, max_N=a.max_N)))
            print(f"wrote {path}")
    return 0


_COMMANDS = {"cond": _cmd_cond, "bounds": _cmd_bounds, "rate": _cmd_rate, "grid": _cmd_grid,
             "verify": _cmd_verify, "figure": _cmd_figure}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as e:
        print(json.dumps({"error": str(e), "code": 2}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
