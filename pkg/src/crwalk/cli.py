"""Command-line front end: spectrum, critical, simulate, eigenfunction.

Each subcommand writes machine-readable rows (CSV with a fixed header, or a
JSON object {meta, rows}) with floats printed to 17 significant digits so the
output round-trips exactly.  Identical configurations produce byte-identical
files.  Exit codes: 0 pass, 1 invariant/acceptance failure, 2 numerical
non-convergence, 64 bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import List, Optional

import numpy as np

from . import __version__
from .errors import ConvergenceFailure, NoConvergence
from .eigenfunctions import (Normalization, indexed_eigenfunction,
                             rotation_number)
from .oracle import refine_eigenvalue
from .params import ModelParams
from .simulator import fit_decay, initial_state, profile_distance, simulate
from .spectrum import (DoubleRootAtSOne, asymptotic_nu, char_residual,
                       critical_s, dominant, spectrum_slice)

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_NONCONVERGENCE = 2
EXIT_USAGE = 64


def _fmt(x: float) -> str:
    return "%.17g" % x


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--S", type=float, default=None,
                     help="nondimensional speed (exclusive with the triple)")
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--mu", type=float, default=None)
    sub.add_argument("--L", type=float, default=None)
    sub.add_argument("--out", type=str, default=None,
                     help="output path (default: stdout)")
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def _params_from(args) -> ModelParams:
    triple = (args.gamma, args.mu, args.L)
    has_triple = all(t is not None for t in triple)
    if args.S is not None and any(t is not None for t in triple):
        raise SystemExit(EXIT_USAGE)
    if args.S is not None:
        return ModelParams(args.S)
    if has_triple:
        return ModelParams.from_dimensional(args.gamma, args.mu, args.L)
    raise SystemExit(EXIT_USAGE)


def _meta(args, params: ModelParams, extra: Optional[dict] = None) -> dict:
    meta = {
        "schema_version": SCHEMA_VERSION,
        "tool_version": __version__,
        "command": args.command,
        "S": params.S,
        "gamma": params.gamma,
        "mu": params.mu,
        "L": params.L,
    }
    for key in ("n_max", "N", "t_end", "init", "seed", "n", "j"):
        if hasattr(args, key):
            meta[key] = getattr(args, key)
    if extra:
        meta.update(extra)
    return meta


def _emit(args, meta: dict, header: List[str], rows: List[List[float]],
          footer: Optional[dict] = None) -> None:
    if args.format == "json":
        payload = {"meta": meta, "rows": [dict(zip(header, r)) for r in rows]}
        if footer:
            payload["meta"]["summary"] = footer
        text = json.dumps(payload, indent=2, sort_keys=True)
        text += "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(header)
        for r in rows:
            writer.writerow([_fmt(c) if isinstance(c, float) else str(c)
                             for c in r])
        text = buf.getvalue()
        if footer:
            for k in sorted(footer):
                v = footer[k]
                text += f"# {k}={_fmt(v) if isinstance(v, float) else v}\r\n"
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def cmd_spectrum(args) -> int:
    params = _params_from(args)
    try:
        pairs = spectrum_slice(params, args.n_max)
    except ConvergenceFailure as exc:
        return _fail(EXIT_NONCONVERGENCE, f"non-convergence: {exc}")
    header = ["n", "j", "nu_re", "nu_im", "lambda_re", "lambda_im",
              "residual", "oracle_distance", "asymptotic_gap"]
    rows = []
    lam0 = pairs[0].lam.real
    violations = []
    for pair in pairs:
        if isinstance(pair.nu, DoubleRootAtSOne):
            nu_val = complex(0.0, 0.0)
            residual = 0.0
        else:
            nu_val = complex(pair.nu.value)
            residual = char_residual(nu_val, pair.parity, params.S)
            if residual > 1e-12 * (1.0 + abs(nu_val)):
                violations.append(f"residual bound failed at n={pair.n}")
        try:
            refined = refine_eigenvalue(params, pair.lam)
            oracle_dist = abs(refined.lam - pair.lam)
        except NoConvergence as exc:
            return _fail(EXIT_NONCONVERGENCE, f"non-convergence: {exc}")
        if pair.n >= 1:
            gap = abs(nu_val - asymptotic_nu(params, pair.n, pair.j))
            if pair.lam.real >= lam0:
                violations.append(f"dominance failed at n={pair.n}, j={pair.j}")
        else:
            gap = math.nan
        rows.append([pair.n, pair.j if pair.j is not None else 0,
                     nu_val.real, nu_val.imag,
                     complex(pair.lam).real, complex(pair.lam).imag,
                     residual, oracle_dist, gap])
    _emit(args, _meta(args, params), header, rows)
    if violations:
        return _fail(EXIT_INVARIANT, "invariant violated: " + "; ".join(violations))
    return EXIT_OK


def cmd_critical(args) -> int:
    params = _params_from(args) if (args.S is not None or args.gamma is not None) \
        else ModelParams(1.0)
    header = ["m", "nu_m", "S_m", "tan_residual"]
    rows = []
    prev = None
    violations = []
    for m in range(1, args.n_max + 1):
        c = critical_s(m)
        resid = abs(math.tan(c.nu_m) - c.nu_m)
        if resid > 1e-10:
            violations.append(f"tan residual too large at m={m}")
        if prev is not None and not c.S_m < prev:
            violations.append(f"S_m not decreasing at m={m}")
        prev = c.S_m
        rows.append([m, c.nu_m, c.S_m, resid])
    _emit(args, _meta(args, params), header, rows)
    if violations:
        return _fail(EXIT_INVARIANT, "invariant violated: " + "; ".join(violations))
    return EXIT_OK


def cmd_simulate(args) -> int:
    params = _params_from(args)
    S = params.S
    lam0 = dominant(params).lam.real
    t_start = 1.0 / S + 1.0
    t_end = args.t_end if args.t_end is not None \
        else t_start + 27.6 / abs(lam0)
    init = initial_state(args.init, args.N, params=params, seed=args.seed)
    result = simulate(init, params, t_end,
                      snapshot_times=np.linspace(0.0, t_end, 201))
    fit = fit_decay(result.times, result.norms, (t_start, t_end))
    header = ["t", "norm", "profile_distance"]
    rows = []
    for ts in sorted(result.snapshots):
        st = result.snapshots[ts]
        k = int(np.argmin(np.abs(result.times - st.t)))
        rows.append([float(st.t), float(result.norms[k]),
                     profile_distance(st, params)])
    rel_err = abs(fit.rate - lam0) / abs(lam0)
    footer = {
        "decay_rate": fit.rate,
        "decay_amplitude": fit.amplitude,
        "decay_r_squared": fit.r_squared,
        "fit_window_start": fit.window[0],
        "fit_window_end": fit.window[1],
        "lambda0": lam0,
        "relative_rate_error": rel_err,
    }
    _emit(args, _meta(args, params), header, rows, footer)
    if rel_err >= 0.01:
        return _fail(EXIT_INVARIANT,
                     f"fitted rate {fit.rate} off lambda0 {lam0} by {rel_err:.2%}")
    return EXIT_OK


def cmd_eigenfunction(args) -> int:
    params = _params_from(args)
    x = np.linspace(-0.5, 0.5, args.N + 1)
    try:
        fn = indexed_eigenfunction(params, args.n, args.j, x,
                                   Normalization.CANONICAL_COEFFICIENT)
        summary = rotation_number(fn)
    except ConvergenceFailure as exc:
        return _fail(EXIT_NONCONVERGENCE, f"non-convergence: {exc}")
    header = ["x", "u_re", "u_im", "v_re", "v_im"]
    rows = [[float(xi), float(ui.real), float(ui.imag),
             float(vi.real), float(vi.imag)]
            for xi, ui, vi in zip(fn.x, fn.u, fn.v)]
    footer = {
        "n_expected": summary.n_expected,
        "half_turns_u": summary.half_turns_u,
        "half_turns_v": summary.half_turns_v,
        "monotone_argument": summary.monotone_argument,
    }
    _emit(args, _meta(args, params), header, rows, footer)
    ok = (summary.half_turns_u == args.n == summary.half_turns_v)
    if not ok:
        return _fail(EXIT_INVARIANT, "rotation number does not match n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="crwalk",
                     description="Spectral and time-domain toolkit for the "
                                 "two-speed transport system")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("spectrum", help="eigenvalues with cross-checks")
    _add_common(sp)
    sp.add_argument("--n-max", dest="n_max", type=int, default=5)
    sp.set_defaults(func=cmd_spectrum)

    cr = subs.add_parser("critical", help="double-root parameters S_m")
    _add_common(cr)
    cr.add_argument("--n-max", dest="n_max", type=int, default=5)
    cr.set_defaults(func=cmd_critical)

    sim = subs.add_parser("simulate", help="time-domain decay run")
    _add_common(sim)
    sim.add_argument("--N", type=int, default=2000)
    sim.add_argument("--t-end", dest="t_end", type=float, default=None)
    sim.add_argument("--init", choices=("eigen", "box", "hat", "random", "jump"),
                     default="box")
    sim.add_argument("--seed", type=int, default=0)
    sim.set_defaults(func=cmd_simulate)

    ef = subs.add_parser("eigenfunction", help="sampled eigenfunction and "
                                               "rotation summary")
    _add_common(ef)
    ef.add_argument("--n", type=int, default=0)
    ef.add_argument("--j", type=int, choices=(1, 2), default=1)
    ef.add_argument("--N", type=int, default=1000)
    ef.set_defaults(func=cmd_eigenfunction)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
