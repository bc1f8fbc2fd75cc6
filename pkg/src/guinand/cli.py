"""Command-line driver.

Every command writes a :class:`~guinand.report.VerificationReport`.  Exit
status is 0 when all gated checks pass, 2 when one fails and 1 on a
configuration or convergence error.

Examples
--------
::

    guinand verify lemma1 --s 2,3,2.5+0.7i --j-max 200
    guinand verify ppe --x 1,1.5,2,e,5
    guinand matrix build --n 32 --out T.csv
    guinand report merge a.json b.json --out all.json
"""

from __future__ import annotations

import argparse
import json
import math
import platform
import sys
import time
from importlib import metadata

import numpy as np
import scipy

from . import arith, explicit, kernel, linsys, modular
from ._parallel import pmap
from .config import KernelConfig, TruncationPolicy
from .errors import ConvergenceError, MissedZeroError, SingularSystemError, TruncationError
from .report import Check, VerificationReport, format_complex, merge_reports, parse_complex
from .specfun import zeta_zeros
from .theta import theta_power_coeffs


class ConfigError(Exception):
    """Invalid command line; maps to exit status 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _complex_list(text):
    try:
        return [parse_complex(tok) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _real_list(text):
    vals = _complex_list(text)
    if any(v.imag != 0 for v in vals):
        raise argparse.ArgumentTypeError(f"expected real values, got {text!r}")
    return [v.real for v in vals]


def _t_grid(text):
    try:
        lo, hi, step = (float(parse_complex(p).real) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--t-grid expects lo:hi:step, got {text!r}") from None
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError("--t-grid needs lo <= hi and step > 0")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(count)]


# ---------------------------------------------------------------- commands


def _real_tol(s, tol_real=1e-8, tol_complex=1e-6):
    return tol_real if complex(s).imag == 0 else tol_complex


def cmd_verify_lemma1(args, cfg, rep):
    for s in args.s:
        tol = _real_tol(s)
        rep.add(kernel.verify_factorization(s, cfg, tol), kernel.verify_zeta_product(s, cfg, tol))
    rep.add(*qexpansion_checks(200))


def qexpansion_checks(nmax: int = 200) -> list:
    """Exact integer checks ``theta_4^4 - 1 = -8 sum c(k) q^k`` and
    ``theta_2^4 = 16 sum b(n) q^n`` through ``q^nmax``."""
    t4 = theta_power_coeffs(4, 4, nmax).coefficients
    c = arith.coeff_array("c", nmax)
    bad4 = [k for k in range(1, nmax + 1) if t4[k] != -8 * int(c[k])]
    # theta_2^4 carries q^(4/4) = q, so the shifted series is integral
    t2 = theta_power_coeffs(2, 4, nmax).shifted()
    b = arith.coeff_array("b", nmax)
    bad2 = [n for n in range(1, nmax + 1) if t2[n] != 16 * int(b[n])]
    return [
        Check(f"qexp[theta4^4,n<={nmax}]", len(bad4), 0, len(bad4), float(len(bad4)), not bad4,
              0.0, extra={"mismatches": bad4[:10]}),
        Check(f"qexp[theta2^4,n<={nmax}]", len(bad2), 0, len(bad2), float(len(bad2)), not bad2,
              0.0, extra={"mismatches": bad2[:10]}),
    ]


def cmd_verify_ghat_grid(args, cfg, rep):
    for sigma in args.sigma:
        checks = pmap(lambda t: kernel.verify_factorization(complex(sigma, t), cfg, 1e-6), args.t_grid)
        rep.add(*checks)


def cmd_verify_zeros_dip(args, cfg, rep):
    zeros = zeta_zeros(args.zeros)
    rep.add(*pmap(lambda g: kernel.zero_dip(g, cfg), list(zeros)))
    # the dips only mean something next to the identity holding away from the zeros
    rep.add(*pmap(lambda t: kernel.verify_factorization(complex(0.5, t), cfg, 1e-6), args.t_grid))


def cmd_verify_ppe(args, cfg, rep):
    def one(x):
        p = explicit.V_of_x(x, cfg, args.orientation)
        return Check(f"ppe[x={x!r}]", p.lhs_prime_sum, p.rhs_total, p.residual_abs, p.residual_rel,
                     p.residual_rel < 1e-6, 1e-6,
                     extra={"bessel_boundary": p.bessel_boundary, "log_pi_term": p.log_pi_term,
                            "archimedean": p.archimedean, "orientation": args.orientation})

    rep.add(*pmap(one, args.x))
    for x in args.x:
        if x == 1.0:
            continue
        e = explicit.eliminate(x, cfg)
        bc = abs(e.boundary_combined)
        rep.add(
            Check(f"eliminate[x={x!r}].boundary", e.boundary_combined, 0.0, bc, bc,
                  bc < 1e-12, 1e-12),
            Check(f"eliminate[x={x!r}].residual", e.lhs_combined, e.rhs_combined, e.residual,
                  e.residual / max(abs(e.rhs_combined), 1e-300), e.residual < 1e-6, 1e-6),
        )


def cmd_verify_archimedean(args, cfg, rep):
    for x in args.x:
        a = explicit.archimedean_log(x, cfg.policy)
        s = explicit.archimedean_spectral(x, cfg)
        err = abs(a - s)
        rep.add(Check(f"archimedean[x={x!r}]", a, s, err, err / abs(s), err < 1e-5, 1e-5))


def cmd_verify_weight8(args, cfg, rep):
    rep.add(*kernel.weight8_constant_ratio(args.s, cfg, 1e-6))


def cmd_verify_modular(args, cfg, rep):
    rep.add(*modular.modular_suite(policy=cfg.policy))


_STRUCTURE_N = (4, 8, 16, 32)


def cmd_matrix_build(args, cfg, rep):
    tm = linsys.build_system(args.n, cfg)
    rep.add(Check(f"matrix[N={args.n}].positive", float(tm.entries.min()), 0.0, 0.0, 0.0,
                  bool(np.all(tm.entries > 0)), None))
    for n in _STRUCTURE_N:
        if n <= args.n:
            rep.add(*linsys.structure_checks(n, cfg.policy))
    rep.meta["matrix"] = {"N": tm.N, "rhs": tm.rhs.tolist()}
    return tm


def _recovery(tm, ridge, gated):
    try:
        return linsys.recovery_check(tm, ridge, 1e-6, gated)
    except SingularSystemError as exc:
        tag = "synthetic" if tm.meta.get("synthetic") else "true-rhs"
        return Check(f"recovery[{tag},N={tm.N},ridge={ridge:g}]", math.nan, 0.0, math.nan,
                     math.nan, False, 1e-6, gated, {"error": str(exc)})


def cmd_matrix_solve(args, cfg, rep):
    tm = linsys.build_system(args.n, cfg)
    rep.add(_recovery(linsys.synthetic_system(tm), args.ridge, True))
    rep.add(_recovery(tm, args.ridge, False))


def cmd_matrix_residual(args, cfg, rep):
    tm = linsys.build_system(args.n, cfg)
    n_tail = 40 * args.n
    r = linsys.forward_residual(tm, n_tail, cfg.policy)
    worst = float(r.max())
    rep.add(Check(f"forward[N={args.n},n_tail={n_tail}]", worst, 0.0, worst, worst,
                  worst < 1e-6, 1e-6, extra={"per_row": r.tolist()}))
    cut = linsys.forward_residual(tm, args.n, cfg.policy)
    rep.add(Check(f"forward[N={args.n},n_tail={args.n}]", float(cut.max()), 0.0, float(cut.max()),
                  float(cut.max()), True, None, gated=False, extra={"per_row": cut.tolist()}))
    small = linsys.build_system(min(args.n, 8), cfg)
    rep.add(_recovery(linsys.synthetic_system(small), args.ridge, True))


def cmd_psi0_compare(args, cfg, rep):
    rep.add(Check(f"psi0-direct[N={args.n}]", linsys.psi0(args.n), None, 0.0, 0.0, True, None,
                  gated=False))
    rep.add(linsys.psi0_compare(args.n, args.zeros))


def cmd_report_merge(args, cfg, rep):
    reports = []
    for path in args.paths:
        try:
            with open(path) as fh:
                reports.append(VerificationReport.from_dict(json.load(fh)))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read report {path}: {exc}") from None
    merged = merge_reports(reports)
    rep.checks = merged.checks
    rep.meta.update(merged.meta)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--j-max", type=int, default=200, help="outer cutoff of the Bessel double sums")
    common.add_argument("--tail-eps", type=float, default=1e-15, help="relative series tail tolerance")
    common.add_argument("--out", help="output path (default: stdout)")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = _Parser(prog="guinand", description=__doc__.split("\n\n")[0])
    top = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    verify = top.add_parser("verify", help="identity checks").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = verify.add_parser("lemma1", parents=[common])
    sp.add_argument("--s", type=_complex_list, default=[2, 2.5, 3, 1.5 + 5j, 0.5 + 10j])
    sp.set_defaults(func=cmd_verify_lemma1)
    sp = verify.add_parser("ghat-grid", parents=[common])
    sp.add_argument("--t-grid", type=_t_grid, default=[0.0, 5.0, 10.0, 20.0])
    sp.add_argument("--sigma", type=_real_list, default=[0.5], help="Re s of the grid (default 0.5)")
    sp.set_defaults(func=cmd_verify_ghat_grid)
    sp = verify.add_parser("zeros-dip", parents=[common])
    sp.add_argument("--zeros", type=int, default=5)
    sp.add_argument("--t-grid", type=_t_grid, default=[0.0, 5.0, 10.0, 20.0])
    sp.set_defaults(func=cmd_verify_zeros_dip)
    sp = verify.add_parser("ppe", parents=[common])
    sp.add_argument("--x", type=_real_list, default=[1, 1.25, 1.5, 2, math.e, 3, 5])
    sp.add_argument("--archimedean-orientation", dest="orientation",
                    choices=explicit.ORIENTATIONS, default="standard",
                    help="sign convention of the log-pi term (diagnostic)")
    sp.set_defaults(func=cmd_verify_ppe)
    sp = verify.add_parser("archimedean", parents=[common])
    sp.add_argument("--x", type=_real_list, default=[1, 2])
    sp.set_defaults(func=cmd_verify_archimedean)
    sp = verify.add_parser("weight8", parents=[common])
    sp.add_argument("--s", type=_complex_list, default=[2, 2.5, 3])
    sp.set_defaults(func=cmd_verify_weight8)
    sp = verify.add_parser("modular", parents=[common])
    sp.set_defaults(func=cmd_verify_modular)

    matrix = top.add_parser("matrix", help="the truncated linear system").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    for name, func in (("build", cmd_matrix_build), ("solve", cmd_matrix_solve),
                       ("residual", cmd_matrix_residual)):
        sp = matrix.add_parser(name, parents=[common])
        sp.add_argument("--n", type=int, default=16)
        sp.add_argument("--ridge", type=float, default=0.0)
        sp.set_defaults(func=func)

    psi = top.add_parser("psi0", help="Chebyshev sum against the explicit formula").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = psi.add_parser("compare", parents=[common])
    sp.add_argument("--n", type=int, default=10)
    sp.add_argument("--zeros", type=int, default=100)
    sp.set_defaults(func=cmd_psi0_compare)

    rep = top.add_parser("report", help="report utilities").add_subparsers(
        dest="command", required=True, parser_class=_Parser)
    sp = rep.add_parser("merge", parents=[common])
    sp.add_argument("paths", nargs="*")
    sp.set_defaults(func=cmd_report_merge)
    return p


def _validate(args):
    if getattr(args, "n", None) is not None and not 1 <= args.n <= 256:
        raise ConfigError("--n must lie in [1, 256]")
    if args.group == "psi0" and args.n < 2:
        raise ConfigError("psi0 compare needs --n >= 2")
    if getattr(args, "zeros", None) is not None and not 1 <= args.zeros <= 100:
        raise ConfigError("--zeros must lie in [1, 100]")
    if getattr(args, "ridge", None) is not None and not args.ridge >= 0:
        raise ConfigError("--ridge must be nonnegative")
    for x in getattr(args, "x", None) or []:
        if not x > 0:
            raise ConfigError("--x values must be positive")
    try:
        return KernelConfig(args.j_max, TruncationPolicy(tail_epsilon=args.tail_eps))
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _params(args) -> dict:
    skip = {"func", "group", "command", "out", "format"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _versions() -> dict:
    try:
        pkg = metadata.version("guinand")
    except metadata.PackageNotFoundError:
        pkg = "unknown"
    return {"guinand": pkg, "numpy": np.__version__, "scipy": scipy.__version__,
            "python": platform.python_version()}


def _write(text: str, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise ConfigError(f"cannot write {path}: {exc}") from None


def run(argv=None) -> int:
    """Parse ``argv``, run one command and return the exit status."""
    try:
        args = build_parser().parse_args(argv)
        cfg = _validate(args)
    except ConfigError as exc:
        print(f"guinand: error: {exc}", file=sys.stderr)
        return 1
    name = f"{args.group} {args.command}"
    rep = VerificationReport(command=name, params=_params(args))
    rep.meta = {"versions": _versions(),
                "policy": {"j_max": cfg.j_max, "tail_epsilon": cfg.policy.tail_epsilon,
                           "max_terms": cfg.policy.max_terms, "quad_step": cfg.policy.quad_step}}
    start = time.perf_counter()
    try:
        result = args.func(args, cfg, rep)
    except ConfigError as exc:
        print(f"guinand: error: {exc}", file=sys.stderr)
        return 1
    except (TruncationError, ConvergenceError, MissedZeroError, ValueError) as exc:
        print(f"guinand: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    rep.meta["timing"] = {"seconds": time.perf_counter() - start}
    try:
        if name == "matrix build":
            # --out receives the matrix; the report goes to stdout
            _write(result.to_csv(), args.out)
            sys.stdout.write(rep.to_json() if args.out else "")
        else:
            _write(rep.to_csv() if args.format == "csv" else rep.to_json(), args.out)
    except ConfigError as exc:
        print(f"guinand: error: {exc}", file=sys.stderr)
        return 1
    for c in rep.checks:
        if c.gated and not c.passed:
            print(f"FAIL {c.name}: value={_short(c.value)} expected={_short(c.expected)}",
                  file=sys.stderr)
    return 0 if rep.passed else 2


def _short(v):
    if isinstance(v, complex):
        return format_complex(v)
    return v


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
