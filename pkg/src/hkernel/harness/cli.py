"""``hk`` command line: verify, eval, pair, calibrate.

Exit codes: 0 when every check passes, 1 on a failed check or numerical
error, 2 on a configuration error.
"""

import argparse
import json
import sys

from ..config import DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, load_config
from ..errors import ConfigError, HKError, UnknownSuiteError
from ..operators import OperatorParams
from .calibrate import calibrate
from .gallery import GALLERY_NAMES, gallery
from .report import all_passed, reports_to_csv, reports_to_json
from .suites import ROUTES, SUITES, RunConfig, run_suite
from .tabulate import TABLES, parse_params, render, tabulate

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def _common(p):
    p.add_argument("--n", type=int, help="dimension of H_n")
    p.add_argument("--alpha", type=float, help="alpha in L + alpha |T|")
    p.add_argument("--config", help="flat key = value file of quadrature and tolerance settings")
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="hk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, help=f"one of {', '.join(sorted(SUITES))}")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--format", choices=("json", "csv"), default="json")
    v.add_argument("--timing", action="store_true", help="include wall times (not reproducible)")
    _common(v)

    e = sub.add_parser("eval", help="tabulate values on a grid")
    e.add_argument("what", choices=sorted(TABLES))
    e.add_argument("--params", default="", help="e.g. n=1,alpha=0.5")
    e.add_argument("--grid", default="", help="e.g. x=0.5:3:6,y=0,t=0 (start:stop:count)")
    e.add_argument("--format", choices=("csv", "json"), default="csv")
    e.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("pair", help="evaluate <Phi_alpha, f> for a gallery function")
    p.add_argument("--route", choices=sorted(ROUTES), required=True)
    p.add_argument("--function", choices=GALLERY_NAMES, required=True)
    _common(p)

    c = sub.add_parser("calibrate", help="fit c in L_alpha(f * Phi_alpha) = c f")
    c.add_argument("--function", choices=GALLERY_NAMES, default="G1")
    _common(c)
    return parser


def _settings(args):
    quad, tol, extra = DEFAULT_QUADRATURE, DEFAULT_TOLERANCES, {}
    if getattr(args, "config", None):
        try:
            quad, tol, extra = load_config(args.config)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from exc
    n = args.n if getattr(args, "n", None) is not None else extra.get("n")
    alpha = args.alpha if getattr(args, "alpha", None) is not None else extra.get("alpha")
    return quad, tol, n, alpha, extra


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _verify(args):
    quad, tol, n, alpha, extra = _settings(args)
    if args.suite not in SUITES:
        raise UnknownSuiteError(f"unknown suite {args.suite!r}")
    if args.jobs < 1:
        raise ConfigError("--jobs must be at least 1")
    cfg = RunConfig(quad, tol, n, alpha, extra.get("seed", RunConfig.seed), args.jobs, args.timing)
    reports = run_suite(args.suite, cfg)
    text = (reports_to_json if args.format == "json" else reports_to_csv)(reports, args.timing)
    _emit(text, args.out)
    failed = [r.check_id for r in reports if not r.passed]
    print(f"{args.suite}: {len(reports) - len(failed)}/{len(reports)} passed", file=sys.stderr)
    for cid in failed:
        print(f"FAIL {cid}", file=sys.stderr)
    return EXIT_OK if all_passed(reports) else EXIT_FAIL


def _eval(args):
    params = parse_params(args.params, args.what)
    header, rows = tabulate(args.what, args.grid, params)
    _emit(render(header, rows, args.format), args.out)
    return EXIT_OK


def _pair(args):
    quad, tol, n, alpha, _ = _settings(args)
    n = 1 if n is None else n
    alpha = 0.0 if alpha is None else alpha
    res = ROUTES[args.route](OperatorParams(n, alpha), gallery(args.function, n), quad, tol)
    out = {"route": args.route, "function": args.function, "n": n, "alpha": alpha,
           "value": float(res.value), "error": float(res.error)}
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK


def _calibrate(args):
    quad, tol, n, alpha, _ = _settings(args)
    if n not in (None, 1):
        raise ConfigError("calibration is implemented for n = 1")
    alpha = 0.0 if alpha is None else alpha
    res = calibrate(gallery(args.function, 1), alpha, quad, tol)
    out = {"function": res.function, "n": 1, "alpha": res.alpha, "global_scale": res.c,
           "imag_part": res.c_imag, "residual": res.residual, "samples": res.samples,
           "evaluations": res.evaluations, "warnings": list(res.warnings), "tolerance": 5e-2,
           "passed": res.residual <= 5e-2}
    _emit(json.dumps(out, indent=2, sort_keys=True) + "\n", args.out)
    return EXIT_OK if out["passed"] else EXIT_FAIL


COMMANDS = {"verify": _verify, "eval": _eval, "pair": _pair, "calibrate": _calibrate}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, UnknownSuiteError) as exc:
        print(f"hk: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except HKError as exc:
        print(f"hk: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
