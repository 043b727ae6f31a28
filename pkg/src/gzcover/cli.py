"""
Command-line interface.  Every subcommand prints JSON on stdout; diagnostics
go to stderr.  Exit codes: 0 success, 1 domain error (error JSON on stdout)
or failed verification, 2 usage error.
"""

import argparse
import json
import os
import sys
from math import comb

import numpy as np

from . import cover, decomp, gz_core, hessenberg, io, linalg_core as lc, sampling, verify
from .errors import GZError, InvalidInput

__all__ = ["build_parser", "main", "run_subcommand"]


def _complex(text):
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _read_stratum(text):
    """A stratum from a JSON file or inline JSON: ``[[1],[1,1]]`` or ``{"n":..,"strata":..}``."""
    if text is None:
        return None
    obj = io.load(text) if os.path.exists(text) else _inline_json(text)
    if isinstance(obj, list):
        obj = {"n": len(obj), "strata": obj}
    return io.decode_stratum(obj)


def _inline_json(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"stratum is neither a file nor valid JSON: {text!r}") from exc


def _matrix(path):
    return io.decode_cmatrix(io.load(path))


def _point(path):
    return io.decode_cover_point(io.load(path))


def cmd_phi(args):
    return gz_core.kw_map(_matrix(args.matrix))


def cmd_sreg_check(args):
    cert = gz_core.is_strongly_regular(_matrix(args.matrix), args.tol)
    return {
        "is_sreg": cert.is_sreg,
        "per_level_regular": list(cert.per_level_regular),
        "intersection_ranks": list(cert.intersection_ranks),
    }


def cmd_flow(args):
    x = _matrix(args.matrix)
    out = []
    for k in range(args.steps + 1):
        out.append(gz_core.gz_flow(x, args.i, args.j, args.t * k / args.steps))
    return out


def cmd_bracket_audit(args):
    rec = verify.check_poisson(args.seed, samples=args.samples, ns=(args.n,))[0]
    return {
        "n": args.n,
        "samples": rec.samples,
        "pairs": comb(comb(args.n + 1, 2), 2),
        "max_residual": rec.max_residual,
        "tolerance": rec.tolerance,
        "passed": rec.passed,
    }


def cmd_stratum_of(args):
    return decomp.stratum_of(_matrix(args.matrix), args.cluster_tol)


def cmd_atlas(args):
    return decomp.atlas(args.n)


def cmd_lift(args):
    x = _matrix(args.matrix)
    data = _read_stratum(args.stratum) or decomp.stratum_of(x, args.cluster_tol)
    return cover.lift(x, data, args.cluster_tol)


def cmd_zd_act(args):
    k = io.decode_zd_element(io.load(args.element))
    return cover.zd_act(k, _point(args.point))


def cmd_transporter(args):
    return cover.transporter(_point(args.source), _point(args.target), args.tol)


def cmd_cover_audit(args):
    data = _read_stratum(args.stratum)
    if data is None:
        data = decomp.RegularDecompositionData(tuple((1,) * i for i in range(1, args.n + 1)))
    if data.n != args.n:
        raise InvalidInput(f"stratum has {data.n} levels but --n is {args.n}")
    rng = np.random.default_rng(args.seed)
    law = trip = span_bad = lift_bad = 0.0
    weakest = np.inf
    for _ in range(args.samples):
        p = sampling.sample_cover_point(data.n, data, rng)
        lift_bad += len(cover.lift(p.x, data, args.cluster_tol)) != decomp.sigma_order(data)
        span_bad += not cover.lift_span_check(p, args.tol)
        if data.n > 1:
            k1, k2 = (sampling.random_zd_element(data, rng, verify.K_BOUND) for _ in range(2))
            lhs = cover.zd_act(k1 * k2, p).x
            rhs = cover.zd_act(k1, cover.zd_act(k2, p)).x
            law = max(law, np.linalg.norm(lhs - rhs) / np.linalg.norm(rhs))
            moved = cover.zd_act(k1, p)
            weakest = min(weakest, np.linalg.norm(moved.x - p.x))
            trip = max(trip, cover.transporter(p, moved, args.tol).distance(k1))
    r, s, total = decomp.zd_dimension(data)
    return {
        "stratum": data,
        "samples": args.samples,
        "sigma_order": decomp.sigma_order(data),
        "dim_ZD": total,
        "lift_count_failures": int(lift_bad),
        "lift_span_failures": int(span_bad),
        "group_law_residual": law,
        "min_displacement": None if np.isinf(weakest) else weakest,
        "transporter_roundtrip": trip,
    }


def cmd_hessenberg_inverse(args):
    return hessenberg.phi_inverse(io.decode_gz_value(io.load(args.gzvalue)))


def cmd_trivialize(args):
    k, x_hess = hessenberg.trivialize(_point(args.point), args.tol)
    return {"k": k, "x_hess": x_hess}


def cmd_verify(args):
    report = verify.run_suite(args.suite, args.seed, n=args.n, samples=args.samples)
    for rec in report.records:
        print(rec.line(), file=sys.stderr)
    print(f"wall time {report.wall_time:.2f}s", file=sys.stderr)
    body = report.to_dict()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(io.encode(body), fh, indent=2)
    # wall time stays out of stdout so that output is reproducible
    body.pop("wall_time")
    return body, (0 if report.passed else 1)


COMMANDS = {
    "phi": cmd_phi,
    "sreg-check": cmd_sreg_check,
    "flow": cmd_flow,
    "bracket-audit": cmd_bracket_audit,
    "stratum-of": cmd_stratum_of,
    "atlas": cmd_atlas,
    "lift": cmd_lift,
    "zd-act": cmd_zd_act,
    "transporter": cmd_transporter,
    "cover-audit": cmd_cover_audit,
    "hessenberg-inverse": cmd_hessenberg_inverse,
    "trivialize": cmd_trivialize,
    "verify": cmd_verify,
}


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--tol", type=float, default=default(lc.DEFAULT_TOL),
                        help="relative tolerance for ranks and solves (default 1e-8)")
    parser.add_argument("--cluster-tol", type=float, default=default(lc.DEFAULT_CLUSTER_TOL),
                        help="eigenvalue clustering tolerance (default 1e-6)")
    parser.add_argument("--seed", type=int, default=default(0), help="random seed (default 0)")


def build_parser():
    parser = argparse.ArgumentParser(prog="gzcover", description="Gelfand-Zeitlin toolkit on gl(n, C)")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help_text):
        return sub.add_parser(name, help=help_text, parents=[common])

    add("phi", "Kostant-Wallach map of a matrix").add_argument("matrix")
    add("sreg-check", "strong-regularity certificate").add_argument("matrix")
    p = add("flow", "trajectory of a GZ flow")
    p.add_argument("matrix")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--t", type=_complex, required=True)
    p.add_argument("--steps", type=_positive, default=10)
    p = add("bracket-audit", "Poisson commutativity on random matrices")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--samples", type=_positive, default=50)
    add("stratum-of", "regular decomposition data of a matrix").add_argument("matrix")
    add("atlas", "strata with dimensions and deck-group orders").add_argument("--n", type=_positive, required=True)
    p = add("lift", "all cover points over a matrix")
    p.add_argument("matrix")
    p.add_argument("--stratum", help="stratum JSON file or inline JSON (default: detected)")
    p = add("zd-act", "act by a Z_D element on a cover point")
    p.add_argument("element")
    p.add_argument("point")
    p = add("transporter", "Z_D element carrying one cover point to another")
    p.add_argument("source")
    p.add_argument("target")
    p = add("cover-audit", "cover and Z_D checks on sampled points of one stratum")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--stratum", help="stratum JSON (default: regular semisimple)")
    p.add_argument("--samples", type=_positive, default=10)
    add("hessenberg-inverse", "Hessenberg matrix with given GZ value").add_argument("gzvalue")
    add("trivialize", "Hessenberg trivialization of a generic cover point").add_argument("point")
    p = add("verify", "run the verification suite")
    p.add_argument("--suite", choices=verify.SUITES, default="all")
    p.add_argument("--n", type=_positive, default=None, help="restrict checks to this n")
    p.add_argument("--samples", type=_positive, default=None, help="override sample counts")
    p.add_argument("--out", help="also write the report (with wall time) to this file")
    return parser


def run_subcommand(argv):
    """Run one subcommand; returns ``(exit_code, stdout_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), ""
    code = 0
    try:
        result = COMMANDS[args.command](args)
        if isinstance(result, tuple):
            result, code = result
        text = io.dumps(result)
    except (GZError, OSError) as exc:
        text = json.dumps({"error": type(exc).__name__, "message": str(exc)}, indent=2)
        code = 1
    return code, text


def main(argv=None):
    code, text = run_subcommand(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
