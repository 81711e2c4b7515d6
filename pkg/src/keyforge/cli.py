"""Command-line front end: key lifecycle, simulation and analysis tables.

Exit codes: 0 success, 2 I/O or file-format error, 3 length mismatch,
4 decode failure.  All commands are deterministic for fixed flags and
seed; output files are written to a temporary name and renamed on
success so failures leave no partial files.
"""

import argparse
import csv
import os
import sys
import tempfile

import mpmath as mp
import numpy as np

from . import analysis, extractor, gc
from .channel import RngStream

EXIT_OK = 0
EXIT_IO = 2
EXIT_LENGTH = 3
EXIT_DECODE = 4


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _fmt_p(x):
    return mp.nstr(mp.mpf(x), 3)


def _write_file(path, data):
    d = os.path.dirname(os.path.abspath(path)) or "."
    try:
        fd, tmp = tempfile.mkstemp(dir=d)
        with os.fdopen(fd, "wb") as f:
            f.write(data)
        os.replace(tmp, path)
    except OSError as e:
        raise CliError("cannot write %s: %s" % (path, e), EXIT_IO)


def _read_file(path):
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as e:
        raise CliError("cannot read %s: %s" % (path, e), EXIT_IO)


def _load_code(name):
    try:
        code = gc.preset(name)
    except KeyError as e:
        raise CliError(str(e), EXIT_IO)
    if isinstance(code, gc.ReferenceParams):
        raise CliError("preset %r is parameters-only" % name, EXIT_IO)
    return code


def _read_response(path, n):
    data = _read_file(path)
    if len(data) != (n + 7) // 8:
        raise CliError("response file must contain exactly %d bits (%d bytes)"
                       % (n, (n + 7) // 8), EXIT_LENGTH)
    return extractor.unpack_bits(data, n)


# ---- subcommands ------------------------------------------------------------

def cmd_gen(args):
    code = _load_code(args.code)
    response = _read_response(args.response, code.n)
    helper, key = extractor.gen(response, code, RngStream(args.seed))
    _write_file(args.helper, extractor.serialize_helper(helper))
    _write_file(args.key, key.key)
    print("wrote helper %s and key %s (code %s, n=%d)"
          % (args.helper, args.key, code.name, code.n))
    return EXIT_OK


def cmd_rep(args):
    data = _read_file(args.helper)
    try:
        helper = extractor.parse_helper(data)
    except extractor.HelperFormatError as e:
        raise CliError("helper file: %s" % e, EXIT_IO)
    response = _read_response(args.response, helper.n)
    try:
        key = extractor.rep(response, helper)
    except ValueError as e:
        raise CliError(str(e), EXIT_LENGTH)
    if key is None:
        raise CliError("decoding failed; key not reproduced", EXIT_DECODE)
    _write_file(args.key, key.key)
    print("reproduced key written to %s" % args.key)
    return EXIT_OK


def cmd_simulate(args):
    _load_code(args.code)
    gmd = args.gmd == "on"
    res = analysis.monte_carlo_block_error(args.code, args.p, args.trials,
                                           args.seed, gmd=gmd, threads=args.threads)
    lo, hi = res.interval
    print("code=%s p=%s trials=%d gmd=%s" % (args.code, _fmt_p(args.p), args.trials, args.gmd))
    print("block errors: %d  estimate=%s  wilson95=[%s, %s]"
          % (res.failures, _fmt_p(res.estimate), _fmt_p(lo), _fmt_p(hi)))
    if res.failures == 0:
        print("zero failures: rule-of-three upper bound %s" % _fmt_p(res.upper_bound))
    for key in sorted(res.taxonomy):
        print("  %s: %d" % (key, res.taxonomy[key]))
    if args.csv:
        w = csv.writer(sys.stdout)
        w.writerow(["code", "p", "trials", "gmd", "failures", "estimate", "wilson_lo", "wilson_hi"])
        w.writerow([args.code, args.p, args.trials, args.gmd, res.failures,
                    res.estimate, lo, hi])
    return EXIT_OK


def cmd_analyze(args):
    _load_code(args.code)
    try:
        models = analysis.preset_stage_models(args.code, args.p,
                                              transform_trials=args.transform_trials)
    except KeyError as e:
        raise CliError(str(e), EXIT_IO)
    probs = [analysis.stage_fail_prob(m) for m in models]
    bound = analysis.union_bound(probs)
    print("code=%s p=%s (channel transforms from %d trials)"
          % (args.code, _fmt_p(args.p), args.transform_trials))
    for i, (m, pr) in enumerate(zip(models, probs), 1):
        print("  stage %d: n_out=%d channel=(%s, %s)  P(S_%d)=%s"
              % (i, m.n_out, _fmt_p(m.p_err), _fmt_p(m.p_eras), i, _fmt_p(pr)))
    print("union bound: %s" % _fmt_p(bound))
    return EXIT_OK


def _parse_k_range(spec):
    try:
        lo, hi = spec.split(":")
        return range(int(lo), int(hi) + 1)
    except ValueError:
        raise CliError("--k-range must look like LO:HI", EXIT_IO)


def cmd_radius(args):
    rows = analysis.radius_table(args.n, _parse_k_range(args.k_range))
    w = csv.writer(sys.stdout)
    w.writerow(["k", "l_max", "tau_lmax", "half_distance"])
    for row in rows:
        w.writerow(list(row))
    return EXIT_OK


def cmd_table4(args):
    ref = gc.preset("ref-bch-rep-2226")
    rows = [("ref-bch-rep-2226", "1.0e-9 (reported)", ref.n, "GF(2^%d)" % ref.field_bits)]
    for name in ("gc-rm-2048", "rs-2048", "rs-1152", "gc-rs-1024"):
        code = gc.preset(name)
        models = analysis.preset_stage_models(name, 0.14,
                                              transform_trials=args.transform_trials)
        bound = analysis.union_bound([analysis.stage_fail_prob(m) for m in models])
        fb = code.largest_field_bits
        field = "GF(2)" if fb == 1 else "GF(2^%d)" % fb
        rows.append((name, _fmt_p(bound), code.n, field))
    print("%-18s %-18s %-8s %s" % ("code", "P_err (bound)", "length", "largest field"))
    for r in rows:
        print("%-18s %-18s %-8d %s" % r)
    return EXIT_OK


# ---- entry point ------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="keyforge",
                                 description="PUF key reproduction codes: generate/reproduce keys, "
                                             "simulate and analyze block error rates")
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="enroll a response, writing helper data and key")
    g.add_argument("--code", required=True)
    g.add_argument("--response", required=True)
    g.add_argument("--helper", required=True)
    g.add_argument("--key", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(fn=cmd_gen)

    r = sub.add_parser("rep", help="reproduce the key from a noisy response")
    r.add_argument("--helper", required=True)
    r.add_argument("--response", required=True)
    r.add_argument("--key", required=True)
    r.set_defaults(fn=cmd_rep)

    s = sub.add_parser("simulate", help="Monte-Carlo block error rate")
    s.add_argument("--code", required=True)
    s.add_argument("--p", type=float, required=True)
    s.add_argument("--trials", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--gmd", choices=["on", "off"], default="on")
    s.add_argument("--threads", type=int, default=None,
                   help="worker processes (default: KEYFORGE_THREADS, 0 = auto)")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(fn=cmd_simulate)

    a = sub.add_parser("analyze", help="analytic per-stage failure probabilities and union bound")
    a.add_argument("--code", required=True)
    a.add_argument("--p", type=float, default=0.14)
    a.add_argument("--transform-trials", type=int, default=2 * 10 ** 6)
    a.set_defaults(fn=cmd_analyze)

    d = sub.add_parser("radius", help="power-decoding radius table (CSV)")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--k-range", required=True, help="LO:HI inclusive")
    d.add_argument("--csv", action="store_true", help="accepted for symmetry; output is always CSV")
    d.set_defaults(fn=cmd_radius)

    t = sub.add_parser("table4", help="comparison table of the preset constructions")
    t.add_argument("--transform-trials", type=int, default=2 * 10 ** 6)
    t.set_defaults(fn=cmd_table4)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as e:
        print("error: %s" % e, file=sys.stderr)
        return e.code


if __name__ == "__main__":
    sys.exit(main())
