"""Command-line front end.

Exit codes: 0 success, 1 verification or tolerance failure, 2 invalid input.
Reports go to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import HalfInt, expsum_equal_up_to_constant
from .characters import ds_evaluate, ds_numerator
from .roots import SingularPointError, sample_regular_points, weyl_D_sqrt
from .theta import (HCParameter, InvalidParameter, NonHalfInteger, tau_permutation,
                    theta_lift, theta_parameter, theta_signature, validate_hc_parameter)
from .transfer import transfer_bruteforce, transfer_closed_form

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    def __init__(self, name: str, message: str):
        super().__init__(message)
        self.name = name


def env_seed(default: int = 0) -> int:
    raw = os.environ.get("CHC_SEED")
    if raw is None or not raw.strip():
        return default
    try:
        return int(raw)
    except ValueError:
        raise InputError("InvalidSeed", f"CHC_SEED={raw!r} is not an integer") from None


def parse_parameter(p: int, q: int, text: str) -> HCParameter:
    try:
        twice = [HalfInt.of(tok).twice for tok in text.split(",")] if text.strip() else []
    except (ValueError, ZeroDivisionError):
        raise InputError(NonHalfInteger.__name__, f"{text!r} has an entry outside (1/2)Z") from None
    try:
        return validate_hc_parameter(twice, p, q)
    except InvalidParameter as exc:
        raise InputError(type(exc).__name__, str(exc)) from None
    except ValueError as exc:
        raise InputError("InvalidParameter", str(exc)) from None


_PI = re.compile(r"^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d+(?:\.\d+)?))?$")


def parse_angle(tok: str) -> float:
    """A float, or a multiple of π such as ``pi``, ``-pi/2``, ``3pi/4``."""
    tok = tok.strip().lower()
    m = _PI.match(tok)
    if m:
        sign, coef, den = m.groups()
        val = (float(coef) if coef else 1.0) * math.pi / (float(den) if den else 1.0)
        return -val if sign == "-" else val
    try:
        val = float(tok)
    except ValueError:
        raise InputError("InvalidAngle", f"cannot parse angle {tok!r}") from None
    if not math.isfinite(val):
        raise InputError("InvalidAngle", f"angle {tok!r} is not finite")
    return val


def parse_floats(text: str) -> list[float]:
    try:
        vals = [float(Fraction(t.strip())) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise InputError("InvalidList", f"cannot parse {text!r}") from None
    if not vals:
        raise InputError("InvalidList", "empty list")
    return vals


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def dump_csv(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_transfer(args: argparse.Namespace) -> int:
    lam = parse_parameter(args.p, args.q, args.lam)
    sig = theta_signature(lam)
    brute = transfer_bruteforce(lam, sig)
    closed = transfer_closed_form(lam, sig)
    lifted = ds_numerator(theta_lift(lam)).numerator
    match = (bool(brute) and expsum_equal_up_to_constant(brute, closed)
             and expsum_equal_up_to_constant(brute, lifted))
    report = {
        "p": lam.p, "q": lam.q, "a": lam.a, "b": lam.b, "r": sig.r, "s": sig.s,
        "lambda": list(lam.entries.to_strings()),
        "lambda_prime": list(theta_parameter(lam).to_strings()),
        "tau": list(tau_permutation(lam, sig).images),
        "closed_form_numerator": closed.to_json_obj(),
        "bruteforce_numerator": brute.to_json_obj(),
        "match": match,
    }
    sys.stdout.write(dump_json(report))
    return EXIT_OK if match else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    from .sweep import MAX_SWEEP_N, SweepRow, run_sweep

    if not 1 <= args.max_n <= MAX_SWEEP_N:
        raise InputError("InvalidBound", f"max-n must lie in 1..{MAX_SWEEP_N}")
    try:
        bound = HalfInt.of(args.max_abs_lambda).twice
    except (ValueError, ZeroDivisionError):
        raise InputError(NonHalfInteger.__name__, f"{args.max_abs_lambda!r} is not in (1/2)Z") from None
    if bound < 1:
        raise InputError("InvalidBound", "max-abs-lambda must be at least 1/2")
    rows = run_sweep(args.max_n, bound, max(1, args.jobs))
    sys.stdout.write(dump_csv(SweepRow.header(), [r.csv_fields() for r in rows]))
    bad = sum(not r.ok for r in rows)
    print(f"verify: {len(rows)} parameters, {bad} failures", file=sys.stderr)
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_eval(args: argparse.Namespace) -> int:
    lam = parse_parameter(args.p, args.q, args.lam)
    target = theta_lift(lam) if args.lift else lam
    ch = ds_numerator(target)
    n = target.n
    points: list[np.ndarray] = []
    for text in args.theta or []:
        pt = [parse_angle(t) for t in text.split(",")]
        if len(pt) != n:
            raise InputError("InvalidAngle", f"theta {text!r} needs {n} coordinates")
        points.append(np.asarray(pt))
    if args.scan:
        rng = np.random.default_rng(args.seed if args.seed is not None else env_seed())
        points.extend(sample_regular_points(ch.roots, args.scan, rng))
    if not points:
        raise InputError("InvalidAngle", "give --theta or --scan")
    rows, worst = [], 0.0
    for pt in points:
        try:
            val = complex(ds_evaluate(ch, pt))
        except SingularPointError as exc:
            raise InputError(SingularPointError.__name__, f"{exc} at theta={[float(x) for x in pt]}") from None
        bounded = float(weyl_D_sqrt(ch.roots, pt)) * abs(val)
        worst = max(worst, bounded)
        rows.append([";".join(repr(float(x)) for x in pt), repr(val.real), repr(val.imag),
                     repr(bounded)])
    sys.stdout.write(dump_csv(["theta", "re", "im", "dsqrt_abs"], rows))
    bound = ch.numerator.coefficient_bound()
    ok = worst <= bound * (1 + 1e-12)
    print(f"eval: {len(rows)} points, max |D|^1/2|Theta| = {worst:.6g}, bound {bound}",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle(args: argparse.Namespace) -> int:
    from .oracles import oracle_report

    if args.N < 64:
        raise InputError("InvalidN", "N must be at least 64")
    schedule = parse_floats(args.schedule)
    if any(x <= 0 for x in schedule) or len(set(schedule)) != len(schedule):
        raise InputError("InvalidList", "schedule entries must be positive and distinct")
    seed = args.seed if args.seed is not None else env_seed()
    report = oracle_report(N=args.N, seed=seed, points=args.points, schedule=schedule,
                           grid=args.grid, omega_samples=args.omega_samples)
    sys.stdout.write(dump_json(report))
    return EXIT_OK if report["ok"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="chctransfer",
                                 description="Character transfer for unitary dual pairs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_param(sp):
        sp.add_argument("--p", type=int, required=True)
        sp.add_argument("--q", type=int, required=True)
        sp.add_argument("--lambda", dest="lam", required=True,
                        help="comma separated half-integers, e.g. --lambda=1/2,-1/2")

    t = sub.add_parser("transfer", help="transfer one parameter and compare both routes")
    add_param(t)
    t.set_defaults(func=cmd_transfer)

    v = sub.add_parser("verify", help="exhaustive sweep, CSV summary")
    v.add_argument("--max-n", type=int, default=3)
    v.add_argument("--max-abs-lambda", default="5/2")
    v.add_argument("--jobs", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="pointwise character values, CSV")
    add_param(e)
    e.add_argument("--theta", action="append", help="comma separated angles; repeatable")
    e.add_argument("--scan", type=int, default=0, help="add this many random regular points")
    e.add_argument("--seed", type=int, default=None, help="overrides CHC_SEED")
    e.add_argument("--lift", action="store_true", help="evaluate the lifted character on U(r,s)")
    e.set_defaults(func=cmd_eval)

    o = sub.add_parser("oracle", help="numerical oracles, JSON report")
    o.add_argument("--N", type=int, default=2048, help="circle quadrature points")
    o.add_argument("--seed", type=int, default=None, help="overrides CHC_SEED")
    o.add_argument("--points", type=int, default=5, help="random θ' per slice case")
    o.add_argument("--schedule", default="0.5,0.25,0.125")
    o.add_argument("--grid", type=int, default=512, help="torus points per axis")
    o.add_argument("--omega-samples", type=int, default=1000)
    o.set_defaults(func=cmd_oracle)
    return ap


_VALUE_FLAGS = ("--lambda", "--theta", "--schedule")


def _attach_values(argv: Sequence[str]) -> list[str]:
    """Glue ``--lambda -1/2,...`` into ``--lambda=-1/2,...`` so argparse keeps negatives."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_values(argv))
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return EXIT_INPUT


__all__ = ["main", "build_parser", "parse_parameter", "parse_angle"]
