"""Command-line interface.

Exit codes: 0 success, 2 for malformed input (bad files, bad flags,
inconsistent dimensions), 3 for numerical failures (instability, rank
deficiency, pole hits).  Output files are written atomically; a nonzero
exit never leaves an output file behind.  All configuration is flags --
no environment variables -- and identical inputs produce byte-identical
outputs.
"""

import argparse
import json
import sys

import numpy as np

from . import serialize
from .adi import validate_shifts
from .balancing import hankel_singular_values, hsv_estimates_from_data
from .exceptions import NumericalError, ValidationError
from .loewner import build_block_loewner
from .lyapunov import CholeskyFactor
from .adi import small_cholesky
from .model import validate_system
from .pipeline import (
    compare_roms,
    parse_grid_spec,
    reduce_adi_intrusive,
    reduce_data_driven,
    required_samples,
)
from .sampling import sample_model


def _emit(doc, out_path, summary):
    """Write machine output to --out (or stdout) plus a one-line summary."""
    if out_path:
        serialize.write_json_atomic(out_path, doc)
        print(f"{summary} -> {out_path}")
    else:
        print(json.dumps(doc, indent=1))
        print(summary, file=sys.stderr)


def _fmt(values, count=3):
    return ", ".join(f"{float(v):.6g}" for v in list(values)[:count])


def _load_shift_set(path, m, p):
    alphas, betas = serialize.load_shifts(path)
    return validate_shifts(alphas, betas, m, p)


def cmd_hsv(args):
    sys_ = validate_system(serialize.load_system(args.model))
    hsv = hankel_singular_values(sys_)
    _emit(serialize.hsv_to_json(hsv), args.out, f"{len(hsv)} Hankel singular values, largest {_fmt(hsv, 1)}")
    return 0


def cmd_sample(args):
    sys_ = validate_system(serialize.load_system(args.model))
    shifts = _load_shift_set(args.shifts, sys_.m, sys_.p)
    plan = required_samples(shifts)
    ds = sample_model(sys_, plan.points, plan.derivative_points)
    serialize.save_dataset(ds, args.out)
    print(
        f"{len(plan.points)} samples ({len(plan.derivative_points)} with derivative) -> {args.out}"
    )
    return 0


def cmd_reduce(args):
    if args.method == "bt":
        if not args.model:
            raise ValidationError("--method bt requires --model")
        from .balancing import intrusive_balanced_truncation

        sys_ = validate_system(serialize.load_system(args.model))
        rom, _ = intrusive_balanced_truncation(sys_, order=args.order)
    elif args.method == "adi":
        if not (args.model and args.shifts):
            raise ValidationError("--method adi requires --model and --shifts")
        sys_ = validate_system(serialize.load_system(args.model))
        shifts = _load_shift_set(args.shifts, sys_.m, sys_.p)
        rom = reduce_adi_intrusive(sys_, shifts, order=args.order)
    else:
        if not (args.samples and args.shifts):
            raise ValidationError("--method dd requires --samples and --shifts")
        ds = serialize.load_dataset(args.samples)
        shifts = _load_shift_set(args.shifts, ds.m, ds.p)
        rom = reduce_data_driven(ds, shifts, order=args.order)
    serialize.save_system(rom, args.out)
    print(f"order-{rom.n} reduced model ({args.method}) -> {args.out}")
    return 0


def cmd_hsv_est(args):
    ds = serialize.load_dataset(args.samples)
    shifts = _load_shift_set(args.shifts, ds.m, ds.p)
    interim = build_block_loewner(ds, shifts)
    if args.identity_z:
        z_p = CholeskyFactor(np.eye(shifts.k))
        z_q = CholeskyFactor(np.eye(shifts.l))
    else:
        z_p = small_cholesky(shifts.alphas)
        z_q = small_cholesky(shifts.betas)
    est = hsv_estimates_from_data(interim, z_p, z_q)
    _emit(serialize.hsv_to_json(est), args.out, f"{len(est)} estimates, leading {_fmt(est)}")
    return 0


def cmd_compare(args):
    a = validate_system(serialize.load_system(args.a))
    b = validate_system(serialize.load_system(args.b))
    try:
        grid = parse_grid_spec(args.grid)
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc
    report = compare_roms(a, b, grid)
    _emit(
        serialize.report_to_json(report),
        args.out,
        f"max relative deviation {report.max_deviation:.6g} over {len(report.grid)} points",
    )
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="adibt",
        description="Balanced truncation of LTI models, intrusively or from transfer-function samples.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    q = sub.add_parser("hsv", help="Hankel singular values of a model")
    q.add_argument("--model", required=True)
    q.add_argument("--out")
    q.set_defaults(func=cmd_hsv)

    q = sub.add_parser("sample", help="sample a model at the mirror images of a shift set")
    q.add_argument("--model", required=True)
    q.add_argument("--shifts", required=True)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_sample)

    q = sub.add_parser("reduce", help="compute a reduced-order model")
    q.add_argument("--method", required=True, choices=("bt", "adi", "dd"))
    q.add_argument("--model")
    q.add_argument("--shifts")
    q.add_argument("--samples")
    q.add_argument("--order", type=int)
    q.add_argument("--out", required=True)
    q.set_defaults(func=cmd_reduce)

    q = sub.add_parser("hsv-est", help="estimate Hankel singular values from samples")
    q.add_argument("--samples", required=True)
    q.add_argument("--shifts", required=True)
    q.add_argument("--out")
    q.add_argument("--identity-z", action="store_true",
                   help="debug: skip the shift-space weighting (plain singular values)")
    q.set_defaults(func=cmd_hsv_est)

    q = sub.add_parser("compare", help="compare two models over a frequency grid")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q.add_argument("--grid", default="log:1e-3:1e3:100", help="log:LO:HI:N (default %(default)s)")
    q.add_argument("--out")
    q.set_defaults(func=cmd_compare)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
