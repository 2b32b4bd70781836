"""Command-line interface.

Exit codes: 0 success, 1 verification or consistency failure, 2 input error.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from ._backend import available
from .bench import compare_backends, run_bench
from .decompose import certificate_problems, decompose
from .errors import ThinrepError, UsageError
from .field import FieldSpec
from .filtrations import refine_filtrations
from .formats import emit_certificate, emit_instance, parse_certificate, parse_filtrations, parse_instance
from .oracle import PlantSpec, multiplicities_via_hom, plant_instance, random_instance, random_orientation
from .quiver import Barcode, Orientation

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec.parse(text)
    except ThinrepError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_decompose(args) -> int:
    A = parse_instance(_read(args.instance))
    dec = decompose(A)
    sys.stdout.write(dec.barcode.to_text())
    if args.certificate:
        Path(args.certificate).write_text(emit_certificate(dec))
    if args.verify:
        problems = certificate_problems(A, dec)
        if problems:
            for p in problems:
                print(f"verification failed: {p}", file=sys.stderr)
            return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    A = parse_instance(_read(args.instance))
    dec = parse_certificate(_read(args.certificate))
    problems = certificate_problems(A, dec)
    for p in problems:
        print(f"verification failed: {p}", file=sys.stderr)
    if problems:
        return EXIT_FAIL
    sys.stdout.write(dec.barcode.to_text())
    return EXIT_OK


def cmd_generate(args) -> int:
    rng = random.Random(args.seed)
    if args.orientation is not None:
        orientation = Orientation.parse(args.orientation)
        if args.n is not None and args.n != orientation.n:
            raise UsageError(f"--n {args.n} disagrees with orientation of {orientation.n} vertices")
    elif args.n is not None:
        if args.n < 1:
            raise UsageError("--n must be at least 1")
        orientation = random_orientation(args.n, rng)
    else:
        raise UsageError("give --n or --orientation")
    if args.barcode is not None:
        barcode = Barcode.parse(orientation.n, args.barcode)
        A, _ = plant_instance(PlantSpec(orientation, barcode, args.field, rng.getrandbits(64)))
    else:
        A = random_instance(orientation, args.max_dim, args.field, rng.getrandbits(64))
    text = emit_instance(A)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args) -> int:
    A = parse_instance(_read(args.instance))
    if A.n > args.max_n:
        raise UsageError(f"n={A.n} exceeds the oracle bound {args.max_n} (raise it with --max-n)")
    sys.stdout.write(multiplicities_via_hom(A).to_text())
    return EXIT_OK


def cmd_refine(args) -> int:
    filt = parse_filtrations(_read(args.filtrations))
    basis = refine_filtrations(filt)
    sys.stdout.write(basis.to_text())
    problems = basis.problems(filt)
    for p in problems:
        print(f"compatibility check failed: {p}", file=sys.stderr)
    return EXIT_FAIL if problems else EXIT_OK


def cmd_bench(args) -> int:
    if args.count < 0 or args.n < 1 or args.dim < 0 or args.jobs < 1:
        raise UsageError("--count and --dim must be >= 0, --n and --jobs >= 1")
    if args.backend not in ("auto", "both") and args.backend not in available():
        raise UsageError(f"backend {args.backend!r} is not available")
    if args.backend == "both":
        reports = compare_backends(args.n, args.dim, args.count, args.field, args.seed)
    else:
        reports = [run_bench(args.n, args.dim, args.count, args.field, args.seed,
                             backend=args.backend, jobs=args.jobs)]
    print("\n".join(r.to_text() for r in reports), end="")
    return EXIT_OK if all(r.passed == r.count for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="thinrep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="print the barcode of an instance file")
    p.add_argument("instance")
    p.add_argument("--certificate", metavar="PATH", help="write the change-of-basis certificate here")
    p.add_argument("--verify", action="store_true", help="re-check the certificate before exiting")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="write a planted or random instance")
    p.add_argument("--n", type=int)
    p.add_argument("--orientation", help="string of f/b, e.g. fbf")
    p.add_argument("--barcode", help="planted barcode, e.g. 1-4:1,2-3:2,4-4")
    p.add_argument("--field", type=_field, default=FieldSpec(101))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-dim", type=int, default=3, help="dimension bound for random instances")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("oracle", help="barcode from Hom dimensions (small n only)")
    p.add_argument("instance")
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("refine", help="basis compatible with two filtrations")
    p.add_argument("filtrations")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("bench", help="time decomposition of planted instances")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--dim", type=int, default=8, help="vertex dimension bound")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--field", type=_field, default=FieldSpec(101))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--backend", choices=["auto", "python", "compiled", "both"], default="auto")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InputError) as exc:  # ParseError is a UsageError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ThinrepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
