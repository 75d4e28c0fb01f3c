"""Command-line front door.

Commands: validate, stabilize, compare, check, generate, dualize.
Exit codes are part of the public contract: 0 = pass, 1 = malformed input
or unusable input combination, 2 = mathematically invalid data.
"""

from __future__ import annotations

import argparse
import sys

from . import io
from .matrix import Matrix
from .resolution import (
    ModulePresentation,
    dualize,
    generate_resolution,
    validate_resolution,
)
from .rings import ZZ, PrimeField, Ring, RingError
from .stabilize import (
    InputMismatchError,
    StabilizeError,
    schanuel_check,
    total_equivalence,
    verify_certificate,
)

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INVALID = 2


def _print_report(report, verbose: bool):
    for check in report.checks:
        if verbose or not check.ok:
            print(check)
    if report.ok:
        print(f"all {len(report.checks)} checks passed")
    else:
        bad = sum(1 for c in report.checks if not c.ok)
        print(f"{bad} of {len(report.checks)} checks FAILED")


def _load(path: str, want: str | None = None):
    kind, obj = io.load(path)
    if want is not None and kind != want:
        raise io.MalformedFileError(f"{path}: expected a {want} file, found {kind}")
    return kind, obj


def cmd_validate(args) -> int:
    try:
        kind, obj = _load(args.path)
    except (OSError, io.MalformedFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    report = validate_resolution(obj) if kind == "resolution" else verify_certificate(obj)
    _print_report(report, args.verbose)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_stabilize(args, emit_certificate: bool = True) -> int:
    try:
        _, res_p = _load(args.first, "resolution")
        _, res_q = _load(args.second, "resolution")
    except (OSError, io.MalformedFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED

    for label, res in (("first", res_p), ("second", res_q)):
        report = validate_resolution(res)
        if not report.ok:
            print(f"{label} input is not a valid resolution:")
            _print_report(report, args.verbose)
            return EXIT_INVALID

    try:
        cert = total_equivalence(res_p, res_q)
    except InputMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except StabilizeError as exc:
        print(f"stabilization failed: {exc}")
        return EXIT_INVALID

    print("tower ranks t:", " ".join(str(r) for r in cert.t_ranks))
    print("tower ranks s:", " ".join(str(r) for r in cert.s_ranks))
    report = verify_certificate(cert)
    _print_report(report, args.verbose)
    if not report.ok:
        return EXIT_INVALID

    if emit_certificate and args.out:
        io.save(args.out, io.certificate_to_json(cert))
        print(f"certificate written to {args.out}")

    if not emit_certificate:
        comparison = schanuel_check(cert)
        print("homology comparison:")
        for check in comparison.checks:
            print(check)
        if not comparison.ok:
            return EXIT_INVALID
    return EXIT_OK


def cmd_compare(args) -> int:
    return cmd_stabilize(args, emit_certificate=False)


def cmd_check(args) -> int:
    try:
        _, cert = _load(args.path, "certificate")
    except (OSError, io.MalformedFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    report = verify_certificate(cert)
    _print_report(report, args.verbose)
    return EXIT_OK if report.ok else EXIT_INVALID


def _parse_ring(text: str) -> Ring:
    if text == "Z":
        return ZZ
    if text.startswith("Fp:"):
        return PrimeField(int(text[3:]))
    raise RingError(f"unsupported ring {text!r} for this command")


def _parse_module(ring: Ring, text: str) -> ModulePresentation:
    """Module presets.

    Over Z: "0", "Z", "Z/6", or sums like "Z+Z/2+Z/4" (one ambient summand
    per term, one relation column per torsion term). Over a prime field:
    "dim:d" for the free module of dimension d, or "0".
    """
    text = text.strip()
    if text == "0":
        return ModulePresentation(ring, 0, Matrix.zeros(ring, 0, 0))
    if isinstance(ring, PrimeField):
        if text.startswith("dim:"):
            d = int(text[4:])
            return ModulePresentation(ring, d, Matrix(ring, d, 0, ()))
        raise ValueError(f"field modules are given as dim:<d>, got {text!r}")
    terms = [t.strip() for t in text.split("+")]
    ambient = len(terms)
    columns = []
    for i, term in enumerate(terms):
        if term == "Z":
            continue
        if term.startswith("Z/"):
            m = int(term[2:])
            if m <= 1:
                raise ValueError("torsion order must be at least 2")
            col = [0] * ambient
            col[i] = m
            columns.append(col)
            continue
        raise ValueError(f"bad module term {term!r}")
    relations = Matrix(
        ring, ambient, len(columns),
        [columns[j][i] for i in range(ambient) for j in range(len(columns))],
    )
    return ModulePresentation(ring, ambient, relations)


def cmd_generate(args) -> int:
    if args.group is not None:
        print("error: random generation over group rings is unsupported", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        ring = _parse_ring(args.ring)
        presentation = _parse_module(ring, args.module)
    except (ValueError, RingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    res = generate_resolution(
        presentation, n=args.n, max_rank=args.max_rank, seed=args.seed
    )
    report = validate_resolution(res)
    if not report.ok:
        _print_report(report, True)
        return EXIT_INVALID
    io.save(args.out, io.resolution_to_json(res))
    print(f"resolution written to {args.out} (ranks {list(res.complex.ranks)})")
    return EXIT_OK


def cmd_dualize(args) -> int:
    try:
        _, res = _load(args.path, "resolution")
    except (OSError, io.MalformedFileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    try:
        dual = dualize(res)
    except RingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    io.save(args.out, io.resolution_to_json(dual))
    orientation = "cochain" if dual.cochain else "chain"
    print(f"dual ({orientation}) written to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaincert",
        description=(
            "Build and re-check explicit chain homotopy equivalences between "
            "stabilized truncated resolutions."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a resolution or certificate file")
    p.add_argument("path")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser(
        "stabilize",
        help="construct the equivalence between two stabilized resolutions",
    )
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--out", help="write the certificate here")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_stabilize)

    p = sub.add_parser(
        "compare",
        help="stabilize and report the degreewise homology comparison only",
    )
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_compare, out=None)

    p = sub.add_parser("check", help="re-verify a certificate from raw matrices")
    p.add_argument("path")
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("generate", help="write a random valid resolution")
    p.add_argument("--ring", default="Z", help='"Z" or "Fp:<p>"')
    p.add_argument("--group", help="Cayley table file (rejected: generation is Z / F_p only)")
    p.add_argument("--module", default="Z", help='module preset, e.g. "Z/2", "Z+Z/6", "dim:2"')
    p.add_argument("--n", type=int, default=2, help="resolution length")
    p.add_argument("--max-rank", type=int, default=4, dest="max_rank")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("dualize", help="transpose and reverse a field resolution")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_dualize)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
