"""Command line interface.

Subcommands: demo, validate, charge, equiv, selfcheck.  Exit codes are a
stable contract: 0 for success/pass, 1 for domain failures (validation,
equivalence not found, precondition violations), 2 for usage and parse
errors.  Results go to stdout, diagnostics to stderr.  The environment
variable GERBECALC_TOL overrides the default tolerances when the --tol flag
is not given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bicomplex import BigradedCochain, TotalCochain, big_d, cech_delta
from .builders import build_gerbopole, build_minus_one_gerbe, build_monopole
from .cover import check_good_cover
from .deligne import (
    DEFAULT_EQUIVALENCE_TOL,
    DEFAULT_VALIDATION_TOL,
    charge,
    gauge_equivalent,
    gauge_shift,
    validate_cocycle,
)
from .errors import FormatError, GerbecalcError
from .randomdata import (
    random_bigraded,
    random_complex_and_cover,
    random_gauge_potential,
    random_total,
)
from .rng import Lcg64
from .serialize import load_datum, save_datum, save_witness
from .simplicial import exterior_derivative

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

_BUILDERS = {
    "minus1": build_minus_one_gerbe,
    "monopole": build_monopole,
    "gerbopole": build_gerbopole,
}

IDENTITY_TOL = 1e-12


def _resolve_tol(flag_value: float | None, fallback: float) -> float:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("GERBECALC_TOL")
    if env is None:
        return fallback
    try:
        return float(env)
    except ValueError:
        raise FormatError(f"GERBECALC_TOL is not a number: {env!r}") from None


def _format_tuple(t: tuple[int, ...]) -> str:
    return "(" + ",".join(str(i) for i in t) + ")"


def cmd_demo(args) -> int:
    datum = _BUILDERS[args.name](args.m, winding=args.winding)
    if args.perturb_gauge is not None:
        rng = Lcg64(args.perturb_gauge)
        potential = random_gauge_potential(
            datum.cover, datum.level + 1, rng, amplitude=0.5
        )
        datum = gauge_shift(datum, potential)
    print(f"level: {datum.level}")
    print("nerve: " + " ".join(_format_tuple(t) for t in datum.cover.nerve()))
    for entry in check_good_cover(datum.cover).warnings:
        print(
            f"note: overlap {_format_tuple(entry.indices)} is not contractible, "
            f"betti={entry.betti}",
            file=sys.stderr,
        )
    print(f"charge: {charge(datum):.9f}")
    if args.out:
        save_datum(args.out, datum)
        print(f"wrote {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    datum = load_datum(args.file)
    tol = _resolve_tol(args.tol, DEFAULT_VALIDATION_TOL)
    report = validate_cocycle(datum, tol)
    for (p, n) in sorted(report.residuals):
        print(f"residual (p={p},n={n}): {report.residuals[(p, n)]:.3e}")
    if report.passed:
        print(f"PASS (tol={tol:g})")
        return EXIT_OK
    for peak in report.worst[:3]:
        print(
            f"worst: |r|={peak.magnitude:.3e} at bidegree {peak.bidegree}, "
            f"overlap {_format_tuple(peak.indices)}, cell {_format_tuple(peak.cell)}",
            file=sys.stderr,
        )
    print(f"FAIL (tol={tol:g})")
    return EXIT_DOMAIN


def cmd_charge(args) -> int:
    datum = load_datum(args.file)
    print(f"{charge(datum):.9f}")
    return EXIT_OK


def cmd_equiv(args) -> int:
    first = load_datum(args.a)
    second = load_datum(args.b)
    tol = _resolve_tol(args.tol, DEFAULT_EQUIVALENCE_TOL)
    result = gauge_equivalent(first, second, tol)
    if result.equivalent:
        print(f"EQUIVALENT (residual {result.residual:.3e})")
        if args.out:
            save_witness(args.out, first.cover, result.witness)
            print(f"wrote witness {args.out}", file=sys.stderr)
        return EXIT_OK
    print(f"NOT-FOUND (residual {result.residual:.3e})")
    return EXIT_DOMAIN


def _identity_residuals(cover, rng, break_sign: bool) -> dict[str, float]:
    """Residual sup-norms of the four operator identities on random data."""
    complex = cover.complex
    top = complex.top_dimension
    out = {"delta2": 0.0, "d2": 0.0, "anticommute": 0.0, "D2": 0.0}

    def dbar_maybe_broken(cochain):
        # the --break-sign hook drops the (-1)^n twist, which ruins both the
        # anticommutation identity and the nilpotency of D
        sign = 1.0 if break_sign else (-1.0 if cochain.cech_degree % 2 else 1.0)
        comps = {}
        for t in sorted(cochain.components):
            sub = complex if cochain.cech_degree == 0 else cover.overlap(t)
            der = exterior_derivative(cochain.components[t], sub).scaled(sign)
            if der.values:
                comps[t] = der
        return BigradedCochain(
            cochain.form_degree + 1, cochain.cech_degree, comps
        )

    for n in range(0, min(2, len(cover.sets)) + 1):
        for p in range(0, top + 1):
            c = random_bigraded(cover, p, n, rng)
            out["delta2"] = max(
                out["delta2"], cech_delta(cech_delta(c, cover), cover).sup_norm()
            )
            out["d2"] = max(
                out["d2"], dbar_maybe_broken(dbar_maybe_broken(c)).sup_norm()
            )
            mixed = cech_delta(dbar_maybe_broken(c), cover) + dbar_maybe_broken(
                cech_delta(c, cover)
            )
            out["anticommute"] = max(out["anticommute"], mixed.sup_norm())

    def total_d(total):
        acc: dict[tuple[int, int], BigradedCochain] = {}

        def put(key, piece):
            if piece.components:
                acc[key] = acc[key] + piece if key in acc else piece

        for key in sorted(total.parts):
            part = total.parts[key]
            put((key[0], key[1] + 1), cech_delta(part, cover))
            put((key[0] + 1, key[1]), dbar_maybe_broken(part).scaled(-1.0))
        return TotalCochain(total.total_degree + 1, acc)

    for degree in (1, 2):
        total = random_total(cover, degree, rng)
        if break_sign:
            out["D2"] = max(out["D2"], total_d(total_d(total)).sup_norm())
        else:
            out["D2"] = max(out["D2"], big_d(big_d(total, cover), cover).sup_norm())
    return out


def cmd_selfcheck(args) -> int:
    if args.trials < 0:
        raise FormatError("--trials must be non-negative")
    rng = Lcg64(args.seed)
    passed = 0
    failure = None
    for trial in range(args.trials):
        complex, cover = random_complex_and_cover(rng)
        residuals = _identity_residuals(cover, rng, args.break_sign)
        worst = max(residuals.values())
        if worst < IDENTITY_TOL:
            passed += 1
        elif failure is None:
            failure = (trial, complex, cover, residuals)
    print(f"{passed}/{args.trials} passed")
    if args.trials == 0:
        print("warning: no trials run, vacuous pass", file=sys.stderr)
        return EXIT_OK
    if failure is not None:
        trial, complex, cover, residuals = failure
        print(f"counterexample at trial {trial}:", file=sys.stderr)
        print(
            f"  complex: {complex.vertex_count} vertices, "
            f"top dimension {complex.top_dimension}",
            file=sys.stderr,
        )
        print(f"  cover sets: {[sorted(s) for s in cover.sets]}", file=sys.stderr)
        for name, value in residuals.items():
            print(f"  {name} residual: {value:.3e}", file=sys.stderr)
        return EXIT_DOMAIN
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gerbecalc",
        description=(
            "Validate cocycle data on triangulated manifolds, decide gauge "
            "equivalence, and compute integer charges."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="build a worked example and report its charge")
    demo.add_argument("name", choices=sorted(_BUILDERS))
    demo.add_argument("--m", type=int, default=12, help="mesh resolution")
    demo.add_argument("--winding", type=int, default=1)
    demo.add_argument("--out", help="write the datum as JSON")
    demo.add_argument(
        "--perturb-gauge",
        type=int,
        metavar="SEED",
        help="apply a seeded random gauge shift before writing",
    )
    demo.set_defaults(func=cmd_demo)

    validate = sub.add_parser("validate", help="check a datum file is a cocycle")
    validate.add_argument("file")
    validate.add_argument("--tol", type=float, default=None)
    validate.set_defaults(func=cmd_validate)

    charge_cmd = sub.add_parser("charge", help="print the charge of a datum file")
    charge_cmd.add_argument("file")
    charge_cmd.set_defaults(func=cmd_charge)

    equiv = sub.add_parser("equiv", help="decide gauge equivalence of two files")
    equiv.add_argument("a")
    equiv.add_argument("b")
    equiv.add_argument("--tol", type=float, default=None)
    equiv.add_argument("--out", help="write the witness potential as JSON")
    equiv.set_defaults(func=cmd_equiv)

    selfcheck = sub.add_parser(
        "selfcheck", help="verify the operator identities on seeded random data"
    )
    selfcheck.add_argument("--seed", type=int, default=42)
    selfcheck.add_argument("--trials", type=int, default=100)
    selfcheck.add_argument(
        "--break-sign",
        action="store_true",
        help="test hook: drop the alternating sign twist to force a failure",
    )
    selfcheck.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GerbecalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
