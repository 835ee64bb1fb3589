"""Command-line front end.

Subcommands::

    bsentangler example {fock,evencat,oddcat,squeezed,hybrid,superposition} [params]
    bsentangler sweep --param {R,gamma,alpha,r,n,t_alpha} --start A --stop B --steps K ...
    bsentangler verify [--corpus-size N] [--profile {default,strict}]

Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

from .fock import CapacityError, DomainError, TruncationConfig
from .scenarios import ExampleId, ExampleSpec, check_example
from .sweep import (
    DEFAULT_OUTPUTS,
    OUTPUT_COLUMNS,
    SWEEP_PARAMETERS,
    SweepSpec,
    evaluate_point,
    run_sweep,
    write_csv,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

_ANGLE = re.compile(r"^\s*([+-]?(?:\d+(?:\.\d*)?|\.\d+)?)\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$")


def parse_angle(text: str) -> float:
    """Parse radians, accepting ``pi`` multiples such as ``pi/2``, ``3pi/2``, ``-2*pi``."""
    m = _ANGLE.match(text.lower())
    if m:
        coef, denom = m.groups()
        c = 1.0 if coef in ("", "+", None) else -1.0 if coef == "-" else float(coef)
        return c * math.pi / (float(denom) if denom else 1.0)
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _coeffs(text: str) -> tuple[complex, ...]:
    return tuple(_complex(t) for t in text.split(","))


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--R", type=float, default=0.05, help="amplitude reflectivity of BS1/BS2")
    g.add_argument("--phi", type=parse_angle, default=0.0, help="reflection phase (radians)")
    g.add_argument("--gamma", type=parse_angle, default=0.0, help="wave-plate phase (radians)")
    g.add_argument("--detector", choices=("D1", "D2"), default="D1")
    g.add_argument("--epsilon-tail", type=float, default=1e-12)
    g.add_argument("--n-max-cap", type=int, default=200)
    g.add_argument("--out", type=Path, default=None, help="CSV output path")
    g.add_argument("--svg", action="store_true", help="also write an SVG plot next to the CSV")
    g.add_argument("--seed", type=int, default=0)
    return g


def _scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--alpha", type=_complex)
    p.add_argument("--t-alpha", type=float, help="|T alpha|; sets alpha = t_alpha / T")
    p.add_argument("--r", type=float, help="squeeze parameter")
    p.add_argument("--theta", type=parse_angle, default=0.0, help="squeeze phase")
    p.add_argument("--coeffs1", type=_coeffs, help="comma-separated amplitudes, arm 1")
    p.add_argument("--coeffs2", type=_coeffs, help="comma-separated amplitudes, arm 2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bsentangler",
                                     description="Beam-splitter entangler simulator")
    sub = parser.add_subparsers(dest="command", required=True)
    g = _global_flags()

    ex = sub.add_parser("example", parents=[g], help="check a named input scenario")
    ex.add_argument("id", choices=[e.value for e in ExampleId])
    _scenario_flags(ex)
    ex.set_defaults(handler=cmd_example, subparser=ex)

    sw = sub.add_parser("sweep", parents=[g], help="sweep one parameter and write CSV")
    sw.add_argument("--example", required=True, choices=[e.value for e in ExampleId])
    sw.add_argument("--param", required=True, choices=SWEEP_PARAMETERS)
    sw.add_argument("--start", required=True, type=parse_angle)
    sw.add_argument("--stop", required=True, type=parse_angle)
    sw.add_argument("--steps", required=True, type=int)
    sw.add_argument("--outputs", default=",".join(DEFAULT_OUTPUTS),
                    help=f"comma-separated subset of {','.join(OUTPUT_COLUMNS)}")
    _scenario_flags(sw)
    sw.set_defaults(handler=cmd_sweep, subparser=sw)

    ve = sub.add_parser("verify", parents=[g], help="run the randomized invariant suite")
    ve.add_argument("--corpus-size", type=int, default=40)
    ve.add_argument("--profile", choices=("default", "strict"), default="default")
    ve.set_defaults(handler=cmd_verify, subparser=ve)
    return parser


_NEEDS = {
    "fock": ("n", "m"),
    "evencat": ("alpha",),
    "oddcat": ("alpha",),
    "squeezed": ("r",),
    "hybrid": ("n", "alpha"),
    "superposition": ("coeffs1",),
}


def _spec_from_args(args, parser, example_id: str, swept: str | None = None) -> ExampleSpec:
    alpha = args.alpha
    if args.t_alpha is not None:
        if alpha is not None:
            parser.error("give --alpha or --t-alpha, not both")
        alpha = args.t_alpha / math.sqrt(1.0 - args.R**2)
    have = {"n": args.n, "m": args.m, "alpha": alpha, "r": args.r, "coeffs1": args.coeffs1}
    # the swept parameter needs no fixed value
    skip = {"t_alpha": "alpha"}.get(swept, swept)
    missing = [k for k in _NEEDS[example_id] if have[k] is None and k != skip]
    if missing:
        flags = ", ".join("--" + ("t-alpha or --alpha" if k == "alpha" else k) for k in missing)
        parser.error(f"{example_id} needs {flags}")
    placeholder = {"alpha": 1.0, "r": 0.0, "n": 1}
    if skip in placeholder and have.get(skip) is None:
        have[skip] = placeholder[skip]
    return ExampleSpec(id=example_id, n=have["n"], m=have["m"], alpha=have["alpha"], r=have["r"],
                       theta=args.theta, coeffs1=args.coeffs1, coeffs2=args.coeffs2,
                       gamma=args.gamma, detector=args.detector)


def _truncation(args, parser) -> TruncationConfig:
    try:
        return TruncationConfig(args.epsilon_tail, args.n_max_cap)
    except DomainError as exc:
        parser.error(str(exc))


def _write(rows, args, parser) -> int:
    if args.svg and args.out is None:
        parser.error("--svg needs --out")
    try:
        if args.out is None:
            write_csv(rows, stream=sys.stdout)
        else:
            write_csv(rows, args.out)
            print(f"wrote {args.out}")
            if args.svg:
                from .plotting import plot_csv

                print(f"wrote {plot_csv(args.out)}")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_example(args, parser) -> int:
    config = _truncation(args, parser)
    spec = _spec_from_args(args, parser, args.id)
    report = check_example(spec, args.R, args.phi, config=config)
    print(report.render())
    outputs = OUTPUT_COLUMNS if spec.id is not ExampleId.SUPERPOSITION else \
        tuple(c for c in OUTPUT_COLUMNS if c != "concurrence_closed_form")
    row = evaluate_point(spec, args.R, args.phi, outputs, config)
    if args.out is not None:
        rc = _write([row], args, parser)
        if rc:
            return rc
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_sweep(args, parser) -> int:
    config = _truncation(args, parser)
    base = _spec_from_args(args, parser, args.example, swept=args.param)
    outputs = tuple(o.strip() for o in args.outputs.split(",") if o.strip())
    spec = SweepSpec(args.param, args.start, args.stop, args.steps, base, args.R, args.phi, outputs)
    rows = run_sweep(spec, config)
    return _write(rows, args, parser)


def cmd_verify(args, parser) -> int:
    from .verify import run_verification

    if args.corpus_size < 1:
        parser.error("--corpus-size must be >= 1")
    report = run_verification(args.corpus_size, args.seed, args.profile, _truncation(args, parser))
    text = report.render()
    print(text)
    if args.out is not None:
        try:
            args.out.write_text(text + "\n", encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args, args.subparser)
    except (DomainError, CapacityError) as exc:
        print(f"bsentangler: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
