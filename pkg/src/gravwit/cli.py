"""Command-line entry point.

    gravwit gamma-table   [--mass-kg LIST] [--sep-um LIST] [physics flags]
    gravwit gamma-sweep   [--mass-kg LIST] [--sep-um LIST] [--gnuplot]
    gravwit witness-curve [--gamma LIST]
    gravwit noise-curve   [--v LIST]
    gravwit mc-check      [--alpha A] [--beta B] [--delta-phi D] [--trials N]

Grids are either comma lists (``0.1,1,5,10``) or inclusive ranges
``min:max:points``.  ``--config FILE`` reads flat ``key = value`` lines using
the same names as the long flags (dashes or underscores); flags given on the
command line win over the file.

Exit codes: 0 success, 1 invalid input, 2 Monte Carlo check failed, 3 I/O error.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import sys

from ._validation import ConfigurationError, DomainError
from .core import ExperimentConfig
from .sweeps import Axis, SweepSpec, run_sweep

log = logging.getLogger("gravwit")

EXIT_OK, EXIT_INVALID, EXIT_CHECK_FAILED, EXIT_IO = 0, 1, 2, 3

_COMMANDS = {
    "gamma-table": "gamma_table",
    "gamma-sweep": "gamma_vs_separation",
    "witness-curve": "witness_vs_gamma",
    "noise-curve": "vcrit_vs_gamma",
    "mc-check": "monte_carlo_check",
}


def load_config(path: str) -> dict:
    """Read a flat ``key = value`` file; ``#`` starts a comment."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path, encoding="utf-8") as fh:
        parser.read_string("[config]\n" + fh.read(), source=path)
    return {k.replace("-", "_"): v for k, v in parser["config"].items()}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file supplying defaults for any flag")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)


def _physics(p: argparse.ArgumentParser) -> None:
    p.add_argument("--mass-kg", help="mass grid, kg")
    p.add_argument("--sep-um", help="separation grid, micrometre")
    p.add_argument("--alpha", type=float, default=1e13, help="coherent amplitude |alpha|")
    p.add_argument("--tau-s", type=float, default=1.0)
    p.add_argument("--r0-m", type=float, default=0.25)
    p.add_argument("--lambda-um", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gravwit", description="Matter-photon entanglement witness sweeps")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("gamma-table", "gamma-sweep"):
        p = sub.add_parser(name, help="overlap |gamma| over mass x separation")
        _common(p)
        _physics(p)
        if name == "gamma-sweep":
            p.add_argument("--gnuplot", action="store_true", help="whitespace layout, one block per mass")

    p = sub.add_parser("witness-curve", help="measured and exact witness against |gamma|")
    _common(p)
    p.add_argument("--gamma", help="|gamma| grid")

    p = sub.add_parser("noise-curve", help="|gamma| at the isotropic-noise threshold")
    _common(p)
    p.add_argument("--v", help="noise parameter grid within [1/3, 1]")

    p = sub.add_parser("mc-check", help="Monte Carlo correlators against closed forms")
    _common(p)
    p.add_argument("--alpha", type=float, default=3.0, help="scaled signal amplitude")
    p.add_argument("--beta", type=float, default=3.0, help="scaled LO amplitude")
    p.add_argument("--delta-phi", type=float, default=0.2)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--cutoff", type=int, default=None, help="Fock cutoff (default: automatic)")
    return parser


def _parse(argv) -> argparse.Namespace:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        values = load_config(args.config)
        subparser = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest for a in subparser._actions}
        unknown = set(values) - known
        if unknown:
            raise ConfigurationError(f"unknown config keys: {', '.join(sorted(unknown))}")
        typed = {}
        for action in subparser._actions:
            if action.dest in values:
                raw = values[action.dest]
                if action.const is True:  # store_true flags
                    typed[action.dest] = raw.strip().lower() in ("1", "true", "yes", "on")
                else:
                    typed[action.dest] = action.type(raw) if action.type else raw
        subparser.set_defaults(**typed)
        args = parser.parse_args(argv)
    return args


def _spec(args: argparse.Namespace) -> SweepSpec:
    grid = []
    base = None
    options = {}
    if args.command in ("gamma-table", "gamma-sweep"):
        if args.mass_kg:
            grid.append(Axis.parse("mass_kg", args.mass_kg))
        if args.sep_um:
            grid.append(Axis.parse("sep_um", args.sep_um))
        base = ExperimentConfig(
            mass=1.0, tau=args.tau_s, r0=args.r0_m, wavelength=args.lambda_um * 1e-6, alpha_mag=args.alpha
        )
    elif args.command == "witness-curve" and args.gamma:
        grid.append(Axis.parse("gamma_mag", args.gamma))
    elif args.command == "noise-curve" and args.v:
        grid.append(Axis.parse("v", args.v))
    elif args.command == "mc-check":
        options = {
            "alpha": args.alpha,
            "beta": args.beta,
            "delta_phi": args.delta_phi,
            "n_trials": args.trials,
            "cutoff": args.cutoff,
        }
    return SweepSpec(
        quantity=_COMMANDS[args.command],
        grid=tuple(grid),
        base_config=base,
        output_path=None,
        format=args.format,
        seed=args.seed,
        threads=max(1, args.threads),
        options=options,
    )


def main(argv=None) -> int:
    try:
        args = _parse(argv)
    except (ConfigurationError, DomainError, ValueError) as exc:
        print(f"gravwit: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"gravwit: cannot read config {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")

    try:
        spec = _spec(args)
        result = run_sweep(spec)
    except (ConfigurationError, DomainError, ValueError) as exc:
        print(f"gravwit: error: {exc}", file=sys.stderr)
        return EXIT_INVALID

    if getattr(args, "gnuplot", False):
        text = result.to_gnuplot("mass_kg")
    else:
        text = result.render(args.format)
    try:
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
            log.info("wrote %d rows to %s", len(result.rows), args.out)
        else:
            sys.stdout.write(text)
    except OSError as exc:
        print(f"gravwit: cannot write {args.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO

    if spec.quantity == "monte_carlo_check":
        passed = result.summary["passed"]
        print(f"mc-check: {'PASS' if passed else 'FAIL'} (max |z| = {result.summary['max_abs_z']:.3f})", file=sys.stderr)
        if not passed:
            return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
