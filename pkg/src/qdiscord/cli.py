"""Command-line interface.

Subcommands: ``discord`` (evaluate one state file), ``table1`` (optimal
measurement clusters for random X-states), ``histogram`` (optimal
measurement distribution for random states), ``mixture`` (discord and its
upper bound along the product/entangled mixture family), ``scatter``
(discord versus upper bound for random states).

Exit codes: 0 success, 2 unparseable input, 3 a parsed matrix is not a
valid state.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import StateParseError, ValidationError
from .experiments import (HISTOGRAM_HEADER, MIXTURE_HEADER, SCATTER_HEADER,
                          TABLE1_HEADER, ExperimentConfig, bound_scatter,
                          mixture_curve, optimal_direction_clusters,
                          optimal_direction_histogram, render_csv, write_output)
from .measures import angles_from_direction, quantum_discord
from .statefile import parse_state_text

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID_STATE = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} is not a positive integer")
    return value


def _bins(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{text!r} is not of the form TxP, e.g. 100x100")
    return _positive_int(parts[0]), _positive_int(parts[1])


def _add_experiment_flags(parser: argparse.ArgumentParser, default_samples: int) -> None:
    parser.add_argument("--samples", type=_positive_int, default=default_samples,
                        help=f"number of samples (default {default_samples})")
    parser.add_argument("--seed", type=int, default=42, help="stream seed (default 42)")
    parser.add_argument("--workers", type=_positive_int, default=1,
                        help="worker processes; the output does not depend on this")
    parser.add_argument("--out", default=None,
                        help="output CSV path (default: stdout); written atomically")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdiscord",
        description="Classical correlation, quantum discord, and the "
                    "maximal-correlation-direction upper bound for two-qubit states.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("discord", help="evaluate a single state file")
    p.add_argument("statefile", help="text file with a 4x4 complex matrix")
    p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("table1", help="optimal-measurement clusters for random X-states")
    _add_experiment_flags(p, default_samples=10000)
    p.add_argument("--cluster-tol", type=float, default=0.01,
                   help="cluster tolerance between axes, in units of pi (default 0.01)")

    p = sub.add_parser("histogram", help="optimal-measurement histogram for random states")
    _add_experiment_flags(p, default_samples=10000)
    p.add_argument("--bins", type=_bins, default=(100, 100),
                   help="theta x phi bin counts, e.g. 100x100 (default)")

    p = sub.add_parser("mixture", help="discord and upper bound along the mixture family")
    _add_experiment_flags(p, default_samples=101)

    p = sub.add_parser("scatter", help="discord versus upper bound for random states")
    _add_experiment_flags(p, default_samples=10000)

    return parser


def _report_lines(report) -> list[str]:
    theta, phi = angles_from_direction(report.optimal_direction)
    nx, ny, nz = report.mcdm_direction
    return [
        f"mutual information       : {report.mutual_information:.12g}",
        f"classical correlation    : {report.classical_correlation:.12g}",
        f"quantum discord          : {report.discord:.12g}",
        f"mcdm discord             : {report.mcdm_discord:.12g}",
        f"optimal theta/pi         : {theta / math.pi:.12g}",
        f"optimal phi/pi           : {phi / math.pi:.12g}",
        f"min conditional entropy  : {report.min_conditional_entropy:.12g}",
        f"mcdm conditional entropy : {report.mcdm_conditional_entropy:.12g}",
        f"mcdm direction           : {nx:.12g} {ny:.12g} {nz:.12g}",
    ]


def _report_json(report) -> str:
    theta, phi = angles_from_direction(report.optimal_direction)
    payload = {
        "mutual_information": report.mutual_information,
        "classical_correlation": report.classical_correlation,
        "discord": report.discord,
        "mcdm_discord": report.mcdm_discord,
        "optimal_direction": [float(x) for x in report.optimal_direction],
        "optimal_theta_over_pi": theta / math.pi,
        "optimal_phi_over_pi": phi / math.pi,
        "min_conditional_entropy": report.min_conditional_entropy,
        "mcdm_conditional_entropy": report.mcdm_conditional_entropy,
        "mcdm_direction": [float(x) for x in report.mcdm_direction],
    }
    return json.dumps(payload, indent=2, sort_keys=True)


def _cmd_discord(args) -> int:
    try:
        with open(args.statefile) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.statefile!r}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        matrix = parse_state_text(text)
    except StateParseError as exc:
        print(f"error: {args.statefile}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        report = quantum_discord(matrix)
    except ValidationError as exc:
        print(f"error: {args.statefile}: not a valid density matrix: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE
    if args.json:
        print(_report_json(report))
    else:
        print("\n".join(_report_lines(report)))
    return EXIT_OK


def _config_from(args, **extra) -> ExperimentConfig:
    return ExperimentConfig(samples=args.samples, seed=args.seed,
                            workers=args.workers, out=args.out, **extra)


def _cmd_table1(args) -> int:
    config = _config_from(args, cluster_tol=args.cluster_tol)
    rows = optimal_direction_clusters(config)
    write_output(render_csv(TABLE1_HEADER, rows), config.out)
    return EXIT_OK


def _cmd_histogram(args) -> int:
    config = _config_from(args, bins=args.bins)
    rows = optimal_direction_histogram(config)
    write_output(render_csv(HISTOGRAM_HEADER, rows), config.out)
    return EXIT_OK


def _cmd_mixture(args) -> int:
    config = _config_from(args)
    rows = mixture_curve(config)
    write_output(render_csv(MIXTURE_HEADER, rows), config.out)
    return EXIT_OK


def _cmd_scatter(args) -> int:
    config = _config_from(args)
    rows, mean_sq = bound_scatter(config)
    summary = f"# mean_squared_gap = {mean_sq:.12g}"
    write_output(render_csv(SCATTER_HEADER, rows, summary=summary), config.out)
    return EXIT_OK


_COMMANDS = {
    "discord": _cmd_discord,
    "table1": _cmd_table1,
    "histogram": _cmd_histogram,
    "mixture": _cmd_mixture,
    "scatter": _cmd_scatter,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
