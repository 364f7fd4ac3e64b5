#!/usr/bin/env python3
"""
qhyper CLI - expand quantum hyperdeterminants and hyper-Pfaffians, verify their identities.

Usage:
    python cli.py det --n 2 --m 3 --fixed-axis 3
    python cli.py pf --k 2 --m 1 --blocks 2
    python cli.py verify re-det --n 2 --m 3
    python cli.py list --format json
"""

import argparse
import json
import logging
import sys
from typing import Optional

from colorama import Fore, Style, init as colorama_init
from pydantic import ValidationError

from cache import cache
from config import settings
from errors import QHyperError
from models import CliConfig, Mode, OutputFormat
from algebra.hyperalg import HyperAlgebra, hyperdet_fixed, hyperdet_normalized, hyperdet_unnormalized, minor_xi, relations
from algebra.ncalg import NCPoly, RelationSet
from algebra.pfaffian import PfShape, hypf_relations, pf_full, pf_prime, pf_recursive
from algebra.qmatrix import matq_relations
from algebra.render import poly_to_json, poly_to_latex, poly_to_text
from verify.registry import CheckOptions, check_theorem, list_checks

logger = logging.getLogger("qhyper")

EXIT_USAGE = 64
EXIT_FAILURE = 70
EXIT_INTERRUPTED = 130


def print_status(message: str, is_error: bool = False) -> None:
    """Print status message to stderr so it doesn't interfere with the payload."""
    if is_error:
        print(f"{Fore.RED}ERROR:{Style.RESET_ALL} {message}", file=sys.stderr)
    else:
        print(f"{Fore.CYAN}>{Style.RESET_ALL} {message}", file=sys.stderr)


def render_poly(p: NCPoly, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.LATEX:
        return poly_to_latex(p)
    if fmt == OutputFormat.JSON:
        return json.dumps(poly_to_json(p))
    return poly_to_text(p)


def render_relations(rels: RelationSet, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return json.dumps({"label": rels.label, "relations": [poly_to_json(r) for r in rels]}, indent=2)
    return "\n".join(render_poly(r, fmt) for r in rels)


def build_config(args: argparse.Namespace) -> CliConfig:
    """Collect the flags every subcommand shares into a validated CliConfig."""
    fields = {"command": args.command}
    for key in ("n", "m", "k", "axis", "r", "t", "split", "l", "p", "kprime", "trials"):
        value = getattr(args, key, None)
        if value is not None:
            fields[key] = value
    if getattr(args, "blocks", None) is not None:
        fields["n"] = args.blocks
    fields["format"] = args.format
    if getattr(args, "mode", None):
        fields["mode"] = args.mode
    for key in ("samples", "seed", "max_dim", "max_rows", "threads"):
        value = getattr(args, key, None)
        fields[key] = value if value is not None else getattr(settings, key)
    return CliConfig(**fields)


def _require(config: CliConfig, *keys: str) -> None:
    missing = [key for key in keys if getattr(config, key) is None]
    if missing:
        raise QHyperError(f"{config.command} needs --{', --'.join(missing)}")


def cmd_det(args, config: CliConfig) -> int:
    """Handle det command."""
    _require(config, "n", "m")
    alg = HyperAlgebra.cube(config.n, config.m)
    if args.normalized:
        p = hyperdet_normalized(alg)
    elif args.full:
        p = hyperdet_unnormalized(alg)
    else:
        p = hyperdet_fixed(alg, config.axis or 1)
    print(render_poly(p, config.format))
    return 0


def cmd_pf(args, config: CliConfig) -> int:
    """Handle pf command."""
    _require(config, "k", "m", "n")
    shape = PfShape(config.k, config.m, config.n)
    builders = {"prime": pf_prime, "full": pf_full, "recursive": pf_recursive}
    print(render_poly(builders[args.variant](shape), config.format))
    return 0


def _parse_sets(raw: list[str]) -> list[tuple[int, ...]]:
    try:
        return [tuple(int(x) for x in item.split(",") if x) for item in raw]
    except ValueError as exc:
        raise QHyperError(f"index sets must be comma-separated integers: {raw}") from exc


def cmd_minor(args, config: CliConfig) -> int:
    """Handle minor command."""
    _require(config, "n", "m")
    alg = HyperAlgebra.cube(config.n, config.m)
    if args.sets:
        sets = _parse_sets(args.sets)
    else:
        _require(config, "r")
        sets = [tuple(range(1, config.r + 1))] * config.m
    print(render_poly(minor_xi(alg, *sets), config.format))
    return 0


def cmd_relations(args, config: CliConfig) -> int:
    """Handle relations command."""
    if args.family == "hyper":
        _require(config, "n", "m")
        rels = relations(HyperAlgebra.cube(config.n, config.m))
    elif args.family == "matq":
        _require(config, "n")
        rels = matq_relations(config.n)
    else:
        _require(config, "k", "m", "n")
        rels = hypf_relations(PfShape(config.k, config.m, config.n))
    print_status(f"{len(rels)} relations")
    print(render_relations(rels, config.format))
    return 0


def _print_report_text(report) -> None:
    print(f"{report.id}: {report.verdict.value} ({report.mode}, {report.millis} ms)")
    print(f"  anchor: {report.anchor}")
    print(f"  params: {', '.join(f'{k}={v}' for k, v in report.params.items()) or '-'}")
    for label, part in report.parts.items():
        extra = f" [{part.reason}]" if part.reason else ""
        witness = f" witness q0={part.witness}" if part.witness else ""
        print(f"  {label}: {part.verdict.value}{witness}{extra}")
    for note in report.notes:
        print(f"  note: {note}")


def cmd_verify(args, config: CliConfig) -> int:
    """Handle verify command; the exit status follows the verdict."""
    problems = settings.validate()
    if problems:
        for problem in problems:
            print_status(f"Warning: {problem}", is_error=True)
        return EXIT_USAGE
    options = CheckOptions(
        mode=config.mode, samples=config.samples, seed=config.seed,
        max_dim=config.max_dim, max_rows=config.max_rows, threads=config.threads,
    )
    print_status(f"Running {args.id}...")
    report = check_theorem(args.id, config.check_params(), options)
    if config.format == OutputFormat.JSON:
        print(json.dumps(report.to_json(), indent=2))
    else:
        _print_report_text(report)
    return report.verdict.exit_code


def cmd_list(args, config: CliConfig) -> int:
    """Handle list command."""
    infos = list_checks()
    if config.format == OutputFormat.JSON:
        print(json.dumps([info.to_json() for info in infos], indent=2))
        return 0
    width = max(len(info.id) for info in infos)
    for info in infos:
        defaults = " ".join(f"--{k} {v}" for k, v in info.defaults.items())
        print(f"{info.id.ljust(width)}  {info.anchor}")
        if defaults:
            print(f"{' ' * width}  defaults: {defaults}")
    return 0


def cmd_cache_stats(args, config: CliConfig) -> int:
    """Handle cache-stats command."""
    print(json.dumps(cache.stats(), indent=2))
    return 0


def _add_size_flags(parser: argparse.ArgumentParser, *names: str) -> None:
    helps = {
        "n": "Axis size (hypermatrices) or block count (Pfaffians)",
        "m": "Number of axes",
        "k": "Pfaffian block size",
        "axis": "Axis argument (1-based)",
        "r": "Minor size",
        "t": "Laplace block count",
        "split": "Split position for the comultiplication",
        "l": "Second factor's axis count",
        "p": "Composition ratio k / k'",
        "kprime": "Inner block size k'",
        "trials": "Random instances for numeric checks",
    }
    for name in names:
        parser.add_argument(f"--{name}", type=int, default=None, help=helps[name])


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", "-f", choices=[f.value for f in OutputFormat], default="text",
                        help="Output format (default: text)")
    parser.add_argument("--verbose", "-v", action="count", default=0,
                        help="Log INFO (-v) or DEBUG (-vv) to stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qhyper",
        description="qhyper - quantum hyperdeterminants, hyper-Pfaffians and their identities",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python cli.py det --n 2 --m 3 --fixed-axis 3
  python cli.py det --n 2 --m 3 --normalized --format latex
  python cli.py pf --k 2 --m 1 --blocks 2
  python cli.py relations matq --n 2
  python cli.py verify re-det --n 2 --m 3
  python cli.py verify pf-laplace --k 1 --m 1 --blocks 2 --t 1 --mode exact
  python cli.py list --format json

Exit status of verify: 0 verified, 1 refuted, 2 inconclusive, 64 usage error.
        """
    )

    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    det_parser = subparsers.add_parser("det", help="Expand a quantum hyperdeterminant")
    _add_size_flags(det_parser, "n", "m")
    det_parser.add_argument("--fixed-axis", dest="axis", type=int, default=None,
                            help="Axis left unpermuted (default: 1)")
    form = det_parser.add_mutually_exclusive_group()
    form.add_argument("--normalized", action="store_true", help="Full sum divided by [n]_{q^2}!")
    form.add_argument("--full", action="store_true", help="Unnormalized full sum")
    _add_output_flags(det_parser)
    det_parser.set_defaults(func=cmd_det)

    pf_parser = subparsers.add_parser("pf", help="Expand a quantum hyper-Pfaffian")
    _add_size_flags(pf_parser, "k", "m")
    pf_parser.add_argument("--blocks", type=int, default=None, help="Number of blocks n")
    pf_parser.add_argument("--variant", choices=["prime", "full", "recursive"], default="prime",
                           help="Which definition to expand (default: prime)")
    _add_output_flags(pf_parser)
    pf_parser.set_defaults(func=cmd_pf)

    minor_parser = subparsers.add_parser("minor", help="Expand an r-minor hyperdeterminant")
    _add_size_flags(minor_parser, "n", "m", "r")
    minor_parser.add_argument("--sets", nargs="+", default=None,
                              help="One comma-separated index set per axis, e.g. 1,2 2,3")
    _add_output_flags(minor_parser)
    minor_parser.set_defaults(func=cmd_minor)

    rel_parser = subparsers.add_parser("relations", help="Print a family of defining relations")
    rel_parser.add_argument("family", choices=["hyper", "matq", "hypf"], help="Relation family")
    _add_size_flags(rel_parser, "n", "m", "k")
    rel_parser.add_argument("--blocks", type=int, default=None, help="Number of blocks n (hypf)")
    _add_output_flags(rel_parser)
    rel_parser.set_defaults(func=cmd_relations)

    verify_parser = subparsers.add_parser("verify", help="Run a registered theorem check")
    verify_parser.add_argument("id", help="Check id (see the list command)")
    _add_size_flags(verify_parser, "n", "m", "k", "axis", "r", "t", "split", "l", "p", "kprime", "trials")
    verify_parser.add_argument("--blocks", type=int, default=None, help="Number of blocks n (Pfaffian checks)")
    verify_parser.add_argument("--mode", choices=[m.value for m in Mode], default=None,
                               help="Membership arithmetic (default: by size)")
    verify_parser.add_argument("--samples", type=int, default=None, help="Specialization points")
    verify_parser.add_argument("--seed", type=int, default=None, help="Random seed")
    verify_parser.add_argument("--max-dim", dest="max_dim", type=int, default=None, help="Basis size limit")
    verify_parser.add_argument("--max-rows", dest="max_rows", type=int, default=None, help="Span row limit")
    verify_parser.add_argument("--threads", type=int, default=None, help="Span generation threads")
    _add_output_flags(verify_parser)
    verify_parser.set_defaults(func=cmd_verify)

    list_parser = subparsers.add_parser("list", help="List the registered theorem checks")
    _add_output_flags(list_parser)
    list_parser.set_defaults(func=cmd_list)

    stats_parser = subparsers.add_parser("cache-stats", help="Show expansion cache statistics")
    _add_output_flags(stats_parser)
    stats_parser.set_defaults(func=cmd_cache_stats)

    return parser


def configure_logging(verbose: int) -> None:
    if verbose >= 2:
        level = logging.DEBUG
    elif verbose == 1:
        level = logging.INFO
    else:
        level = getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[list[str]] = None) -> int:
    """Main entry point; returns the process exit status."""
    colorama_init()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else 0

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    configure_logging(args.verbose)

    try:
        config = build_config(args)
        return args.func(args, config)
    except KeyboardInterrupt:
        print_status("Operation cancelled by user")
        return EXIT_INTERRUPTED
    except (QHyperError, ValidationError) as e:
        print_status(str(e), is_error=True)
        return EXIT_USAGE
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        print_status(f"Error: {str(e)}", is_error=True)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
