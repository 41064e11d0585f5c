import argparse
import logging
import sys
from typing import Any, Callable, Dict

from src.cli.commands import ACTIONS, ALIASES, CommandOutput, resolve_action, selftest
from src.cli.io import RunManifest, error_record, ok_record, write_csv, write_json, write_text
from src.errors import ConfigError, DomainError
from src.logging_utils import configure_logging

logger = logging.getLogger(__name__)

REP_TAGS = ("standard", "adjoint", "sym")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    config = parser.add_argument_group("configuration")
    config.add_argument("--config", default=None, help="YAML or JSON harness config file.")
    config.add_argument("--profile", default="standard", help="Named profile under config/harness.")
    config.add_argument("--profile-file", default="default.yaml", help="File under config/harness holding the profile.")
    config.add_argument("--p", type=int, default=None, help="Residue characteristic.")
    config.add_argument("--rep", choices=REP_TAGS, default=None, help="Representation of SL_n.")
    config.add_argument("--degree", type=int, default=None, help="Degree of a sym representation.")
    config.add_argument("--level", type=int, default=None, help="Congruence level behind c3.")
    config.add_argument("--window", type=int, default=None, help="Half length of the window C.")
    config.add_argument("--seed", type=int, default=None, help="Root seed of the random streams.")
    config.add_argument("--samples", type=int, default=None, help="Samples per sweep.")
    config.add_argument("--workers", type=int, default=None, help="Worker processes for the main sweep.")
    config.add_argument("--max-bits", type=int, default=None, help="Largest bit length of any numerator or denominator.")
    io = parser.add_argument_group("input and output")
    io.add_argument("--input", default=None, help="JSON document with the action's arguments.")
    io.add_argument("--out", default=None, help="Write the JSON result here instead of stdout.")
    io.add_argument("--csv", default=None, help="Write plot-ready sample rows here.")
    io.add_argument("--dot", default=None, help="Write a DOT drawing of the vertices here.")
    io.add_argument("--log-level", choices=LOG_LEVELS, default="WARNING", help="Logging level on stderr.")
    return parser


def _add_action_args(parser: argparse.ArgumentParser, command: str) -> None:
    parser.add_argument("action", choices=[*ACTIONS[command], *ALIASES[command]], help="What to compute.")
    if command == "tropical":
        parser.add_argument(
            "--grid",
            nargs=3,
            metavar=("LOWER", "UPPER", "STEPS"),
            default=["-4", "4", "16"],
            help="Rank-1 sample grid for --csv.",
        )
    if command == "tree":
        parser.add_argument("--level-cap", type=int, default=4, help="Largest congruence level an orbit may need.")
    parser.set_defaults(func=_action_command)


def _add_selftest_args(parser: argparse.ArgumentParser) -> None:
    parser.set_defaults(func=_selftest_command)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ultrastab",
        description="Exact p-adic checks of Gauss seminorms, the SL2 tree, Reynolds projectors and stability constants.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    helps = {
        "tropical": "Gauss seminorms and tropicalizations of Laurent polynomials.",
        "tree": "Vertices, geodesics, hulls and orbits in the Bruhat-Tits tree of SL2.",
        "rep": "Weight decompositions, condition (*) and the Reynolds identity.",
        "stability": "Stability constants, decomposition g = y z and the main sweep.",
    }
    for command, text in helps.items():
        _add_action_args(subparsers.add_parser(command, parents=[common], help=text), command)
    _add_selftest_args(subparsers.add_parser("selftest", parents=[common], help="Run every invariant check."))
    return parser


def _parameters(args: argparse.Namespace) -> Dict[str, Any]:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func" and v is not None}


def _execute(args: argparse.Namespace, command: str, handler: Callable[[argparse.Namespace], CommandOutput]) -> int:
    configure_logging(args.log_level)
    try:
        output = handler(args)
        outputs = {}
        if args.csv:
            if output.csv_rows is None:
                raise ConfigError(f"'{command}' has no sample rows for --csv")
            write_csv(output.csv_rows, args.csv)
            outputs["csv"] = args.csv
        if args.dot:
            if output.dot is None:
                raise ConfigError(f"'{command}' has no vertices for --dot")
            write_text(output.dot, args.dot)
            outputs["dot"] = args.dot
        if args.out:
            outputs["json"] = args.out
        config = output.config
        manifest = RunManifest(
            command=command,
            config_hash=config.config_hash() if config else None,
            seed=config.seed if config else None,
            parameters=_parameters(args),
            outputs=outputs,
        )
        record = ok_record(output.result, manifest)
        if output.exit_code:
            record["status"] = "FAIL"
        if output.table is not None:
            sys.stdout.write(output.table + "\n")
            if args.out:
                write_json(record, args.out)
        else:
            write_json(record, args.out)
        return output.exit_code
    except DomainError as e:
        logger.error("%s failed: %s", command, e)
        write_json(error_record(e.precondition, e.message))
        return 1
    except ConfigError as e:
        logger.error("%s: %s", command, e)
        write_json(error_record("config", str(e)))
        return 2


def _action_command(args: argparse.Namespace) -> int:
    action = resolve_action(args.command, args.action)
    return _execute(args, f"{args.command} {action}", ACTIONS[args.command][action])


def _selftest_command(args: argparse.Namespace) -> int:
    return _execute(args, "selftest", selftest)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    return int(args.func(args))


if __name__ == "__main__":
    raise SystemExit(main())
