"""Main CLI entry point for gtl."""

import argparse
import re
import sys
from difflib import get_close_matches
from typing import NoReturn, Optional

from rich_argparse import RichHelpFormatter

from gtl_cli import __version__

# Exit codes
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


class SuggestingArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that proposes the closest command name on typos."""

    def _command_names(self) -> list[str]:
        for action in self._actions:
            if isinstance(action, argparse._SubParsersAction):
                return list(action.choices)
        return []

    def error(self, message: str) -> NoReturn:
        bad = re.search(r"invalid choice: '([^']+)'", message)
        if bad:
            close = get_close_matches(bad.group(1), self._command_names(), n=1, cutoff=0.5)
            if close:
                message = f"unknown command '{bad.group(1)}'. Did you mean '{close[0]}'?"
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


class GtlHelpFormatter(RichHelpFormatter):
    """Custom formatter with adjusted styles."""

    styles = {
        **RichHelpFormatter.styles,
        "argparse.args": "cyan",
        "argparse.groups": "bold yellow",
        "argparse.metavar": "green",
        "argparse.prog": "bold magenta",
    }


def add_formula_argument(parser: argparse.ArgumentParser):
    parser.add_argument(
        "formula",
        metavar="FORMULA",
        help="Formula, e.g. \"F (p -> X p)\" (operators: & | -> <- ~ X F G, bot, top)",
    )


def add_common_output_options(parser: argparse.ArgumentParser):
    """Add common output and logging options to a parser."""
    parser.add_argument(
        "--json",
        action="store_true",
        help="Print a JSON envelope {command, result, diagnostics}",
    )
    parser.add_argument(
        "-q", "--quiet",
        action="store_true",
        help="Suppress progress output",
    )
    parser.add_argument(
        "--no-warnings",
        action="store_true",
        help="Suppress warnings",
    )
    parser.add_argument(
        "--log-level",
        choices=["debug", "info", "warning", "error", "critical"],
        default=None,
        metavar="LEVEL",
        help="Engine log level (default: warning)",
    )


def add_common_search_options(parser: argparse.ArgumentParser, threads: bool = True):
    """Add decision procedure limits to a parser."""
    parser.add_argument(
        "--max-sigma",
        type=int,
        default=12,
        metavar="N",
        help="Largest subformula closure to accept (default: 12)",
    )
    parser.add_argument(
        "--max-moments",
        type=int,
        default=250_000,
        metavar="N",
        help="Largest number of moments to enumerate (default: 250000)",
    )
    if threads:
        parser.add_argument(
            "-n", "--threads",
            type=int,
            default=1,
            metavar="N",
            help="Worker processes for the loop search (-1 for all, default: 1)",
        )


def config_from_args(args):
    """Build a DecisionConfig from the common search options."""
    from gtl_cli.core.decision import DecisionConfig

    return DecisionConfig(
        max_sigma=args.max_sigma,
        max_moments=args.max_moments,
        n_workers=getattr(args, "threads", 1),
        quiet=args.quiet or args.json,
    )


def create_parser() -> SuggestingArgumentParser:
    """Create the main argument parser."""
    parser = SuggestingArgumentParser(
        prog="gtl",
        description="Decision procedure and model tools for Goedel temporal logic.",
        epilog=(
            "Use 'gtl <command> --help' for command-specific help. "
            "Exit codes: 0 valid/verified/success, 1 falsifiable/failed, 2 usage or input error."
        ),
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "-V", "--version",
        action="version",
        version=f"gtl {__version__}",
    )

    subparsers = parser.add_subparsers(
        title="Commands",
        dest="command",
        metavar="<command>",
    )

    _register_commands(subparsers)

    return parser


def _register_commands(subparsers):
    """Register all command subparsers (alphabetical order)."""
    from gtl_cli.commands import (
        bify,
        check,
        eval_bi,
        eval_real,
        moments,
        quotient,
        realify,
        sample,
        scan,
        translate,
        unwind,
        verify_witness,
    )

    bify.register_parser(subparsers)
    check.register_parser(subparsers)
    eval_bi.register_parser(subparsers)
    eval_real.register_parser(subparsers)
    moments.register_parser(subparsers)
    quotient.register_parser(subparsers)
    realify.register_parser(subparsers)
    sample.register_parser(subparsers)
    scan.register_parser(subparsers)
    translate.register_parser(subparsers)
    unwind.register_parser(subparsers)
    verify_witness.register_parser(subparsers)


def main(args: Optional[list[str]] = None) -> int:
    """Parse ``args``, run the command and return its exit code."""
    parser = create_parser()
    parsed_args = parser.parse_args(args)

    if parsed_args.command is None:
        parser.print_help()
        return EXIT_ERROR

    from gtl_cli.utils import configure_all_warnings, enable_app_warnings, get_logger, set_log_level

    logger = get_logger()
    if getattr(parsed_args, "no_warnings", False):
        configure_all_warnings(suppress=True)
    else:
        enable_app_warnings()
        set_log_level(getattr(parsed_args, "log_level", None) or "warning")

    try:
        return parsed_args.func(parsed_args)
    except KeyboardInterrupt:
        sys.stderr.write("\nInterrupted.\n")
        return 130
    except BrokenPipeError:
        # stdout closed by the reader, e.g. `gtl moments ... | head`
        return EXIT_OK
    except (ValueError, OSError) as e:
        # GTLError and json.JSONDecodeError are ValueErrors
        sys.stderr.write(f"Error: {e}\n")
        return EXIT_ERROR
    except Exception as e:
        logger.debug("unhandled error in '%s'", parsed_args.command, exc_info=True)
        sys.stderr.write(f"Error: {type(e).__name__}: {e}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
