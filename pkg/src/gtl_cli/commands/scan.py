"""Scan command implementation."""

from gtl_cli.cli import (
    EXIT_NEGATIVE,
    EXIT_OK,
    GtlHelpFormatter,
    add_common_output_options,
    add_formula_argument,
)


def register_parser(subparsers):
    """Register the scan command."""
    parser = subparsers.add_parser(
        "scan",
        help="Check a formula on every small bi-relational model",
        description=(
            "Enumerate every bi-relational model up to the given size (all loopbacks, "
            "all downward-closed valuations) and report the first one the formula "
            "is not globally true on."
        ),
        formatter_class=GtlHelpFormatter,
    )

    add_formula_argument(parser)
    parser.add_argument(
        "--max-worlds",
        type=int,
        default=3,
        metavar="W",
        help="Largest number of worlds (default: 3)",
    )
    parser.add_argument(
        "--max-states",
        type=int,
        default=4,
        metavar="T",
        help="Largest number of states (default: 4)",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_scan)


def run_scan(args) -> int:
    """Run the scan command."""
    from gtl_cli.core.formula import format_formula, parse
    from gtl_cli.core.scan import scan_globally_true
    from gtl_cli.io.models import model_to_dict
    from gtl_cli.utils import emit

    f = parse(args.formula)
    outcome = scan_globally_true(f, max_worlds=args.max_worlds, max_states=args.max_states)

    counterexample = (
        model_to_dict(outcome.counterexample) if outcome.counterexample is not None else None
    )
    result = {
        "formula": format_formula(f),
        "checked": outcome.checked,
        "globally_true": outcome.globally_true,
        "counterexample": counterexample,
    }
    if outcome.globally_true:
        text = f"GLOBALLY TRUE on {outcome.checked} models"
        diagnostics = []
    else:
        text = f"NOT GLOBALLY TRUE (model {outcome.checked})"
        diagnostics = [f"model: {counterexample}"]
    emit("scan", result, text, diagnostics, args.json)
    return EXIT_OK if outcome.globally_true else EXIT_NEGATIVE
