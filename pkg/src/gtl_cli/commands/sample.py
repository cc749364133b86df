"""Sample command implementation."""

from gtl_cli.cli import (
    EXIT_NEGATIVE,
    EXIT_OK,
    GtlHelpFormatter,
    add_common_output_options,
    add_formula_argument,
)


def register_parser(subparsers):
    """Register the sample command."""
    parser = subparsers.add_parser(
        "sample",
        help="Search random real models for a counterexample",
        description=(
            "Evaluate a formula on random ultimately periodic real models with "
            "dyadic values. Exit 0 if it is 1 everywhere, 1 with a counterexample."
        ),
        formatter_class=GtlHelpFormatter,
    )

    add_formula_argument(parser)
    parser.add_argument(
        "--models",
        type=int,
        default=200,
        metavar="N",
        help="Number of models to try (default: 200)",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=None,
        metavar="S",
        help="Random seed for reproducibility",
    )
    parser.add_argument(
        "--max-states",
        type=int,
        default=4,
        metavar="K",
        help="Largest number of states (default: 4)",
    )
    parser.add_argument(
        "--denominator",
        type=int,
        default=8,
        metavar="D",
        help="Values are multiples of 1/D (default: 8)",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_sample)


def run_sample(args) -> int:
    """Run the sample command."""
    from gtl_cli.core.formula import format_formula, parse
    from gtl_cli.core.sampling import sample_check
    from gtl_cli.io.models import model_to_dict
    from gtl_cli.utils import emit

    f = parse(args.formula)
    found = sample_check(
        f,
        n=args.models,
        seed=args.seed,
        max_states=args.max_states,
        denominator=args.denominator,
        quiet=args.quiet or args.json,
    )

    if found is None:
        result = {"formula": format_formula(f), "models": args.models, "counterexample": None}
        emit("sample", result, f"NO COUNTEREXAMPLE ({args.models} models)", [], args.json)
        return EXIT_OK

    result = {
        "formula": format_formula(f),
        "models": args.models,
        "counterexample": {
            "model": model_to_dict(found.model),
            "state": found.state,
            "value": str(found.value),
        },
    }
    text = f"COUNTEREXAMPLE at state {found.state}: value {found.value}"
    emit("sample", result, text, [f"model: {model_to_dict(found.model)}"], args.json)
    return EXIT_NEGATIVE
