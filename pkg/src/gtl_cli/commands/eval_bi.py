"""Eval-bi command implementation."""

from gtl_cli.cli import EXIT_OK, GtlHelpFormatter, add_common_output_options, add_formula_argument


def register_parser(subparsers):
    """Register the eval-bi command."""
    parser = subparsers.add_parser(
        "eval-bi",
        help="Evaluate a formula on a bi-relational model",
        description="Print the extension of a formula as (world, state) pairs.",
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "model",
        metavar="MODEL",
        help="Bi-relational model JSON file (kind 'bi')",
    )
    add_formula_argument(parser)
    add_common_output_options(parser)

    parser.set_defaults(func=run_eval_bi)


def run_eval_bi(args) -> int:
    """Run the eval-bi command."""
    from gtl_cli.core.formula import format_formula, parse
    from gtl_cli.core.semantics import eval_bi
    from gtl_cli.io.models import load_bi_model
    from gtl_cli.utils import emit

    m = load_bi_model(args.model)
    f = parse(args.formula)
    extension = sorted(eval_bi(m, f))
    everywhere = len(extension) == m.world_count * m.flow.state_count

    result = {
        "formula": format_formula(f),
        "extension": [list(p) for p in extension],
        "globally_true": everywhere,
    }
    text = "{" + ", ".join(f"({w}, {t})" for w, t in extension) + "}"
    emit("eval-bi", result, text, [f"globally true: {'yes' if everywhere else 'no'}"], args.json)
    return EXIT_OK
