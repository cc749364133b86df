"""Realify command implementation."""

from gtl_cli.cli import EXIT_OK, GtlHelpFormatter, add_common_output_options, add_formula_argument


def register_parser(subparsers):
    """Register the realify command."""
    parser = subparsers.add_parser(
        "realify",
        help="Convert a bi-relational model into a real model",
        description=(
            "Build a real-valued model whose values agree with the bi-relational "
            "model on every subformula of FORMULA."
        ),
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "model",
        metavar="MODEL",
        help="Bi-relational model JSON file (kind 'bi')",
    )
    add_formula_argument(parser)
    parser.add_argument(
        "-o", "--output",
        required=True,
        metavar="FILE",
        help="Real model JSON output file",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_realify)


def run_realify(args) -> int:
    """Run the realify command."""
    from gtl_cli.core.formula import closure, parse
    from gtl_cli.core.semantics import realify
    from gtl_cli.io.models import dump_model, load_bi_model, model_to_dict
    from gtl_cli.utils import emit

    m = load_bi_model(args.model)
    real = realify(m, closure(parse(args.formula)))
    dump_model(real, args.output)

    text = f"Wrote real model with {real.flow.state_count} states to {args.output}"
    emit("realify", model_to_dict(real), text, [], args.json)
    return EXIT_OK
