"""Bify command implementation."""

from gtl_cli.cli import EXIT_OK, GtlHelpFormatter, add_common_output_options, add_formula_argument


def register_parser(subparsers):
    """Register the bify command."""
    parser = subparsers.add_parser(
        "bify",
        help="Convert a real model into a bi-relational model",
        description=(
            "Build a bi-relational model with one world per threshold between the "
            "values of FORMULA's subformulas; p holds at (x, t) iff V(p, t) > x."
        ),
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "model",
        metavar="MODEL",
        help="Real model JSON file (kind 'real')",
    )
    add_formula_argument(parser)
    parser.add_argument(
        "-o", "--output",
        required=True,
        metavar="FILE",
        help="Bi-relational model JSON output file",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_bify)


def run_bify(args) -> int:
    """Run the bify command."""
    from gtl_cli.core.formula import closure, parse
    from gtl_cli.core.semantics import bify, bify_thresholds
    from gtl_cli.io.models import dump_model, load_real_model, model_to_dict
    from gtl_cli.utils import emit

    m = load_real_model(args.model)
    sigma = closure(parse(args.formula))
    bi = bify(m, sigma)
    dump_model(bi, args.output)

    thresholds = [str(x) for x in bify_thresholds(m, sigma)]
    text = f"Wrote bi-relational model with {bi.world_count} worlds to {args.output}"
    emit("bify", model_to_dict(bi), text, [f"thresholds: {', '.join(thresholds)}"], args.json)
    return EXIT_OK
