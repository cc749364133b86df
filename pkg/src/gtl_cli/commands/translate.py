"""Translate command implementation."""

from gtl_cli.cli import EXIT_OK, GtlHelpFormatter, add_common_output_options, add_formula_argument


def register_parser(subparsers):
    """Register the translate command."""
    parser = subparsers.add_parser(
        "translate",
        help="Negative translation of a classical LTL formula",
        description=(
            "Replace every variable p by ~~p. A formula is LTL-valid iff its "
            "translation is valid here."
        ),
        formatter_class=GtlHelpFormatter,
    )

    add_formula_argument(parser)
    add_common_output_options(parser)

    parser.set_defaults(func=run_translate)


def run_translate(args) -> int:
    """Run the translate command."""
    from gtl_cli.core.formula import format_formula, parse
    from gtl_cli.core.ltl import translate
    from gtl_cli.utils import emit

    f = parse(args.formula)
    translated = format_formula(translate(f))
    emit("translate", {"formula": format_formula(f), "translation": translated}, translated, [], args.json)
    return EXIT_OK
