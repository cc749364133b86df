"""Verify-witness command implementation."""

from gtl_cli.cli import EXIT_NEGATIVE, EXIT_OK, GtlHelpFormatter, add_common_output_options


def register_parser(subparsers):
    """Register the verify-witness command."""
    parser = subparsers.add_parser(
        "verify-witness",
        help="Check a falsifiability witness",
        description=(
            "Independently check a witness written by 'gtl check --emit-witness'. "
            "Prints VERIFIED (exit 0) or FAILED with the first failing condition (exit 1)."
        ),
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "witness",
        metavar="FILE",
        help="Witness JSON file",
    )
    parser.add_argument(
        "--formula",
        required=True,
        metavar="FORMULA",
        help="Formula the witness should falsify",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_verify_witness)


def run_verify_witness(args) -> int:
    """Run the verify-witness command."""
    from gtl_cli.core.decision import verify_witness
    from gtl_cli.core.formula import parse
    from gtl_cli.io.certificates import load_witness
    from gtl_cli.utils import emit

    f = parse(args.formula)
    report = verify_witness(f, load_witness(args.witness, f))

    text = "VERIFIED" if report.ok else f"FAILED (condition {report.condition})"
    result = {"verified": report.ok, "condition": report.condition}
    emit("verify-witness", result, text, report.diagnostics, args.json)
    return EXIT_OK if report.ok else EXIT_NEGATIVE
