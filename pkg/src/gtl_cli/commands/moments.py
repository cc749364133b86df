"""Moments command implementation."""

from gtl_cli.cli import (
    EXIT_OK,
    GtlHelpFormatter,
    add_common_output_options,
    add_common_search_options,
    add_formula_argument,
)


def register_parser(subparsers):
    """Register the moments command."""
    parser = subparsers.add_parser(
        "moments",
        help="List the moments over a formula's closure",
        description="Enumerate every moment over the subformula closure, shortest first.",
        formatter_class=GtlHelpFormatter,
    )

    add_formula_argument(parser)
    parser.add_argument(
        "--count-only",
        action="store_true",
        help="Only print the number of moments",
    )
    parser.add_argument(
        "-o", "--output",
        metavar="FILE",
        default=None,
        help="Write the listing as a table (CSV, TSV or Parquet)",
    )
    add_common_search_options(parser, threads=False)
    add_common_output_options(parser)

    parser.set_defaults(func=run_moments)


def run_moments(args) -> int:
    """Run the moments command."""
    from gtl_cli.core.formula import closure, format_formula, parse
    from gtl_cli.core.moments import enumerate_moments
    from gtl_cli.io.tables import write_table
    from gtl_cli.utils import emit

    f = parse(args.formula)
    sigma = closure(f)
    moments = enumerate_moments(sigma, max_sigma=args.max_sigma, max_moments=args.max_moments)
    diagnostics = [f"closure: {len(sigma)} formulas"]

    if args.output:
        rows = [{"id": i, "length": len(m), "chain": str(m)} for i, m in enumerate(moments)]
        write_table(rows, args.output, columns=["id", "length", "chain"])
        diagnostics.append(f"{len(rows)} moments written to {args.output}")

    if args.count_only:
        emit("moments", {"formula": format_formula(f), "count": len(moments)}, str(len(moments)), [], args.json)
        return EXIT_OK

    result = {
        "formula": format_formula(f),
        "count": len(moments),
        "moments": [m.to_lists() for m in moments],
    }
    text = "\n".join(f"{i}: {m}" for i, m in enumerate(moments))
    emit("moments", result, text, diagnostics, args.json)
    return EXIT_OK
