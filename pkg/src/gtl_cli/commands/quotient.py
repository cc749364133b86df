"""Quotient command implementation."""

from gtl_cli.cli import (
    EXIT_NEGATIVE,
    EXIT_OK,
    GtlHelpFormatter,
    add_common_output_options,
    add_formula_argument,
)


def register_parser(subparsers):
    """Register the quotient command."""
    parser = subparsers.add_parser(
        "quotient",
        help="Quotient a bi-relational model into a quasimodel",
        description=(
            "Build the finite quasimodel of a bi-relational model over the closure "
            "of a formula, validate it and write it as JSON."
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
        help="Quasimodel JSON output file",
    )
    parser.add_argument(
        "--dot",
        metavar="FILE",
        default=None,
        help="Also write the quasimodel as DOT",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_quotient)


def run_quotient(args) -> int:
    """Run the quotient command."""
    from gtl_cli.core.formula import closure, parse
    from gtl_cli.core.quasimodel import quotient, size_bound, validate_quasimodel
    from gtl_cli.io.certificates import quasimodel_to_dict, write_dot, write_json
    from gtl_cli.io.models import load_bi_model
    from gtl_cli.utils import emit, warn

    m = load_bi_model(args.model)
    f = parse(args.formula)
    sigma = closure(f)
    q = quotient(m, sigma)
    report = validate_quasimodel(q)

    write_json(quasimodel_to_dict(q), args.output)
    if args.dot:
        write_dot(q, args.dot)

    bound = size_bound(sigma)
    diagnostics = [
        f"worlds: {len(q.worlds)} (bound {bound})",
        f"height: {q.height} (bound {len(sigma) + 1})",
        f"falsifies formula: {'yes' if q.falsifies(f) else 'no'}",
    ]
    diagnostics += report.problems
    if not report.ok:
        warn(f"quotient fails {', '.join(report.failures())}")

    result = {
        "worlds": len(q.worlds),
        "height": q.height,
        "valid": report.ok,
        "failures": report.failures(),
        "falsifies": q.falsifies(f),
        "output": args.output,
    }
    text = f"Wrote quasimodel with {len(q.worlds)} worlds to {args.output}"
    emit("quotient", result, text, diagnostics, args.json)
    return EXIT_OK if report.ok else EXIT_NEGATIVE
