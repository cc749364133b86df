"""Eval-real command implementation."""

from gtl_cli.cli import EXIT_OK, GtlHelpFormatter, add_common_output_options, add_formula_argument


def register_parser(subparsers):
    """Register the eval-real command."""
    parser = subparsers.add_parser(
        "eval-real",
        help="Evaluate a formula on a real-valued model",
        description="Evaluate a formula on a real-valued model with exact rationals.",
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "model",
        metavar="MODEL",
        help="Real model JSON file (kind 'real')",
    )
    add_formula_argument(parser)
    parser.add_argument(
        "--at",
        type=int,
        default=None,
        metavar="T",
        help="Only evaluate at state T (default: every state)",
    )
    parser.add_argument(
        "--table",
        metavar="FILE",
        default=None,
        help="Write every subformula's value at every state (CSV, TSV or Parquet)",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_eval_real)


def run_eval_real(args) -> int:
    """Run the eval-real command."""
    from gtl_cli.core.formula import closure, format_formula, parse
    from gtl_cli.core.semantics import eval_real, real_table
    from gtl_cli.io.models import load_real_model
    from gtl_cli.io.tables import write_table
    from gtl_cli.utils import emit

    m = load_real_model(args.model)
    f = parse(args.formula)
    diagnostics: list[str] = []

    if args.table:
        sigma = closure(f)
        table = real_table(m, sigma)
        columns = ["state"] + [format_formula(g) for g in sigma]
        rows = [
            {"state": t, **{format_formula(g): str(table[g][t]) for g in sigma}}
            for t in m.flow.states
        ]
        write_table(rows, args.table, columns=columns)
        diagnostics.append(f"{len(rows)} rows written to {args.table}")

    if args.at is not None:
        value = eval_real(m, f, args.at)
        result = {"formula": format_formula(f), "state": args.at, "value": str(value)}
        emit("eval-real", result, str(value), diagnostics, args.json)
        return EXIT_OK

    values = real_table(m, closure(f))[f]
    result = {
        "formula": format_formula(f),
        "values": [str(v) for v in values],
        "globally_true": all(v == 1 for v in values),
    }
    text = "\n".join(f"t={t}: {v}" for t, v in enumerate(values))
    emit("eval-real", result, text, diagnostics, args.json)
    return EXIT_OK
