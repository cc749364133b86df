"""Check command implementation."""

from gtl_cli.cli import (
    EXIT_NEGATIVE,
    EXIT_OK,
    GtlHelpFormatter,
    add_common_output_options,
    add_common_search_options,
    add_formula_argument,
    config_from_args,
)


def register_parser(subparsers):
    """Register the check command."""
    parser = subparsers.add_parser(
        "check",
        help="Decide validity of a formula",
        description=(
            "Decide whether a formula is valid. Prints VALID (exit 0) or "
            "FALSIFIABLE (exit 1) with an optional checkable witness."
        ),
        formatter_class=GtlHelpFormatter,
    )

    add_formula_argument(parser)
    parser.add_argument(
        "--emit-witness",
        metavar="FILE",
        default=None,
        help="Write the falsifiability witness as JSON",
    )
    parser.add_argument(
        "--dot",
        metavar="FILE",
        default=None,
        help="Write the quasimodel unfolded from the witness as DOT",
    )
    parser.add_argument(
        "--satisfiable",
        action="store_true",
        help="Decide satisfiability instead: SATISFIABLE (exit 0) or UNSATISFIABLE (exit 1)",
    )
    add_common_search_options(parser)
    add_common_output_options(parser)

    parser.set_defaults(func=run_check)


def run_check(args) -> int:
    """Run the check command."""
    from gtl_cli.core.decision import decide, decide_satisfiable, witness_to_quasimodel
    from gtl_cli.core.formula import format_formula, parse
    from gtl_cli.io.certificates import witness_to_dict, write_dot, write_json
    from gtl_cli.utils import emit, warn

    f = parse(args.formula)
    config = config_from_args(args)

    if args.satisfiable:
        sat = decide_satisfiable(f, config)
        decision = sat.decision
        verdict = "SATISFIABLE" if sat.satisfiable else "UNSATISFIABLE"
        positive = sat.satisfiable
    else:
        decision = decide(f, config)
        verdict = decision.status.name
        positive = decision.valid

    witness = decision.witness
    diagnostics = [f"{key}: {value}" for key, value in decision.stats.as_dict().items()]
    if witness is not None:
        diagnostics.append(f"witness: prefix {witness.pivot}, loop {witness.loop_length}")
        for j, moment in enumerate(witness.moments):
            marker = " (pivot)" if j == witness.pivot else ""
            diagnostics.append(f"moment {j}{marker}: {moment}")
        if args.emit_witness:
            write_json(witness_to_dict(witness), args.emit_witness)
            diagnostics.append(f"witness written to {args.emit_witness}")
        if args.dot:
            write_dot(witness_to_quasimodel(witness), args.dot)
            diagnostics.append(f"quasimodel written to {args.dot}")
    elif args.emit_witness or args.dot:
        warn("no witness exists for this verdict; nothing written")

    result = {
        "formula": format_formula(f),
        "verdict": verdict.lower(),
        "witness": witness_to_dict(witness) if witness is not None else None,
    }
    emit("check", result, verdict, diagnostics, args.json)
    return EXIT_OK if positive else EXIT_NEGATIVE
