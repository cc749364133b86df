"""Unwind command implementation."""

from gtl_cli.cli import EXIT_NEGATIVE, EXIT_OK, GtlHelpFormatter, add_common_output_options


def register_parser(subparsers):
    """Register the unwind command."""
    parser = subparsers.add_parser(
        "unwind",
        help="Unwind a quasimodel into a finite grid of paths",
        description=(
            "Process BUDGET defects first-in-first-out, starting from the single "
            "path (START), and write the grid, remaining queue and log as JSON."
        ),
        formatter_class=GtlHelpFormatter,
    )

    parser.add_argument(
        "quasimodel",
        metavar="QUASI",
        help="Quasimodel JSON file (as written by 'gtl quotient')",
    )
    parser.add_argument(
        "--start",
        type=int,
        required=True,
        metavar="ID",
        help="World id of the initial path",
    )
    parser.add_argument(
        "--budget",
        type=int,
        required=True,
        metavar="N",
        help="Number of defects to process",
    )
    parser.add_argument(
        "-o", "--output",
        required=True,
        metavar="FILE",
        help="Grid JSON output file",
    )
    add_common_output_options(parser)

    parser.set_defaults(func=run_unwind)


def run_unwind(args) -> int:
    """Run the unwind command."""
    from gtl_cli.core.unwind import grid_problems, unwind_bounded
    from gtl_cli.io.certificates import grid_to_dict, load_quasimodel, write_json
    from gtl_cli.utils import emit

    q = load_quasimodel(args.quasimodel)
    grid = unwind_bounded(q, args.start, args.budget)
    write_json(grid_to_dict(grid), args.output)

    problems = grid_problems(grid)
    result = {
        "paths": len(grid.order),
        "length": grid.length,
        "processed": len(grid.processed),
        "queued": len(grid.queue),
        "output": args.output,
    }
    text = (
        f"Wrote {len(grid.order)} paths of length {grid.length} to {args.output} "
        f"({len(grid.queue)} defects queued)"
    )
    diagnostics = list(problems)
    if grid.queue:
        diagnostics.append(f"next defect: {grid.queue[0].describe(grid)}")
    emit("unwind", result, text, diagnostics, args.json)
    return EXIT_OK if not problems else EXIT_NEGATIVE
