"""Entry point for python -m gtl_cli."""

from gtl_cli.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
