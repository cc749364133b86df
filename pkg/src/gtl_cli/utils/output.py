"""Command output: plain text or the ``--json`` envelope."""

import json
from typing import Any, Optional


def envelope(command: str, result: Any, diagnostics: Optional[list[str]] = None) -> dict[str, Any]:
    return {"command": command, "result": result, "diagnostics": list(diagnostics or [])}


def emit(
    command: str,
    result: Any,
    text: str,
    diagnostics: Optional[list[str]] = None,
    as_json: bool = False,
) -> None:
    """
    Print a command result.

    Args:
        command: Subcommand name
        result: JSON-serializable result
        text: Human-readable rendering of ``result``
        diagnostics: Extra lines (statistics, failure details)
        as_json: Print the JSON envelope instead of text
    """
    if as_json:
        print(json.dumps(envelope(command, result, diagnostics), indent=2))
        return
    print(text)
    for line in diagnostics or []:
        print(f"  {line}")
