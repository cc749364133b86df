"""Output file formats, chosen by extension."""

from enum import Enum
from pathlib import Path


class FileFormat(Enum):
    JSON = "json"
    DOT = "dot"
    CSV = "csv"
    TSV = "tsv"
    PARQUET = "parquet"

    @property
    def is_table(self) -> bool:
        return self in (FileFormat.CSV, FileFormat.TSV, FileFormat.PARQUET)


SUFFIXES: dict[str, FileFormat] = {
    ".json": FileFormat.JSON,
    ".dot": FileFormat.DOT,
    ".gv": FileFormat.DOT,
    ".csv": FileFormat.CSV,
    ".tsv": FileFormat.TSV,
    ".parquet": FileFormat.PARQUET,
    ".pq": FileFormat.PARQUET,
}


def detect_format(path: str | Path) -> FileFormat:
    """
    Map a path's extension (case-insensitive) to a FileFormat.

    Raises:
        ValueError: If the extension is not one of SUFFIXES
    """
    suffix = Path(path).suffix.lower()
    try:
        return SUFFIXES[suffix]
    except KeyError:
        raise ValueError(
            f"Cannot detect format for '{path}' (known extensions: {', '.join(SUFFIXES)})"
        ) from None


def detect_table_format(path: str | Path) -> FileFormat:
    """Like :func:`detect_format`, but only CSV, TSV or Parquet."""
    file_format = detect_format(path)
    if not file_format.is_table:
        raise ValueError(f"'{path}' is not a table file (use .csv, .tsv or .parquet)")
    return file_format
