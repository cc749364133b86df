"""Tabular export (CSV, TSV, Parquet) through pandas."""

from pathlib import Path
from typing import Any, Optional

import pandas as pd

from gtl_cli.io.formats import FileFormat, detect_table_format


def write_table(
    rows: list[dict[str, Any]],
    path: str | Path,
    columns: Optional[list[str]] = None,
) -> int:
    """
    Write rows to a table file, format chosen by extension.

    Args:
        rows: One dict per row
        path: Output file (.csv, .tsv or .parquet)
        columns: Column order (default: order of first appearance)

    Returns:
        Number of rows written
    """
    path = Path(path)
    file_format = detect_table_format(path)
    df = pd.DataFrame(rows, columns=columns)

    if file_format == FileFormat.PARQUET:
        import pyarrow as pa
        import pyarrow.parquet as pq

        pq.write_table(pa.Table.from_pandas(df, preserve_index=False), path)
    else:
        sep = "\t" if file_format == FileFormat.TSV else ","
        df.to_csv(path, sep=sep, index=False)
    return len(df)
