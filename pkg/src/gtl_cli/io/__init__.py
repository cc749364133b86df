"""I/O handling: model files, certificates, tables."""

from gtl_cli.io.formats import FileFormat, detect_format
from gtl_cli.io.models import dump_model, load_model
from gtl_cli.io.tables import write_table

__all__ = ["FileFormat", "detect_format", "dump_model", "load_model", "write_table"]
