"""gtl-cli: decision procedure and model tools for Goedel temporal logic."""

__version__ = "0.1.0"
