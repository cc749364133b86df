"""Exception types raised by the gtl engines.

All of them derive from ValueError so callers that only care about
"bad input" can keep catching that.
"""


class GTLError(ValueError):
    """Base class for every gtl error."""


class FormulaSyntaxError(GTLError):
    """Raised when formula text does not follow the grammar."""

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


class ModelError(GTLError):
    """Raised for malformed real or bi-relational models."""


class UnknownVariableError(ModelError):
    """Raised when a formula mentions a variable the model does not define."""

    def __init__(self, names: list[str]):
        self.names = sorted(names)
        super().__init__(f"Unknown variable(s): {', '.join(self.names)}")


class ClosureLimitError(GTLError):
    """Raised when a subformula closure exceeds the configured size."""

    def __init__(self, size: int, limit: int):
        self.size = size
        self.limit = limit
        super().__init__(
            f"Closure has {size} formulas, limit is {limit} (raise it with --max-sigma)"
        )


class MomentLimitError(GTLError):
    """Raised when moment enumeration exceeds the configured count."""

    def __init__(self, limit: int):
        self.limit = limit
        super().__init__(f"More than {limit} moments (raise it with --max-moments)")


class RelationShapeError(GTLError):
    """Raised when a relation does not fit the chains it is checked against."""


class PreconditionError(GTLError):
    """Raised when an operation is called on input it does not accept."""


class InvalidWitnessError(PreconditionError):
    """Raised when a falsifiability witness fails verification."""


class CertificateFormatError(GTLError):
    """Raised when a witness, quasimodel or grid file cannot be decoded."""
