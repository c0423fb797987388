class LtlsmcError(Exception):
    """Base class for every error raised by this package."""


class ParseError(LtlsmcError):
    """Malformed property or program expression text."""

    def __init__(self, message: str, line: int, column: int, token: str | None = None):
        self.message = message
        self.line = line
        self.column = column
        self.token = token
        where = f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")


class UnsupportedClassError(LtlsmcError):
    """The property's temporal class cannot be monitored (only TL_G and TL_F can)."""


class BasisError(LtlsmcError):
    """A formula uses an operator outside the monitoring basis."""
