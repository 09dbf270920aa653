"""Exception types shared across the toolkit."""


class CospreadError(ValueError):
    """Base class for all toolkit errors."""


class ParseError(CospreadError):
    """Malformed input file; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(CospreadError):
    """Inconsistent or out-of-range configuration values."""


class DomainError(CospreadError):
    """Operation called outside its mathematical domain."""
