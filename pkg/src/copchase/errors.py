"""Exception types shared across the package."""


class CopChaseError(Exception):
    """Base class for all copchase errors."""


class ValidationError(CopChaseError):
    """Invalid instance data: bad edges, probabilities, strategies, ids."""


class ParseError(ValidationError):
    """Malformed instance document. Carries a line number when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            message = f"{where}: {message}"
        super().__init__(message)


class EnumerationCapError(CopChaseError):
    """Strategy space too large for brute-force enumeration."""

    def __init__(self, product, cap):
        self.product = product
        self.cap = cap
        super().__init__(
            f"strategy space has {product} strategies, exceeding the enumeration cap {cap}"
        )


class SimulationUnsupportedError(CopChaseError):
    """Gamble cannot be sampled (probabilities do not sum to 1)."""


class InternalInvariantError(CopChaseError):
    """A solver postcondition failed; indicates a bug, not bad input."""
