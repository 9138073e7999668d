"""Exception hierarchy. Every domain failure derives from ThinsetError."""


class ThinsetError(Exception):
    pass


class ParseError(ThinsetError):
    def __init__(self, message, pos, expected=()):
        self.pos = pos
        self.expected = tuple(expected)
        detail = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {pos}{detail}")


class UnknownNameError(ThinsetError):
    pass


class ParameterError(ThinsetError, ValueError):
    pass


class EnumerationError(ThinsetError):
    """An enumerator or block family broke its monotonicity contract."""


class CertificateError(ThinsetError):
    """A declared certificate disagrees with materialized data, or with itself."""


class HorizonError(ThinsetError):
    pass


class HierarchyError(ThinsetError):
    """Verdicts violate a proven inclusion between classes (internal bug)."""
