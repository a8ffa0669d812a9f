"""Exception hierarchy shared by every module."""


class SigflowError(Exception):
    pass


class DivisionByZero(SigflowError, ZeroDivisionError):
    pass


class FieldMismatch(SigflowError, TypeError):
    pass


class DimensionMismatch(SigflowError, ValueError):
    pass


class SingularMatrix(SigflowError, ValueError):
    pass


class NotAMap(SigflowError, ValueError):
    pass


class UnknownGenerator(SigflowError, ValueError):
    pass


class DiagramSyntaxError(SigflowError, ValueError):
    """Parse failure; ``pos`` is the character offset in the source text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class ArityError(SigflowError, ValueError):
    pass


class NoMatch(SigflowError, ValueError):
    pass


class BadPath(SigflowError, ValueError):
    pass


class FieldModeMismatch(SigflowError, ValueError):
    pass


class HomViolation(SigflowError, ValueError):
    pass


class NotContFlow(SigflowError, ValueError):
    """Raised when an extracted relation is not a linear map.

    ``which`` is one of "A", "B", "C", "D" and ``reason`` is "not total"
    or "not functional".
    """

    def __init__(self, which: str, reason: str):
        super().__init__(f"{which}(f) {reason}")
        self.which = which
        self.reason = reason
