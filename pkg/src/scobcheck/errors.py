"""Exception types shared across the package."""


class UnknownGenerator(ValueError):
    """A word mentions a generator outside the alphabet it is used with."""


class MissingImage(KeyError):
    """A substitution or homomorphism has no image for some generator."""


class IncompleteTable(ValueError):
    pass


class NotAnAutomorphism(ValueError):
    pass


class MalformedDiagram(ValueError):
    pass


class MissingFraming(ValueError):
    pass


class InvalidParameter(ValueError):
    pass


class NotSquare(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class PresentationSyntaxError(SyntaxError):
    """Parse failure carrying a 1-based line and column."""

    def __init__(self, message, text, pos):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.lineno = line
        self.offset = col
        self.text = text

    def __str__(self) -> str:
        return self.msg


class AutomorphismUnverified(UserWarning):
    """Emitted when a monodromy could not be certified as an automorphism."""
