"""Exception types shared across the library."""


class RelcatError(Exception):
    """Base class for all library errors."""


class NotPrime(RelcatError):
    pass


class DegreeOutOfRange(RelcatError):
    pass


class DivisionByZero(RelcatError):
    pass


class ShapeMismatch(RelcatError):
    pass


class Singular(RelcatError):
    pass


class TooLarge(RelcatError):
    """A feasibility guard was exceeded (desk-scale enumeration bound)."""


class ArityMismatch(RelcatError):
    pass


class FieldMismatch(RelcatError):
    pass


class NotRelInfty(RelcatError):
    pass


class UnknownGenerator(RelcatError):
    pass


class InvalidPermutation(RelcatError):
    pass


class MissingUnit(RelcatError):
    """A unit-dependent map was requested from a structure without one."""


class RequiresEvaluation(RelcatError):
    """A symbolic coefficient reached a context that needs a numeric value."""


class ParseError(RelcatError):
    """Syntax error in a morphism expression; carries the source position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class ScalarParseError(RelcatError):
    pass
