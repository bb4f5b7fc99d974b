"""Exception hierarchy.

Errors split into two families so the command line can map them to distinct
exit codes: ``InputError`` (malformed or inconsistent user input, exit 2) and
``MathError`` (a well-posed request whose answer is a mathematical obstruction,
exit 1).
"""


class CharpError(Exception):
    pass


class InputError(CharpError, ValueError):
    pass


class MathError(CharpError, ArithmeticError):
    pass


class CompositeModulus(InputError):
    pass


class DuplicateName(InputError):
    pass


class RingMismatch(InputError):
    pass


class IncompleteAssignment(InputError):
    pass


class UnverifiedPrime(InputError):
    pass


class PrimeDoesNotContainIdeal(InputError):
    pass


class BadSize(InputError):
    pass


class BadHeight(InputError):
    pass


class ParseError(InputError):
    """Raised by the text parsers; carries a 1-based line/column span."""

    def __init__(self, message, text="", pos=0, end=None):
        self.text = text
        self.pos = pos
        self.end = pos + 1 if end is None else end
        self.line = text.count("\n", 0, pos) + 1
        self.column = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.column})")


class UnknownIdentifier(ParseError):
    def __init__(self, name, text="", pos=0):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", text, pos, pos + len(name))


class RankDeficient(MathError):
    pass


class UnitIdeal(MathError):
    pass


class OrderViolation(MathError):
    pass


class NoMinorsWarning(UserWarning):
    """The requested minor size exceeds the Jacobian; no minors were added."""
