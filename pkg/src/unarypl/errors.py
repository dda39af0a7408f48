"""Exception hierarchy shared by every module."""


class UnaryPLError(Exception):
    """Base class for all errors raised by :mod:`unarypl`."""


class GrammarSyntaxError(UnaryPLError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WitnessSyntaxError(GrammarSyntaxError):
    pass


class EmptyLanguage(UnaryPLError):
    """The start symbol derives no word at all."""


class NotInLanguage(UnaryPLError, ValueError):
    def __init__(self, length):
        self.length = length
        super().__init__(f"a^{length} is not in the language")


class BelowConstant(UnaryPLError, ValueError):
    def __init__(self, length, b):
        self.length = length
        self.b = b
        super().__init__(f"length {length} is below the pumping constant {b}")


class WitnessViolation(UnaryPLError):
    """A decomposition function returned a pair outside its contract."""


class FrameAssertionError(UnaryPLError, AssertionError):
    """A loop invariant of the tuple generation loop did not hold."""


class DimensionMismatch(UnaryPLError, ValueError):
    pass
