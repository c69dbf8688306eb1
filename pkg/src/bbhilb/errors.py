"""Exception types raised across the package."""


class BBHilbError(Exception):
    """Base class for all package errors."""


class MixedRings(BBHilbError):
    pass


class DivisionByNonUnit(BBHilbError):
    pass


class DimensionMismatch(BBHilbError):
    pass


class NotDownwardClosed(BBHilbError):
    def __init__(self, element, missing):
        self.element = tuple(element)
        self.missing = tuple(missing)
        super().__init__(f"{self.element} is present but {self.missing} is missing")


class UndeterminedPolarity(BBHilbError):
    pass


class ZeroPolynomial(BBHilbError):
    pass


class NotZeroDimensional(BBHilbError):
    pass


class NotBounded(BBHilbError):
    def __init__(self, variable, min_poly):
        self.variable = variable
        self.min_poly = min_poly
        super().__init__(
            f"x{variable + 1} is negative but its minimal polynomial {min_poly} "
            "is not a pure power"
        )


class InternalBoxOverflow(BBHilbError):
    pass


class IterationLimit(BBHilbError):
    pass


class BoundNotVerified(BBHilbError):
    pass


class LengthMismatch(BBHilbError):
    pass


class ParseError(BBHilbError):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}, column {column}: " if column is not None else f"line {line}: "
        super().__init__(where + message)


class InvariantViolation(BBHilbError):
    """A checked theorem or cross-validation failed; always a defect."""
