"""Exception types raised across the package."""


class QPCCError(ValueError):
    """Base class for all package errors."""


class NotHermitian(QPCCError):
    pass


class NotUnitary(QPCCError):
    pass


class NotPhysical(QPCCError):
    """Matrix fails trace or positivity checks for a density operator."""


class DimensionMismatch(QPCCError):
    pass


class OutOfRange(QPCCError):
    pass


class NotAProbabilityTable(QPCCError):
    pass


class NotTwoQubit(QPCCError):
    pass


class NotStandardForm(QPCCError):
    pass


class NotClassicalForm(QPCCError):
    pass


class SingularMarginal(QPCCError):
    pass


class UndefinedPCC(QPCCError):
    """A variance vanished, so the correlation coefficient is 0/0."""


class NumericalInstability(QPCCError):
    pass


class NonConvergence(QPCCError):
    pass
