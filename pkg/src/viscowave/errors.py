"""Exception hierarchy shared by the library and the CLI."""


class ViscowaveError(Exception):
    """Base class for all errors raised by :mod:`viscowave`."""


class ConfigError(ViscowaveError, ValueError):
    """Invalid model parameters or model file."""


class NumericalError(ViscowaveError, ArithmeticError):
    """A numerical routine could not produce a trustworthy value."""


class NonDominantLeadingTerm(NumericalError):
    pass


class EvalAtZero(NumericalError, ZeroDivisionError):
    pass


class PoleAtNonpositiveInteger(NumericalError):
    pass


class GammaOverflow(NumericalError, OverflowError):
    pass


class SeriesNotConverged(NumericalError):
    pass


class NonPositiveTime(NumericalError, ValueError):
    pass


class NumericalBreakdown(NumericalError):
    pass


class EmptyPrincipalPart(NumericalError):
    pass


class UnsupportedFamily(ViscowaveError, NotImplementedError):
    pass


class UnsupportedInput(ViscowaveError, NotImplementedError):
    pass
