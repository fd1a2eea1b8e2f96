"""Exception hierarchy shared by all modules."""


class CapitulationError(Exception):
    """Base class for every error raised by this package."""


class NoRoot(CapitulationError, ValueError):
    pass


class NoRepresentation(CapitulationError, ValueError):
    pass


class InvalidDiscriminant(CapitulationError, ValueError):
    pass


class MismatchedDiscriminant(CapitulationError, ValueError):
    pass


class NotSquarefree(CapitulationError, ValueError):
    pass


class DivisibleByPi(CapitulationError, ValueError):
    pass


class BadFactorization(CapitulationError, ValueError):
    pass


class ZeroInput(CapitulationError, ValueError):
    pass


class InconsistentSymbols(CapitulationError, AssertionError):
    """Raised when a symbol table contradicts the values it was derived from."""


class MixedPresentations(CapitulationError, ValueError):
    pass


class NotNormal(CapitulationError, ValueError):
    pass


class BadTag(CapitulationError, KeyError):
    pass


class NotMetacyclic(CapitulationError, ValueError):
    pass


class AbelianGroup(CapitulationError, ValueError):
    pass


class TooLarge(CapitulationError, ValueError):
    pass


class PrecisionExhausted(CapitulationError, ArithmeticError):
    pass


class HypothesisNotMet(CapitulationError, ValueError):
    pass


class UsageError(CapitulationError, ValueError):
    pass
