"""Exception hierarchy shared by every module of the package."""


class YDBrauerError(Exception):
    """Base class for all errors raised by ydbrauer."""


class DimensionError(YDBrauerError, ValueError):
    pass


class SingularError(YDBrauerError, ArithmeticError):
    pass


class ParentError(YDBrauerError, ValueError):
    """Objects built over different Hopf algebras were combined."""


class BadParameter(YDBrauerError, ValueError):
    pass


class AxiomError(YDBrauerError):
    """An input fails the axioms a construction presupposes."""


class InvolutionError(YDBrauerError):
    """(f, g) is not a pair in involution for the requested automorphism pair."""


class PairMismatch(YDBrauerError):
    """Category labels of two modules do not allow the requested tensor product."""


class ParseError(YDBrauerError):
    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class ValidationError(YDBrauerError):
    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
