"""Exception types raised across the package."""


class CyclicMDSError(ValueError):
    """Base class for every error raised by this package."""


# -- field arithmetic -------------------------------------------------------

class DegreeMismatch(CyclicMDSError):
    pass


class Reducible(CyclicMDSError):
    def __init__(self, modulus, factor):
        self.modulus = modulus
        self.factor = factor
        super().__init__(f"modulus {modulus:#x} is reducible: divisible by {factor:#x}")


class FieldMismatch(CyclicMDSError):
    pass


class ZeroInverse(CyclicMDSError, ZeroDivisionError):
    pass


class ElementSyntaxError(CyclicMDSError):
    pass


class ExponentOutOfRange(ElementSyntaxError):
    pass


class DuplicateTerm(ElementSyntaxError):
    pass


# -- matrices and permutations ----------------------------------------------

class ShapeMismatch(CyclicMDSError):
    pass


class Singular(CyclicMDSError):
    pass


class BadIndexSet(CyclicMDSError):
    pass


class CycleSyntaxError(CyclicMDSError):
    pass


class NotAFullCycle(CyclicMDSError):
    pass


class NotCoprime(CyclicMDSError):
    pass


# -- checkers and campaigns -------------------------------------------------

class BadInput(CyclicMDSError):
    pass


class BadOrder(CyclicMDSError):
    pass


class BudgetExceeded(CyclicMDSError):
    pass


class NotOrthogonal(CyclicMDSError):
    pass


class CeilingExceeded(CyclicMDSError):
    def __init__(self, candidates, ceiling):
        self.candidates = candidates
        self.ceiling = ceiling
        super().__init__(f"{candidates} candidate rows exceed the exhaustive ceiling of {ceiling}")


class BadSpec(CyclicMDSError):
    pass
