"""Exception hierarchy shared by every module of the package."""


class HilbertSystoleError(Exception):
    """Base class for all errors raised by this package."""


class FieldError(HilbertSystoleError, ValueError):
    pass


class NotMonic(FieldError):
    pass


class NotSquarefree(FieldError):
    pass


class NotTotallyReal(FieldError):
    pass


class Reducible(FieldError):
    pass


class FieldMismatch(HilbertSystoleError, ValueError):
    pass


class ZeroElement(HilbertSystoleError, ValueError):
    pass


class NotPrime(HilbertSystoleError, ValueError):
    pass


class NormTooLargeToFactor(HilbertSystoleError, ValueError):
    pass


class NotInGamma(HilbertSystoleError, ValueError):
    pass


class ZeroY0(HilbertSystoleError, ValueError):
    pass


class NotSL2(HilbertSystoleError, ValueError):
    """Raised when a matrix with determinant other than 1 is constructed."""


class CapExceeded(HilbertSystoleError, RuntimeError):
    pass


class NotHyperbolic(HilbertSystoleError, ValueError):
    pass


class NotTotallyHyperbolic(HilbertSystoleError, ValueError):
    def __init__(self, indices, message=None):
        self.indices = tuple(indices)
        if message is None:
            message = "factors at indices %s are not hyperbolic" % (list(self.indices),)
        super().__init__(message)


class DegenerateMatrix(HilbertSystoleError, ValueError):
    pass


class NormTooSmall(HilbertSystoleError, ValueError):
    pass


class BudgetExceeded(HilbertSystoleError, RuntimeError):
    """The shortest-geodesic search ran past its candidate budget.

    ``partial`` holds the best result found before the budget ran out
    (marked non-exhaustive).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class DescriptorError(HilbertSystoleError, ValueError):
    """Malformed field or ideal descriptor."""
