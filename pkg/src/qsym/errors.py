"""Exception hierarchy shared by all qsym modules."""


class QsymError(Exception):
    """Base class for library errors."""


class ValidationError(QsymError, ValueError):
    """Bad user input: sizes, parameters, malformed expressions."""


class UnimplementedCase(QsymError, NotImplementedError):
    """A declared non-goal (e.g. the type-A spherical cases)."""


class ScalarDivisionByZero(QsymError, ZeroDivisionError):
    pass


class VariableMismatch(QsymError, ValueError):
    pass


class NotSummable(QsymError, ValueError):
    """A product or reciprocal that does not converge q-adically."""


class NonTelescoping(QsymError, ValueError):
    pass


class BoundExceeded(QsymError, ValueError):
    pass


class NonInvariantInput(QsymError, ValueError):
    pass


class NonCancellation(QsymError, ArithmeticError):
    """An exact division left a remainder where none was expected."""


class TriangularityViolation(QsymError, ArithmeticError):
    pass


class EigenvalueCollision(QsymError, ArithmeticError):
    def __init__(self, mu, nu, value):
        super().__init__(f"eigenvalue of {nu} coincides with that of {mu}: {value}")
        self.mu = mu
        self.nu = nu
        self.value = value


class LatticeError(QsymError, ValueError):
    """Weight outside the image lattice of a variable map."""


class SingularMatrix(QsymError, ArithmeticError):
    pass
