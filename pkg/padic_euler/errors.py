class PAdicError(Exception):
    message: str

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)

    def __str__(self):
        return self.message


class InvalidPrime(ValueError, PAdicError):
    def __init__(self, p: int):
        self.prime = p
        PAdicError.__init__(self, f"{p} is not an odd prime")


class PrimeMismatch(ValueError, PAdicError):
    def __init__(self, p: int, q: int):
        PAdicError.__init__(self, f"Cannot combine {p}-adic and {q}-adic numbers")


class DivisionByZeroAtPrecision(ZeroDivisionError, PAdicError):
    def __init__(self, prec: int):
        self.prec = prec
        PAdicError.__init__(self, f"Division by an element which is zero modulo p^{prec}")


class RequestedPrecisionUnavailable(PAdicError):
    def __init__(self, requested: int, available: int):
        self.requested = requested
        self.available = available
        PAdicError.__init__(
            self, f"Requested precision {requested} but only {available} digits are known"
        )


class MathPreconditionError(PAdicError):
    """A mathematical precondition of the requested evaluation does not hold."""


class NotAUnit(MathPreconditionError):
    pass


class NotAOneUnit(MathPreconditionError):
    pass


class ZeroInput(MathPreconditionError):
    pass


class ExponentNotIntegral(MathPreconditionError):
    pass


class ZeroParameter(MathPreconditionError):
    pass


class DegreeOutOfRange(MathPreconditionError):
    pass


class KmaxExceeded(MathPreconditionError):
    pass


class BudgetExceeded(MathPreconditionError):
    pass


class DomainError(MathPreconditionError):
    pass


class SeriesNotApplicable(MathPreconditionError):
    pass


class ReductionFailed(MathPreconditionError):
    pass


class InLambda(ReductionFailed):
    def __init__(self, message="x in Lambda; use zeta-star"):
        super().__init__(message)


class NotInLambda(MathPreconditionError):
    def __init__(self, message="x is not in Lambda; use the unstarred function"):
        super().__init__(message)
