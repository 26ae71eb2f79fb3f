"""Exception types shared across the package."""


class IntervalSizeError(Exception):
    """Base class for every error raised by this package."""


class BudgetExceeded(IntervalSizeError):
    pass


class NotTotalError(IntervalSizeError):
    pass


class MissingCapability(IntervalSizeError):
    pass


class UniverseTooLarge(IntervalSizeError):
    pass


class ValueBoundError(IntervalSizeError):
    """A function value does not fit the chosen encoding width."""


class NormalizationError(IntervalSizeError):
    pass


class EncodingOverflow(IntervalSizeError):
    pass


class ModelViolation(IntervalSizeError):
    """A machine, decider or function breaks a promise it was built on."""


class TMSpecError(IntervalSizeError):
    def __init__(self, violation, detail=""):
        self.violation = violation
        self.detail = detail
        super().__init__(f"{violation}: {detail}" if detail else violation)


class FormulaSyntaxError(IntervalSizeError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class NonMonotoneError(FormulaSyntaxError):
    pass


class NotAClusterError(IntervalSizeError):
    pass


class UnknownInstance(IntervalSizeError):
    pass
