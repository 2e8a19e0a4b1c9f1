"""Exception hierarchy for horizonsim."""


class HorizonSimError(ValueError):
    """Base class for every rejection raised by the package."""


class NotNormalizedError(HorizonSimError):
    def __init__(self, message, qubit=None):
        super().__init__(message)
        self.qubit = qubit


class NonUnitaryError(HorizonSimError):
    def __init__(self, message, deviation):
        super().__init__(message)
        self.deviation = deviation


class InvalidGateError(HorizonSimError):
    pass


class InvalidDensityMatrixError(HorizonSimError):
    pass


class ConvergenceError(HorizonSimError):
    def __init__(self, message, residual):
        super().__init__(message)
        self.residual = residual


class UnknownQubitError(HorizonSimError):
    pass


class MalformedCircuitError(HorizonSimError):
    pass


class CausalityError(HorizonSimError):
    """Raised when an operation would carry information out of the interior."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = ", ".join(str(v) for v in self.violations)
        super().__init__(f"causality violated: {lines}")


class InvalidParameterError(HorizonSimError):
    pass
