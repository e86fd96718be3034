"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Malformed configuration file or unusable command arguments."""


class FeasibilityError(ValueError):
    """A transmitter placement violates the safe-zone constraints."""


class QuadratureError(RuntimeError):
    """Adaptive integration exhausted its evaluation budget before converging.

    Carries the best estimate produced so far and the bound on its error, so
    callers can decide whether the partial answer is still usable.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound
