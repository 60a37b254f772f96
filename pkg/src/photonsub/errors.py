"""Exception types shared across the package."""


class InvalidParameterError(ValueError):
    """A physical parameter is outside its allowed range."""


class NoClickError(ValueError):
    """The detector can never click, so the conditional state is undefined."""


class NormalizabilityError(ValueError):
    """The s-ordered quasi-probability is not normalizable for the requested s."""

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class ConvergenceError(RuntimeError):
    """The Fock oracle did not converge before reaching its maximum cutoff."""
