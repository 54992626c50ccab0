"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, CapacityError -> 3,
everything else derived from RabimixError -> 1.
"""


class RabimixError(Exception):
    """Base class for all errors raised by rabimix."""


class ConfigError(RabimixError):
    """Invalid system specification or run configuration."""

    def __init__(self, messages):
        if isinstance(messages, str):
            messages = [messages]
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


class CapacityError(RabimixError):
    """A requested computation exceeds a configured size cap."""


class DomainError(RabimixError):
    """Inputs outside the mathematical domain of an operation."""


class UnreachableError(RabimixError):
    """No interaction path connects the two states within the search depth."""


class DegenerateIntermediateError(RabimixError):
    """A path is blocked because its only continuation is degenerate with
    the initial state, where the perturbative denominator vanishes."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class BracketingError(RabimixError):
    """A 1-d minimization was requested without an interior minimum."""


class FlatTraceError(RabimixError):
    """A population trace shows no oscillation to extract."""
