"""Exception hierarchy shared by every module."""


class SamplingError(ValueError):
    """Base class for all errors raised by :mod:`transratio`."""


class InvalidDesign(SamplingError):
    """Sample size / population size combination is not usable (need 2 <= n < N)."""


class DegenerateTransform(SamplingError):
    """``L`` makes some ``u_i = L - x_i`` zero or of mixed sign."""


class DivisionByZero(SamplingError, ZeroDivisionError):
    """A denominator required by an estimator or constant is zero."""


class TooLarge(SamplingError):
    """Exhaustive enumeration would exceed the configured subset cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"C(N, n) = {count} exceeds enumeration cap {cap}")
        self.count = count
        self.cap = cap


class MissingParam(SamplingError):
    """A summary constant needed by a formula is not available."""

    def __init__(self, name: str, needed_by: str = ""):
        msg = f"missing parameter {name!r}"
        if needed_by:
            msg += f" (needed by {needed_by})"
        super().__init__(msg)
        self.name = name


class UnsupportedEstimator(SamplingError):
    """No closed-form result is available for this estimator kind."""


class NoSolution(SamplingError):
    """The optimal-L equation has no admissible root."""


class BracketFailure(SamplingError):
    """Root bracketing for the exact optimal L did not find a sign change."""


class ParseError(SamplingError):
    """Malformed population CSV or params file."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
