"""Exception hierarchy and process exit codes."""


class GsPulseError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(GsPulseError):
    """A parameter record violates one of its invariants."""


class ParseError(GsPulseError):
    """Malformed configuration text.

    Carries the 1-based line and column of the offending token.
    """

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class NonFiniteState(GsPulseError):
    """Integration produced a non-finite state (step size too large)."""


class InsufficientWarmup(GsPulseError):
    """Trajectory too short to extract a transient-free pulse window."""


class ShiftTooLarge(GsPulseError):
    """A pulse overlap shift moved the delayed copy outside the window."""


class ZeroDenominator(GsPulseError):
    """Normalization pulse carries no energy."""


class NonuniformGrid(GsPulseError):
    """Operation requires a uniformly sampled time grid."""


class DomainError(GsPulseError):
    """Argument outside the mathematical domain of a closed form."""


# Process exit codes, one per error class.  Chosen outside the range argparse
# uses for usage errors (2).
EXIT_CODES = {
    ParseError: 64,
    ValidationError: 65,
    NonFiniteState: 66,
    InsufficientWarmup: 67,
    ShiftTooLarge: 68,
    ZeroDenominator: 69,
    NonuniformGrid: 70,
    DomainError: 71,
}


def exit_code_for(exc):
    """Exit code for an exception instance (1 for anything unrecognized)."""
    for cls, code in EXIT_CODES.items():
        if isinstance(exc, cls):
            return code
    return 1
