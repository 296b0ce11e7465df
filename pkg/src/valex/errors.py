"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (exit code 2 on the command line)."""


class InvariantViolation(RuntimeError):
    """Two computations that must agree did not (exit code 1)."""
