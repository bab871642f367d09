class UsageError(ValueError):
    """Bad input to a public operation (exit code 2 at the CLI)."""


class InvariantViolation(RuntimeError):
    """A mathematical invariant that must hold was observed to fail."""


class CutoffError(UsageError):
    """A Fock-space operation reached below the configured cutoff.

    Raised instead of silently truncating; rerun with a deeper cutoff.
    """
