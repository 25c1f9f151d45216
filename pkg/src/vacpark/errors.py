"""Exception types shared across the package.

A preference list that strands a car is a legal *outcome*, never an
exception; these types cover genuinely invalid requests only.
"""


class InputError(ValueError):
    """An argument falls outside the documented domain (bad preference
    entry, offset out of range, malformed parameters)."""


class GuardError(RuntimeError):
    """A computation was refused because it would exceed a configured
    resource ceiling. Pass an explicit override to proceed anyway."""
