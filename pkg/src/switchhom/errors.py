"""Exception hierarchy shared by all switchhom modules.

The CLI maps these onto exit codes: validation problems are usage errors
(exit 2), contract violations are precondition errors (exit 3), and
resource/timeout failures exit 4.
"""


class SwitchHomError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SwitchHomError):
    """Malformed input data: bad permutations, bad graphs, parse failures."""


class ContractError(SwitchHomError):
    """A documented precondition does not hold (e.g. group not
    switch-commutative, alphabet mismatch, input not a forest)."""


class ResourceLimitError(SwitchHomError):
    """A configured cap was exceeded (group closure size, enumeration cap)."""


class TimeoutExceeded(ResourceLimitError):
    """A search ran past its deadline; the outcome is unknown, not absent."""
