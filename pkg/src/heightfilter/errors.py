"""Exception hierarchy shared by the package."""


class HeightFilterError(Exception):
    pass


class ConstructionError(HeightFilterError, ValueError):
    """Invalid family/rank combination for a root system."""


class DomainError(HeightFilterError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvariantError(HeightFilterError, AssertionError):
    """An internal consistency check failed.

    Raising this means a bug or a counterexample to the classification; the
    test suite treats it as fatal.
    """


class UnsupportedPatternError(InvariantError):
    """The extra base node sits in a position with no closed-form dimension."""


class BudgetError(HeightFilterError, RuntimeError):
    """The Weyl group is too large to enumerate under the configured budget."""
