"""Exception hierarchy shared by every geonum module.

All domain errors derive from :class:`GeonumError`; the CLI maps them to exit
status 1 and echoes the class name.
"""


class GeonumError(Exception):
    """Base class for domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


class RaggedInput(GeonumError, ValueError):
    pass


class DependentRows(GeonumError, ValueError):
    pass


class ShapeMismatch(GeonumError, ValueError):
    pass


class NotFullRank(GeonumError, ValueError):
    pass


class DimensionTooLarge(GeonumError, ValueError):
    pass


class BudgetExceeded(GeonumError, RuntimeError):
    """Raised when a tree search visits more nodes than its budget allows."""


class OutOfTable(GeonumError, ValueError):
    pass


class NotDefined(GeonumError, ValueError):
    pass


class NotApplicable(GeonumError, ValueError):
    pass


class NotPrime(GeonumError, ValueError):
    pass
