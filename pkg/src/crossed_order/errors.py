"""Exception hierarchy.  CLI exit codes hang off these classes."""


class CrossedOrderError(Exception):
    """Base class for every error raised by the package."""


class FieldError(CrossedOrderError, ValueError):
    """Bad field descriptor or an arithmetic request the field cannot honour."""


class NoRootOfUnityError(FieldError):
    """The field lacks the requested roots of unity; the scenario is invalid."""


class GroupError(CrossedOrderError, ValueError):
    """Malformed group table, subgroup, or action."""


class CocycleError(CrossedOrderError, ValueError):
    """Cocycle table or normalization request that cannot be honoured."""


class UnsupportedError(CrossedOrderError):
    """A request outside the supported families (non-cyclic A, tall towers, ...)."""


class OracleBudgetError(CrossedOrderError):
    """An exhaustive oracle would exceed its candidate budget."""


class InconsistencyError(CrossedOrderError):
    """Two independent computations of the same quantity disagree."""


class ScenarioError(CrossedOrderError, ValueError):
    """A scenario violates the admissibility contract."""


class FormatError(CrossedOrderError, ValueError):
    """A scenario or census file does not parse or fails the schema."""
