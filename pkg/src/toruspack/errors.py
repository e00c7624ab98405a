class DegenerateLatticeError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class InvalidPackingError(ValueError):
    pass


class MalformedTilingError(ValueError):
    pass


class StripsPresentError(ValueError):
    """The rotation flex is not the unique motion when strips are present."""


class TheoremViolation(AssertionError):
    """A proven inequality failed; this signals a bug, not bad input."""
