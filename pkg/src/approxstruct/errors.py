"""Exception types raised across the package."""


class UndecidedComparison(ArithmeticError):
    """Certified rounding could not settle a comparison below the precision cap."""


class ElementCapExceeded(ValueError):
    """A set is too large to enumerate element by element."""


class SearchSpaceExceeded(RuntimeError):
    """An exhaustive search would exceed its configured budget."""


class CertificationFailed(RuntimeError):
    """A progression was found but one of its terms has no witness.

    By construction this cannot happen for a correct lift, so it is raised
    rather than skipped.
    """


class SetSpecError(ValueError):
    """A set description (JSON or family parameters) is malformed."""
