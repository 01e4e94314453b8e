"""Exception taxonomy shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class DegenerateInputError(ValueError):
    """Input degenerate for the requested operation (e.g. coincident points)."""


class SingularityError(ValueError):
    """Evaluation point coincides with a genuine singularity of the field."""


class DivergenceError(ValueError):
    """The requested integral does not converge."""


class ToleranceError(RuntimeError):
    """Refinement budget exhausted before reaching the requested tolerance."""


class ConvergenceError(RuntimeError):
    """An iterative solve failed to reach its tolerance within budget."""
