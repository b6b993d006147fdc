"""Exception types shared across the package."""


class FidelityError(ValueError):
    """Invalid input to a fidelity computation (CLI exit code 2 when from user input)."""


class DegenerateError(FidelityError):
    """A computation is undefined for the given data, e.g. a zero-variance referent."""


class NotMonotoneError(FidelityError):
    """A climb predicate passed at the upper bracket but failed at the lower one."""
