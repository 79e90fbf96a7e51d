class DomainError(ValueError):
    """Operands live in incompatible scalar domains, or outside a function's domain."""


class PreconditionError(ValueError):
    pass


class ConfigurationError(ValueError):
    pass


class DegeneratePointError(ValueError):
    """A denominator vanishes (numerically) at the given point."""
