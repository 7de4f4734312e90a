"""Exception types shared across the package."""


class DimensionMismatchError(ValueError):
    """Operands live in different ambient dimensions."""


class DegenerateFamilyError(ValueError):
    """Every rotation field annihilates every function: the inequality is
    vacuous (all functions constant) and no finite exponent is defined."""


class NotMaximalError(ValueError):
    """Edge set is not closed under Lie brackets; run the closure first."""


class EmptySymmetryError(ValueError):
    """An empty edge set carries no symmetry to decompose."""


class NonPositiveDeltaError(ValueError):
    """The local growth exponent came out <= 0, which signals inconsistent
    per-function exponents supplied by the caller."""


class CapExceededError(RuntimeError):
    """Enumeration would produce more symmetries than the configured cap."""

    def __init__(self, count: int, cap: int):
        super().__init__(f"family has {count} members, above the cap {cap}")
        self.count = count
        self.cap = cap


class NonFiniteSampleError(RuntimeError):
    """An integrand returned NaN or infinity; singular integrands must be
    truncated before they are handed to the quadrature."""


class InputError(ValueError):
    """Invalid scenario input; ``path`` points into the offending JSON field."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
