"""Exception types shared across the package."""


class AvekitError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrix(AvekitError):
    """A pivot fell below the singularity threshold during factorization."""


class DimensionTooLarge(AvekitError):
    """The operation is capped at a smaller matrix dimension."""


class PivotBreakdown(AvekitError):
    """A sign-controlled elimination step hit a vanishing pivot 1 - a_kk*s."""


class NotUnique(AvekitError):
    """Signature enumeration did not find exactly one solution."""


class GenerationFailed(AvekitError):
    """Rejection sampling exhausted its attempt budget."""


class SingularTransform(AvekitError):
    """2B + I is singular, so the equilibrium problem has no AVE form."""
