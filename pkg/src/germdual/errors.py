"""Exception types raised across the package."""


class GermDualError(Exception):
    """Base class for all package errors."""


class NotSigmaFinite(GermDualError):
    """A set was required to be sigma-finite but contains a positive-area box."""


class NotIntegrable(GermDualError):
    """A function has infinite L1 norm under the chosen measure."""


class ZeroGerm(GermDualError):
    """A germ of norm zero has no norming witness."""


class Unbounded(GermDualError):
    """Line weights do not have a finite essential supremum."""


class Unsupported(GermDualError):
    """Input lies outside the class the operation can decide exactly."""
