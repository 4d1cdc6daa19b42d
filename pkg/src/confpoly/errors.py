"""Exception types shared across the package."""


class ConfpolyError(Exception):
    """Base class for every error raised by confpoly."""


class DimensionError(ConfpolyError, ValueError):
    pass


class MomentumError(ConfpolyError, ValueError):
    """Momentum is zero where forbidden, or not conserved on a component."""


class ZeroConfigurationError(ConfpolyError, ValueError):
    """The subspace is zero; there is no configuration polynomial for it."""


class EdgeCapError(ConfpolyError, ValueError):
    pass


class ParseError(ConfpolyError, ValueError):
    pass


class SamplingExhaustedError(ConfpolyError, RuntimeError):
    pass


class CheckFailure(ConfpolyError, AssertionError):
    """Two independent computations that must agree did not."""


class SizeError(ConfpolyError, ValueError):
    """Input exceeds a size guard on an exponential computation."""
