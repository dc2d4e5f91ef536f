"""Exception types raised by the numerics layer and the verification CLI."""


class EllipticIRFError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(EllipticIRFError, ValueError):
    """Invalid modular parameters (e.g. Im(tau) <= 0, mu on the lattice)."""


class GenericityError(ParameterError):
    """A weight sequence or spectral parameter violates a lattice-avoidance constraint."""


class ConditioningError(EllipticIRFError):
    """A sampling system used for basis expansion is too ill-conditioned."""


class MembershipError(EllipticIRFError):
    """A function that should lie in a finite theta space does not expand in it."""


class SingularError(EllipticIRFError):
    """The incoming intertwiner matrix is numerically singular."""


class DerivativeRequired(EllipticIRFError):
    """The regularized diagonal value of the R-operator needs partial derivatives."""


class ConfigError(EllipticIRFError, ValueError):
    """Bad suite configuration (unknown suite, malformed field)."""
