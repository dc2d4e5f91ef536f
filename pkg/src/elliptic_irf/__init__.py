"""Numerics for the elliptic R-operator, the associated IRF model, intertwining
vectors, factorized L-operators and Belavin's R-matrix."""

from .errors import (ConditioningError, ConfigError, DerivativeRequired, EllipticIRFError,
                     GenericityError, MembershipError, ParameterError, SingularError)
from .theta import ModularParams, ThetaCharacteristics, dedekind_eta, theta1, theta_char

__version__ = "0.1.0"

__all__ = [
    "ConditioningError", "ConfigError", "DerivativeRequired", "EllipticIRFError",
    "GenericityError", "MembershipError", "ModularParams", "ParameterError",
    "SingularError", "ThetaCharacteristics", "dedekind_eta", "theta1", "theta_char",
]
