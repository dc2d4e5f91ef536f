"""Small wrappers for (vectorized) holomorphic test functions.

The R-operator needs, besides values, the first partial derivatives of its
argument on the diagonal set and the sign picked up under z -> z + 1
(``parity`` = +1 for periodic, -1 for antiperiodic functions).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

FD_STEP = 1e-6


@dataclass(frozen=True)
class Univariate:
    value: Callable
    deriv: Optional[Callable] = None
    parity: int = 1

    def __call__(self, z):
        return self.value(z)


@dataclass(frozen=True)
class Bivariate:
    value: Callable
    d1: Optional[Callable] = None
    d2: Optional[Callable] = None
    parity: int = 1

    def __call__(self, z1, z2):
        return self.value(z1, z2)

    @property
    def has_partials(self) -> bool:
        return self.d1 is not None and self.d2 is not None


def constant(c: complex = 1.0, parity: int = 1) -> Univariate:
    return Univariate(lambda z: np.full(np.shape(z), c, dtype=complex),
                      lambda z: np.zeros(np.shape(z), dtype=complex), parity)


def zero(parity: int = 1) -> Univariate:
    return constant(0.0, parity)


def linear_combination(coeffs, funcs) -> Univariate:
    coeffs = list(coeffs)
    funcs = list(funcs)
    parity = funcs[0].parity if funcs else 1

    def value(z):
        return sum(c * f(z) for c, f in zip(coeffs, funcs))

    deriv = None
    if all(f.deriv is not None for f in funcs):
        def deriv(z):
            return sum(c * f.deriv(z) for c, f in zip(coeffs, funcs))
    return Univariate(value, deriv, parity)


def tensor(f: Univariate, g: Univariate) -> Bivariate:
    """(f ⊗ g)(z1, z2) = f(z1) g(z2), with partials when both carry derivatives."""
    if f.parity != g.parity:
        raise ValueError("tensor factors must share parity")
    d1 = d2 = None
    if f.deriv is not None and g.deriv is not None:
        d1 = lambda z1, z2: f.deriv(z1) * g(z2)  # noqa: E731
        d2 = lambda z1, z2: f(z1) * g.deriv(z2)  # noqa: E731
    return Bivariate(lambda z1, z2: f(z1) * g(z2), d1, d2, f.parity)


def with_central_differences(value: Callable, parity: int = 1, h: float = FD_STEP) -> Bivariate:
    """Wrap a user-supplied bivariate callable with central-difference partials."""
    d1 = lambda z1, z2: (value(z1 + h, z2) - value(z1 - h, z2)) / (2 * h)  # noqa: E731
    d2 = lambda z1, z2: (value(z1, z2 + h) - value(z1, z2 - h)) / (2 * h)  # noqa: E731
    return Bivariate(value, d1, d2, parity)


def fourier_mode(a: int, b: int, parity: int = 1) -> Bivariate:
    """exp(2 pi i (a z1 + b z2)), times exp(pi i (z1 + z2)) for parity -1.

    Exactly (anti)periodic in each slot; partials are analytic.
    """
    sa = a + (0.5 if parity < 0 else 0.0)
    sb = b + (0.5 if parity < 0 else 0.0)

    def value(z1, z2):
        return np.exp(2j * np.pi * (sa * np.asarray(z1) + sb * np.asarray(z2)))

    return Bivariate(value,
                     lambda z1, z2: 2j * np.pi * sa * value(z1, z2),
                     lambda z1, z2: 2j * np.pi * sb * value(z1, z2),
                     parity)


def fourier_mode3(a: int, b: int, c: int, parity: int = 1) -> Callable:
    """Trivariate exp(2 pi i (a z1 + b z2 + c z3)) (with the half shift for parity -1)."""
    s = 0.5 if parity < 0 else 0.0

    def value(z1, z2, z3):
        return np.exp(2j * np.pi * ((a + s) * np.asarray(z1) + (b + s) * np.asarray(z2)
                                    + (c + s) * np.asarray(z3)))

    return value
