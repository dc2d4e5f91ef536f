"""Theta functions with rational characteristics, theta_1, and Dedekind eta.

All evaluations are truncated series in double precision.  The functions
accept scalars or numpy arrays for ``z`` and broadcast over them.

Conventions::

    theta[a; b](z, tau) = sum_m exp(pi i (m+a)^2 tau + 2 pi i (m+a)(z+b))
    theta_1(z, tau)     = theta[1/2; 1/2](z, tau)
    eta(tau)            = exp(pi i tau / 12) prod_{m>=1} (1 - exp(2 pi i m tau))
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import ParameterError

#: Lattice-avoidance margin used by every genericity check.
DELTA_GEN = 1e-6

#: Target relative truncation error of the theta series.
SERIES_TOL = 1e-16

# Safety constant T in the truncation bound.
_SAFETY = 5.0

HALF = Fraction(1, 2)


def _check_tau(tau: complex) -> complex:
    tau = complex(tau)
    if not tau.imag > 0:
        raise ParameterError(f"Im(tau) must be positive, got tau={tau!r}")
    return tau


def lattice_distance(z: complex, tau: complex) -> float:
    """Distance from ``z`` to the lattice Z + Z*tau."""
    tau = _check_tau(tau)
    z = complex(z)
    n0 = round(z.imag / tau.imag)
    best = math.inf
    for n in (n0 - 1, n0, n0 + 1):
        w = z - n * tau
        m0 = round(w.real)
        for m in (m0 - 1, m0, m0 + 1):
            best = min(best, abs(w - m))
    return best


@dataclass(frozen=True)
class ThetaCharacteristics:
    """Rational characteristics (a, b), stored exactly."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))


@dataclass(frozen=True)
class ModularParams:
    """Modular parameter ``tau`` and the generic shift ``mu``.

    ``mu_real`` requests the stricter condition mu in R minus Z needed by
    the face-model constructions.
    """

    tau: complex = 0.2 + 1.0j
    mu: complex = 0.41421356237309515
    mu_real: bool = False

    def __post_init__(self):
        object.__setattr__(self, "tau", _check_tau(self.tau))
        object.__setattr__(self, "mu", complex(self.mu))
        if lattice_distance(self.mu, self.tau) <= DELTA_GEN:
            raise ParameterError(f"mu={self.mu!r} lies within {DELTA_GEN} of Z + Z tau")
        if self.mu_real:
            if abs(self.mu.imag) > 0.0:
                raise ParameterError(f"mu must be real, got {self.mu!r}")
            if abs(self.mu.real - round(self.mu.real)) <= DELTA_GEN:
                raise ParameterError(f"mu must not be an integer, got {self.mu!r}")

    @cached_property
    def theta1_prime0(self) -> complex:
        return theta1_deriv0(self.tau)

    def theta1(self, z, deriv: int = 0):
        return theta1(z, self.tau, deriv=deriv)


def _truncation_range(a: float, imz: np.ndarray, imtau: float, tol: float) -> tuple[int, int]:
    """Index range [lo, hi] for the summation variable m.

    Term magnitudes behave like exp(-pi Im(tau) x^2 - 2 pi x Im(z)) with
    x = m + a, a Gaussian centred at x0 = -Im(z)/Im(tau).  We take the union
    of two windows:

    * |x| <= M with M = ceil(sqrt((T + pi Im(tau)/4 + 2 pi |Im z| + |ln tol|)
      / (pi Im(tau)))) + 2, T = 5;
    * |x - x0| <= W with W = ceil(sqrt((T + |ln tol|) / (pi Im(tau)))) + 2,

    the second covering arguments whose Gaussian centre drifts away from 0
    (|Im z| large relative to Im(tau)), where the first bound is too short.
    """
    if imz.size:
        return _index_range(a, float(np.min(imz)), float(np.max(imz)), imtau, tol)
    return _index_range(a, 0.0, 0.0, imtau, tol)


def _index_range(a: float, ymin: float, ymax: float, imtau: float, tol: float) -> tuple[int, int]:
    lntol = abs(math.log(tol))
    yabs = max(abs(ymin), abs(ymax))
    big_m = math.ceil(math.sqrt((_SAFETY + math.pi * imtau / 4 + 2 * math.pi * yabs + lntol)
                                / (math.pi * imtau))) + 2
    width = math.ceil(math.sqrt((_SAFETY + lntol) / (math.pi * imtau))) + 2
    lo = min(-big_m, math.floor(-ymax / imtau) - width) - 1
    hi = max(big_m, math.ceil(-ymin / imtau) + width) + 1
    return math.floor(lo - a), math.ceil(hi - a)


def _theta_scalar(a: Fraction, b: Fraction, z: complex, tau: complex, deriv: int, tol: float) -> complex:
    # same series as theta_char, without numpy overhead for single points
    n = round(z.real)
    zr = z - n
    phase = cmath.exp(2j * math.pi * ((a.numerator * n) % a.denominator) / a.denominator)
    lo, hi = _index_range(float(a), zr.imag, zr.imag, tau.imag, tol)
    fa, fb = float(a), float(b)
    pit = 1j * math.pi * tau
    w = 2j * math.pi * (zr + fb)
    total = 0j
    for m in range(lo, hi + 1):
        x = m + fa
        t = cmath.exp(pit * x * x + w * x)
        if deriv:
            t *= (2j * math.pi * x) ** deriv
        total += t
    return phase * total


def theta_char(ch: ThetaCharacteristics, z, tau: complex, deriv: int = 0, tol: float = SERIES_TOL):
    """theta[a; b](z, tau) or its ``deriv``-th z-derivative (deriv in {0, 1, 2}).

    ``z`` is range-reduced to |Re z| <= 1/2 using
    theta[a; b](z + n) = exp(2 pi i a n) theta[a; b](z), with the phase computed
    from the exact fraction a*n mod 1.
    """
    tau = _check_tau(tau)
    if deriv not in (0, 1, 2):
        raise ValueError("deriv must be 0, 1 or 2")
    a, b = ch.a, ch.b
    if isinstance(z, (int, float, complex, np.number)):
        return _theta_scalar(a, b, complex(z), tau, deriv, tol)
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    z = z.reshape(-1)

    n = np.round(z.real)
    zr = z - n
    # exp(2 pi i a n) with a*n reduced mod 1 exactly
    num = (a.numerator * n.astype(np.int64)) % a.denominator
    phase = np.exp(2j * np.pi * num / a.denominator)

    lo, hi = _truncation_range(float(a), zr.imag, tau.imag, tol)
    x = np.arange(lo, hi + 1, dtype=float) + float(a)
    bf = float(b)
    expo = (1j * np.pi * tau) * x[None, :] ** 2 + 2j * np.pi * x[None, :] * (zr[:, None] + bf)
    terms = np.exp(expo)
    if deriv:
        terms = terms * (2j * np.pi * x[None, :]) ** deriv
    out = phase * terms.sum(axis=1)
    out = out.reshape(shape)
    return out[()] if out.ndim == 0 else out


_THETA1 = ThetaCharacteristics(HALF, HALF)


def theta1(z, tau: complex, deriv: int = 0):
    """Jacobi theta_1(z, tau) (odd, theta_1(z+1) = -theta_1(z))."""
    return theta_char(_THETA1, z, tau, deriv=deriv)


def theta1_deriv0(tau: complex) -> complex:
    """theta_1'(0, tau) from the term-by-term differentiated series."""
    return complex(theta1(0.0, tau, deriv=1))


def dedekind_eta(tau: complex) -> complex:
    """Dedekind eta via the product, truncated once |q^m| < 1e-17."""
    tau = _check_tau(tau)
    q = np.exp(2j * np.pi * tau)
    prod = 1.0 + 0j
    qm = q
    while abs(qm) >= 1e-17:
        prod *= 1.0 - qm
        qm *= q
    return complex(np.exp(1j * np.pi * tau / 12) * prod)


def three_term_residual(x, y, z, w, tau: complex) -> float:
    """Relative residual of the three-term theta_1 identity.

    Returns |sum of the three quartic products| divided by the largest of
    their magnitudes (0.0 if all three vanish).
    """
    t = lambda u: theta1(u, tau)  # noqa: E731
    p1 = t(x + y) * t(x - y) * t(z + w) * t(z - w)
    p2 = t(x + z) * t(x - z) * t(w + y) * t(w - y)
    p3 = t(x + w) * t(x - w) * t(y + z) * t(y - z)
    scale = np.maximum(np.maximum(np.abs(p1), np.abs(p2)), np.abs(p3))
    total = np.abs(p1 + p2 + p3)
    res = np.where(scale > 0, total / np.where(scale > 0, scale, 1.0), 0.0)
    return float(np.max(res))


def theta1_product(z, tau: complex):
    """theta_1 from the triple product (independent of the series).

    theta_1(z) = -2 exp(pi i tau / 4) sin(pi z) prod (1 - q^m)(1 - q^m x)(1 - q^m / x),
    q = exp(2 pi i tau), x = exp(2 pi i z).
    """
    tau = _check_tau(tau)
    z = np.asarray(z, dtype=complex)
    q = np.exp(2j * np.pi * tau)
    x = np.exp(2j * np.pi * z)
    prod = np.ones_like(z)
    qm = q
    while abs(qm) * max(1.0, float(np.max(np.abs(x))), float(np.max(np.abs(1 / x)))) >= 1e-17:
        prod = prod * (1 - qm) * (1 - qm * x) * (1 - qm / x)
        qm = qm * q
    return -2.0 * np.exp(1j * np.pi * tau / 4) * np.sin(np.pi * z) * prod
