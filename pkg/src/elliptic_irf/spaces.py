"""Finite-dimensional theta-function spaces and numerical basis expansion.

Three families of n-dimensional spaces are represented by explicit bases
e_j, j = 0..n-1, with w = xi - n z and T = n tau:

========  ==========================================  ==========================
space     basis element                               z -> z+1, z -> z+tau
========  ==========================================  ==========================
V_n(xi)   theta[1/2 - j/n; n/2](w, T) exp(pi i n z)    1, (-1)^n e(xi - n z)
V_n^-     theta[1/2 - j/n; n/2](w, T) exp(pi i(n+1)z)  -1, (-1)^n e(xi - n z + tau/2)
~V_n(xi)  theta[1/2 - j/n; n/2](w, T)                  (-1)^n, (-1)^n e(-(n z - xi + n tau/2))
========  ==========================================  ==========================

where e(x) = exp(2 pi i x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConditioningError
from .functions import Bivariate, Univariate, tensor
from .theta import ThetaCharacteristics, theta_char

#: Largest admissible condition number of a sampling system.
MAX_COND = 1e8

SAMPLE_OFFSET = 0.37
RETRY_OFFSET = 0.53
HELD_OUT_OFFSET = 0.71


@dataclass(frozen=True)
class SpaceSpec:
    """One of V_n(xi) (parity=+1), V_n^-(xi) (parity=-1) or ~V_n(xi) (tilde=True)."""

    n: int
    xi: complex
    tau: complex
    parity: int = 1
    tilde: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension must be >= 1, got {self.n}")
        if self.parity not in (1, -1):
            raise ValueError("parity must be +1 or -1")
        object.__setattr__(self, "xi", complex(self.xi))
        object.__setattr__(self, "tau", complex(self.tau))

    @property
    def exp_weight(self) -> int:
        if self.tilde:
            return 0
        return self.n if self.parity > 0 else self.n + 1

    @property
    def shift_sign(self) -> int:
        """Multiplier under z -> z + 1."""
        if self.tilde:
            return (-1) ** self.n
        return self.parity

    def tau_multiplier(self, z):
        """Multiplier under z -> z + tau."""
        n, xi, tau = self.n, self.xi, self.tau
        z = np.asarray(z, dtype=complex)
        if self.tilde:
            return (-1) ** n * np.exp(-2j * np.pi * (n * z - xi + n * tau / 2))
        if self.parity > 0:
            return (-1) ** n * np.exp(2j * np.pi * (xi - n * z))
        return (-1) ** n * np.exp(2j * np.pi * (xi - n * z + tau / 2))

    def with_xi(self, xi: complex) -> "SpaceSpec":
        return SpaceSpec(self.n, xi, self.tau, self.parity, self.tilde)


def characteristics(j: int, n: int) -> ThetaCharacteristics:
    """Characteristics (1/2 - j/n, n/2) with j reduced to {0, ..., n-1}."""
    j = j % n
    return ThetaCharacteristics(Fraction(1, 2) - Fraction(j, n), Fraction(n, 2))


def basis_eval(spec: SpaceSpec, j: int, z, deriv: int = 0):
    """Value (deriv=0) or z-derivative (deriv=1) of the basis element e_j."""
    n = spec.n
    ch = characteristics(j, n)
    z = np.asarray(z, dtype=complex)
    w = spec.xi - n * z
    th = theta_char(ch, w, n * spec.tau)
    c = spec.exp_weight
    ex = np.exp(1j * np.pi * c * z) if c else 1.0
    if deriv == 0:
        return th * ex
    if deriv != 1:
        raise ValueError("only first derivatives are supported")
    dth = theta_char(ch, w, n * spec.tau, deriv=1)
    return (-n * dth + 1j * np.pi * c * th) * ex


def basis_function(spec: SpaceSpec, j: int) -> Univariate:
    return Univariate(lambda z: basis_eval(spec, j, z),
                      lambda z: basis_eval(spec, j, z, deriv=1),
                      spec.shift_sign)


def linear_combination_of_basis(spec: SpaceSpec, coeffs) -> Univariate:
    """sum_j coeffs[j] e_j with derivative."""
    c = np.asarray(coeffs, dtype=complex)

    def value(z):
        return sum(c[j] * basis_eval(spec, j, z) for j in range(spec.n))

    def deriv(z):
        return sum(c[j] * basis_eval(spec, j, z, deriv=1) for j in range(spec.n))

    return Univariate(value, deriv, spec.shift_sign)


def basis_matrix(spec: SpaceSpec, z) -> np.ndarray:
    """Matrix B[s, j] = e_j(z_s)."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    return np.stack([basis_eval(spec, j, z) for j in range(spec.n)], axis=1)


def translate_eval(k: int, xi: complex, f, z):
    """(T_k(xi) f)(z) = f(z - xi/k)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return f(np.asarray(z, dtype=complex) - xi / k)


def translate(k: int, xi: complex, f: Univariate) -> Univariate:
    """T_k(xi) f as a function object (derivative carried along)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    s = xi / k
    deriv = None if f.deriv is None else (lambda z: f.deriv(np.asarray(z) - s))
    return Univariate(lambda z: f(np.asarray(z) - s), deriv, f.parity)


def sample_points(count: int, tau: complex, offset: float = SAMPLE_OFFSET, im_frac: float = 0.05):
    s = np.arange(count)
    return (s + offset) / count + 1j * im_frac * complex(tau).imag


def held_out_points(count: int, tau: complex):
    return sample_points(count, tau, HELD_OUT_OFFSET, im_frac=-0.035)


@dataclass(frozen=True)
class BasisExpansion:
    coeffs: np.ndarray
    residual: float
    cond: float


def _sampling_system(spec: SpaceSpec):
    """Oversampled (2n x n) basis matrix; one retry with a shifted grid."""
    for offset in (SAMPLE_OFFSET, RETRY_OFFSET):
        z = sample_points(2 * spec.n, spec.tau, offset)
        b = basis_matrix(spec, z)
        cond = float(np.linalg.cond(b))
        if np.isfinite(cond) and cond <= MAX_COND:
            return z, b, cond
    raise ConditioningError(f"sampling system for {spec} has condition number {cond:.3g}")


def _relative(err: float, scale: float) -> float:
    if scale == 0.0:
        return 0.0 if err == 0.0 else float("inf")
    return err / scale


def expand_in_basis(f, spec: SpaceSpec) -> BasisExpansion:
    """Least-squares coefficients of ``f`` over the basis of ``spec``.

    ``residual`` is the largest reconstruction error at n + 1 held-out
    points, relative to the largest |f| there.
    """
    z, b, cond = _sampling_system(spec)
    coeffs, *_ = np.linalg.lstsq(b, np.asarray(f(z), dtype=complex), rcond=None)
    zh = held_out_points(spec.n + 1, spec.tau)
    fh = np.asarray(f(zh), dtype=complex)
    err = float(np.max(np.abs(basis_matrix(spec, zh) @ coeffs - fh)))
    return BasisExpansion(coeffs, _relative(err, float(np.max(np.abs(fh)))), cond)


def expand_in_product_basis(g, spec1: SpaceSpec, spec2: SpaceSpec) -> BasisExpansion:
    """Coefficients C[a, b] of g(z1, z2) over {e_a ⊗ e_b}, by 2D sampling.

    Both variables run over the same sampling line, so the grid meets the
    diagonal z1 = z2; callers applying the R-operator rely on its
    regularized diagonal value there.
    """
    z1, b1, c1 = _sampling_system(spec1)
    z2, b2, c2 = _sampling_system(spec2)
    vals = np.asarray(g(z1[:, None], z2[None, :]), dtype=complex)
    left, *_ = np.linalg.lstsq(b1, vals, rcond=None)
    right, *_ = np.linalg.lstsq(b2, left.T, rcond=None)
    coeffs = right.T
    h1 = held_out_points(spec1.n + 1, spec1.tau)
    h2 = held_out_points(spec2.n + 1, spec2.tau) + 0.013
    gh = np.asarray(g(h1[:, None], h2[None, :]), dtype=complex)
    recon = basis_matrix(spec1, h1) @ coeffs @ basis_matrix(spec2, h2).T
    err = float(np.max(np.abs(recon - gh)))
    return BasisExpansion(coeffs, _relative(err, float(np.max(np.abs(gh)))), max(c1, c2))


def quasi_periodicity_residual(f, spec: SpaceSpec, samples: int = 8) -> float:
    """Largest relative violation of the two defining relations of ``spec``."""
    z = np.linspace(0.0, 1.0, samples, endpoint=False) + 0.123 + 0.1j * spec.tau.imag
    f0 = np.asarray(f(z), dtype=complex)
    f1 = np.asarray(f(z + 1), dtype=complex)
    ft = np.asarray(f(z + spec.tau), dtype=complex)
    pred1 = spec.shift_sign * f0
    predt = spec.tau_multiplier(z) * f0
    r1 = np.abs(f1 - pred1) / np.maximum(np.maximum(np.abs(f1), np.abs(pred1)), 1e-300)
    rt = np.abs(ft - predt) / np.maximum(np.maximum(np.abs(ft), np.abs(predt)), 1e-300)
    return float(max(np.max(r1), np.max(rt)))


def pair_function(spec1: SpaceSpec, a: int, spec2: SpaceSpec, b: int) -> Bivariate:
    """e_a ⊗ e_b with analytic partials."""
    return tensor(basis_function(spec1, a), basis_function(spec2, b))
