"""The k^2 x k^2 matrix of the conjugated R-operator on ~V_k ⊗ ~V_k.

    R_k(xi12) = T_k(xi2)^-1 ⊗ T_k(xi1+mu)^-1  R(xi12)  T_k(xi1) ⊗ T_k(xi2+mu)

restricted to ~V_k ⊗ ~V_k, with ~V_k = ~V_k(0).  Matrices act on coefficient
vectors in the basis e_i ⊗ e_j, flattened row-major as i*k + j, so
kron(X, Y) is X on the first tensor slot.

The transpose R_k(xi)* acts on coefficient vectors of the dual basis
e^a ⊗ e^b.  From (R* e^c⊗e^d)(e_a⊗e_b) = (e^d⊗e^c)(R e_b⊗e_a) one gets
S[(a, b), (c, d)] = M[(d, c), (b, a)], i.e. S = P M^T P with P the swap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MembershipError
from .functions import Bivariate, tensor
from .roperator import RContext, r_apply
from .spaces import SpaceSpec, basis_function, expand_in_product_basis
from .theta import ModularParams

#: Column membership tolerance.
MEMBERSHIP_TOL = 1e-6


def tilde_space(k: int, params: ModularParams, xi: complex = 0.0) -> SpaceSpec:
    return SpaceSpec(k, xi, params.tau, tilde=True)


def _shifted(f, s1: complex, s2: complex) -> Bivariate:
    """(w1, w2) -> f(w1 - s1, w2 - s2), partials carried along."""
    parity = getattr(f, "parity", 1)
    d1 = d2 = None
    if isinstance(f, Bivariate) and f.has_partials:
        d1 = lambda a, b: f.d1(a - s1, b - s2)  # noqa: E731
        d2 = lambda a, b: f.d2(a - s1, b - s2)  # noqa: E731
    return Bivariate(lambda a, b: f(a - s1, b - s2), d1, d2, parity)


def rk_apply_pair(xi1: complex, xi2: complex, f, z1, z2, params: ModularParams, k: int):
    """Conjugated definition, evaluated literally from the translation sandwich."""
    mu = params.mu
    g = _shifted(f, xi1 / k, (xi2 + mu) / k)
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    return r_apply(RContext(params, xi1 - xi2), g, z1 + xi2 / k, z2 + (xi1 + mu) / k)


def rk_apply(xi: complex, f, z1, z2, params: ModularParams, k: int):
    """(R_k(xi) f)(z1, z2); equals rk_apply_pair(xi, 0, ...)."""
    return rk_apply_pair(xi, 0.0, f, z1, z2, params, k)


@dataclass(frozen=True)
class OperatorMatrix:
    """Matrix on k- or k^2-dimensional coefficient space ("single" or "pair" labels)."""

    dim: int
    entries: np.ndarray
    labels: str

    def __post_init__(self):
        if self.entries.shape != (self.dim, self.dim):
            raise ValueError("entries shape does not match dim")
        if not np.all(np.isfinite(self.entries)):
            raise ValueError("non-finite matrix entries")


def rk_matrix(k: int, xi: complex, params: ModularParams, residuals: list | None = None) -> np.ndarray:
    """M[(i, j), (a, b)]: coefficient of e_i ⊗ e_j in R_k(xi) (e_a ⊗ e_b).

    Each column is obtained by sampling and 2D least squares; its held-out
    residual must stay below MEMBERSHIP_TOL.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    spec = tilde_space(k, params)
    basis = [basis_function(spec, a) for a in range(k)]
    m = np.empty((k * k, k * k), dtype=complex)
    for a in range(k):
        for b in range(k):
            f = tensor(basis[a], basis[b])
            exp = expand_in_product_basis(lambda z1, z2: rk_apply(xi, f, z1, z2, params, k), spec, spec)
            if exp.residual > MEMBERSHIP_TOL:
                raise MembershipError(
                    f"column ({a}, {b}) of R_k leaves ~V_k ⊗ ~V_k: residual {exp.residual:.3g}")
            if residuals is not None:
                residuals.append(exp.residual)
            m[:, a * k + b] = exp.coeffs.reshape(-1)
    return m


def swap_matrix(k: int) -> np.ndarray:
    p = np.zeros((k * k, k * k))
    for i in range(k):
        for j in range(k):
            p[j * k + i, i * k + j] = 1.0
    return p


def star(m: np.ndarray) -> np.ndarray:
    """S[(a, b), (c, d)] = M[(d, c), (b, a)]; an involution."""
    k = int(round(np.sqrt(m.shape[0])))
    p = swap_matrix(k)
    return p @ m.T @ p


def rk_star_matrix(k: int, xi: complex, params: ModularParams) -> np.ndarray:
    return star(rk_matrix(k, xi, params))


def ab_matrices(k: int):
    """A = diag(exp(2 pi i j / k)), B e_j = e_{j+1 mod k}."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a = np.diag(np.exp(2j * np.pi * np.arange(k) / k))
    b = np.roll(np.eye(k, dtype=complex), 1, axis=0)
    return a, b


def ab_functional(k: int, f, z, params: ModularParams):
    """Pointwise (A f)(z), (B f)(z) on arbitrary holomorphic f."""
    z = np.asarray(z, dtype=complex)
    tau = params.tau
    af = -f(z + 1 / k)
    bf = -np.exp(2j * np.pi * (z + tau / (2 * k))) * f(z + tau / k)
    return af, bf


def _rel(x: np.ndarray, y: np.ndarray) -> float:
    scale = max(np.max(np.abs(x)), np.max(np.abs(y)), 1e-300)
    return float(np.max(np.abs(x - y)) / scale)


def tau_shift_factor(xi: complex, params: ModularParams, k: int) -> complex:
    """(-exp(2 pi i (xi + tau/2 - mu/k)))^-1."""
    return 1.0 / (-np.exp(2j * np.pi * (xi + params.tau / 2 - params.mu / k)))


def belavin_property_residuals(k: int, xi: complex, params: ModularParams,
                               drop_sign: bool = False) -> dict:
    """Relative residuals of the characterizing properties of R_k.

    symmetry-A / symmetry-B: R (x⊗x) = (x⊗x) R;
    shift-1:   R(xi+1)   = (1⊗A) R(xi) (A⊗1)^-1 (-1);
    shift-tau: R(xi+tau) = (1⊗B) R(xi) (B⊗1)^-1 (-exp 2 pi i (xi + tau/2 - mu/k))^-1;
    unit:      R(0) = theta_1'(0) id.
    ``drop_sign`` removes the (-1) in shift-1 (negative control).
    """
    a, b = ab_matrices(k)
    one = np.eye(k)
    m = rk_matrix(k, xi, params)
    m1 = rk_matrix(k, xi + 1, params)
    mt = rk_matrix(k, xi + params.tau, params)
    m0 = rk_matrix(k, 0.0, params)
    sign = 1.0 if drop_sign else -1.0
    shift1 = np.kron(one, a) @ m @ np.linalg.inv(np.kron(a, one)) * sign
    shiftt = np.kron(one, b) @ m @ np.linalg.inv(np.kron(b, one)) * tau_shift_factor(xi, params, k)
    return {
        "symmetry-A": _rel(m @ np.kron(a, a), np.kron(a, a) @ m),
        "symmetry-B": _rel(m @ np.kron(b, b), np.kron(b, b) @ m),
        "shift-1": _rel(m1, shift1),
        "shift-tau": _rel(mt, shiftt),
        "unit": _rel(m0, params.theta1_prime0 * np.eye(k * k)),
    }


def star_property_residuals(k: int, xi: complex, params: ModularParams) -> dict:
    """The same properties for R_k(xi)*, with A* = A^T, B* = B^T and inverses moved."""
    a, b = ab_matrices(k)
    a, b = a.T, b.T
    one = np.eye(k)
    s = rk_star_matrix(k, xi, params)
    s1 = rk_star_matrix(k, xi + 1, params)
    st = rk_star_matrix(k, xi + params.tau, params)
    s0 = rk_star_matrix(k, 0.0, params)
    shift1 = -np.linalg.inv(np.kron(one, a)) @ s @ np.kron(a, one)
    shiftt = np.linalg.inv(np.kron(one, b)) @ s @ np.kron(b, one) * tau_shift_factor(xi, params, k)
    return {
        "symmetry-A": _rel(s @ np.kron(a, a), np.kron(a, a) @ s),
        "symmetry-B": _rel(s @ np.kron(b, b), np.kron(b, b) @ s),
        "shift-1": _rel(s1, shift1),
        "shift-tau": _rel(st, shiftt),
        "unit": _rel(s0, params.theta1_prime0 * np.eye(k * k)),
    }


def ybe_sides_matrix(r12: np.ndarray, r13: np.ndarray, r23: np.ndarray, k: int):
    """(1⊗R12)(R13⊗1)(1⊗R23) and (R23⊗1)(1⊗R13)(R12⊗1) as k^3 x k^3 matrices."""
    one = np.eye(k)
    left = lambda r: np.kron(r, one)  # noqa: E731
    right = lambda r: np.kron(one, r)  # noqa: E731
    lhs = right(r12) @ left(r13) @ right(r23)
    rhs = left(r23) @ right(r13) @ left(r12)
    return lhs, rhs


def ybe_matrix_residual(k: int, xi1, xi2, xi3, params: ModularParams, starred: bool = False) -> float:
    build = rk_star_matrix if starred else rk_matrix
    r12 = build(k, xi1 - xi2, params)
    r13 = build(k, xi1 - xi3, params)
    r23 = build(k, xi2 - xi3, params)
    lhs, rhs = ybe_sides_matrix(r12, r13, r23, k)
    return _rel(lhs, rhs)
