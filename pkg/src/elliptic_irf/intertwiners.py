"""Incoming and outgoing intertwining vectors.

The incoming vector for the step kappa = lambda + mu eps_i is evaluation at
lambda_i.  Evaluating the basis of V_k(xi + |lambda|_k) at the points
lambda_i gives the k x k matrix ``phibar[i, j]``; its two-sided inverse
``phi[j, i]`` holds the coefficients of the outgoing vectors

    phi(xi)_lambda^{lambda + mu eps_i}(z) = sum_j phi[j, i] e_j(z).

Window indices k1..k2 are stored 0-based (i - k1) in all matrices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GenericityError, SingularError
from .functions import Univariate, tensor, zero
from .irf import WeightSequence, boltzmann_weight
from .roperator import EPS_DIAG, RContext, r_apply
from .spaces import SpaceSpec, basis_eval, linear_combination_of_basis
from .theta import DELTA_GEN, ModularParams, dedekind_eta, lattice_distance, theta1

MAX_COND = 1e8


def require_generic(xi: complex, tau: complex, what: str = "xi") -> None:
    if lattice_distance(xi, tau) <= DELTA_GEN:
        raise GenericityError(f"{what}={complex(xi)!r} lies within {DELTA_GEN} of Z + Z tau")


def incoming_apply(lam: WeightSequence, kappa: WeightSequence, f, sign: int = 1):
    """phibar_lambda^kappa f: f(lambda_i) if kappa = lambda + sign*mu*eps_i, else 0."""
    i = lam.step_to(kappa, sign)
    if i is None:
        return 0j
    return complex(f(lam[i]))


def incoming_apply2(lam: WeightSequence, kappa: WeightSequence, nu: WeightSequence, g, sign: int = 1):
    """(phibar_lambda^kappa ⊗ phibar_kappa^nu) g = g(lambda_i, kappa_j) or 0."""
    i = lam.step_to(kappa, sign)
    j = kappa.step_to(nu, sign)
    if i is None or j is None:
        return 0j
    return complex(g(lam[i], kappa[j]))


def space_for(xi: complex, lam: WeightSequence, params: ModularParams,
              parity: int = 1, tilde: bool = False) -> SpaceSpec:
    """V_k(xi + |lambda|_k) (or its minus / tilde variant)."""
    return SpaceSpec(lam.k, xi + lam.weight_sum, params.tau, parity, tilde)


def phibar_matrix(xi: complex, lam: WeightSequence, params: ModularParams,
                  parity: int = 1, tilde: bool = False) -> np.ndarray:
    """phibar[i, j] = e_j(lambda_i) for the basis of V_k(xi + |lambda|_k)."""
    spec = space_for(xi, lam, params, parity, tilde)
    pts = lam.values
    return np.stack([basis_eval(spec, j, pts) for j in range(lam.k)], axis=1)


def theta_value_matrix(xi: complex, lam: WeightSequence, params: ModularParams) -> np.ndarray:
    """phibar without the diagonal exp(pi i k lambda_i) factor."""
    return phibar_matrix(xi, lam, params, tilde=True)


@dataclass(frozen=True)
class IntertwinerMatrix:
    k: int
    xi: complex
    lam: WeightSequence
    phibar: np.ndarray
    phi: np.ndarray
    parity: int
    tilde: bool
    cond: float
    spec: SpaceSpec

    def duality_residuals(self) -> tuple[float, float]:
        eye = np.eye(self.k)
        return (float(np.max(np.abs(self.phibar @ self.phi - eye))),
                float(np.max(np.abs(self.phi @ self.phibar - eye))))

    def outgoing(self, kappa: WeightSequence) -> Univariate:
        """phi(xi)_lambda^kappa as a function; zero unless kappa is a window step."""
        i = self.lam.step_to(kappa)
        if i is None:
            return zero(self.spec.shift_sign)
        return linear_combination_of_basis(self.spec, self.phi[:, i - self.lam.k1])

    def coefficients(self, kappa: WeightSequence) -> np.ndarray:
        i = self.lam.step_to(kappa)
        if i is None:
            return np.zeros(self.k, dtype=complex)
        return self.phi[:, i - self.lam.k1].copy()


def outgoing_coeffs(xi: complex, lam: WeightSequence, params: ModularParams,
                    parity: int = 1, tilde: bool = False) -> IntertwinerMatrix:
    """Build phibar and its inverse (LU with partial pivoting)."""
    require_generic(xi, params.tau)
    pb = phibar_matrix(xi, lam, params, parity, tilde)
    cond = float(np.linalg.cond(pb))
    if not np.isfinite(cond) or cond > MAX_COND:
        raise SingularError(f"phibar has condition number {cond:.3g} (xi={complex(xi)!r})")
    phi = np.linalg.solve(pb, np.eye(lam.k, dtype=complex))
    return IntertwinerMatrix(lam.k, complex(xi), lam, pb, phi, parity, tilde, cond,
                             space_for(xi, lam, params, parity, tilde))


def outgoing_eval(xi: complex, lam: WeightSequence, i: int, z, params: ModularParams, parity: int = 1):
    mat = outgoing_coeffs(xi, lam, params, parity)
    return mat.outgoing(lam.step(i))(z)


def weyl_kac_rhs(xi: complex, lam: WeightSequence, params: ModularParams, literal: bool = False) -> complex:
    """Closed form of det(theta_value_matrix).

    (-1)^(k-1) (c eta(tau))^(-(k-1)(k-2)/2) theta_1(xi) prod_{i<j} theta_1(lambda_ij)
    with c = -sqrt(-1).  ``literal=True`` uses c = +sqrt(-1), which is wrong by
    the sign (-1)^((k-1)(k-2)/2).
    """
    k, tau = lam.k, params.tau
    c = 1j if literal else -1j
    expo = (k - 1) * (k - 2) // 2
    prod = complex(theta1(xi, tau))
    for a in lam.indices:
        for b in lam.indices:
            if a < b:
                prod *= complex(theta1(lam.diff(a, b), tau))
    return (-1) ** (k - 1) * (c * dedekind_eta(tau)) ** (-expo) * prod


def weyl_kac_det_residual(xi: complex, lam: WeightSequence, params: ModularParams,
                          literal: bool = False) -> float:
    det = complex(np.linalg.det(theta_value_matrix(xi, lam, params)))
    rhs = weyl_kac_rhs(xi, lam, params, literal)
    return abs(det - rhs) / max(abs(det), abs(rhs))


def vertex_irf_sides(lam: WeightSequence, kappa: WeightSequence, nu: WeightSequence,
                     xi: complex, f, params: ModularParams):
    """(LHS, RHS, scale) of the vertex-IRF correspondence for the path lam -> kappa -> nu."""
    i = lam.step_to(kappa)
    j = kappa.step_to(nu) if i is not None else None
    if i is None or j is None:
        return 0j, 0j, 0.0
    z1, z2 = lam[i], kappa[j]
    gap = abs((z2 - z1) - round((z2 - z1).real))
    if gap < EPS_DIAG:
        raise GenericityError(f"evaluation points ({z1}, {z2}) meet the diagonal set")
    lhs = complex(r_apply(RContext(params, xi), f, z1, z2))
    terms = []
    for m in lam.indices:
        kp = lam.step(m)
        w = boltzmann_weight(lam, kp, xi, nu, kappa, params)
        if w != 0:
            terms.append(w * incoming_apply2(lam, kp, nu, f))
    scale = max([abs(lhs)] + [abs(t) for t in terms])
    return lhs, sum(terms), scale


def vertex_irf_residual(lam: WeightSequence, i: int, j: int, xi: complex, f, params: ModularParams) -> float:
    kappa = lam.step(i)
    lhs, rhs, scale = vertex_irf_sides(lam, kappa, kappa.step(j), xi, f, params)
    return abs(lhs - rhs) / scale if scale > 0 else 0.0


def exchange_sides(xi1: complex, xi2: complex, lam: WeightSequence, i: int, j: int,
                   z1, z2, params: ModularParams, parity: int = 1):
    """Both sides of the exchange relation for outgoing vectors at points (z1, z2).

    LHS = R(xi12) (phi(xi1)_lam^kappa ⊗ phi(xi2)_kappa^nu),
    RHS = sum_kappa' phi(xi2)_lam^kappa'(z1) phi(xi1)_kappa'^nu(z2) W[kappa; lam, xi12, nu; kappa'].
    """
    kappa = lam.step(i)
    nu = kappa.step(j)
    x12 = xi1 - xi2
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    m1_lam = outgoing_coeffs(xi1, lam, params, parity)
    m2_kappa = outgoing_coeffs(xi2, kappa, params, parity)
    g = tensor(m1_lam.outgoing(kappa), m2_kappa.outgoing(nu))
    lhs = r_apply(RContext(params, x12), g, z1, z2)
    m2_lam = outgoing_coeffs(xi2, lam, params, parity)
    terms = []
    for m in lam.indices:
        kp = lam.step(m)
        w = boltzmann_weight(lam, kappa, x12, nu, kp, params)
        if w == 0:
            continue
        m1_kp = outgoing_coeffs(xi1, kp, params, parity)
        terms.append(m2_lam.outgoing(kp)(z1) * m1_kp.outgoing(nu)(z2) * w)
    rhs = sum(terms) if terms else np.zeros_like(lhs)
    scale = np.maximum.reduce([np.abs(lhs)] + [np.abs(t) for t in terms])
    return lhs, rhs, scale


def exchange_residual(xi1: complex, xi2: complex, lam: WeightSequence, i: int, j: int,
                      z1, z2, params: ModularParams, parity: int = 1) -> float:
    lhs, rhs, scale = exchange_sides(xi1, xi2, lam, i, j, z1, z2, params, parity)
    res = np.abs(lhs - rhs) / np.where(scale > 0, scale, 1.0)
    return float(np.max(res))
