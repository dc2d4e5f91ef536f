"""Rank-one L-operators and their RLL relations.

Function-level operators act as (L(xi)_lam^kappa f)(z) =
phi(xi)_lam^kappa(z) * f(lam_i) for kappa = lam + mu eps_i.

Belavin-side objects are k x k matrices on coefficient vectors.  With
s = xi + |kappa|_k - k mu,

    ~L(xi)_lam^kappa = T_k(s)^-1  L(xi - k mu)_kappa^lam  T_k(s)   on ~V_k,

which is the rank-one map f -> u * f(kappa_i - s/k) where u is the i-th
column of the outgoing coefficient matrix (built from the ~V_k basis).  The
transpose ~L* acts on dual coordinates and is the plain matrix transpose.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .belavin import rk_star_matrix, tilde_space
from .functions import Univariate, tensor
from .intertwiners import (IntertwinerMatrix, outgoing_coeffs, require_generic)
from .irf import WeightSequence, boltzmann_weight
from .roperator import RContext, r_apply
from .spaces import basis_eval, basis_function, expand_in_basis, translate
from .theta import ModularParams

# --------------------------------------------------------------------------
# Function-level L-operators


@dataclass(frozen=True)
class LOperatorEntry:
    """L(xi)_lam^kappa; ``index`` is None for a non-admissible pair."""

    lam: WeightSequence
    kappa: WeightSequence
    xi: complex
    index: int | None
    mat: IntertwinerMatrix

    @property
    def admissible(self) -> bool:
        return self.index is not None

    def outgoing(self) -> Univariate:
        return self.mat.outgoing(self.kappa)


def l_entry(xi: complex, lam: WeightSequence, kappa: WeightSequence, params: ModularParams,
            parity: int = 1, tilde: bool = False) -> LOperatorEntry:
    mat = outgoing_coeffs(xi, lam, params, parity, tilde)
    return LOperatorEntry(lam, kappa, complex(xi), lam.step_to(kappa), mat)


def l_apply(entry: LOperatorEntry, f, z):
    """phi(z) * f(lam_i), or 0 for a non-admissible entry."""
    z = np.asarray(z, dtype=complex)
    if not entry.admissible:
        return np.zeros(z.shape, dtype=complex)
    return entry.outgoing()(z) * f(entry.lam[entry.index])


def _pair_apply(e1: LOperatorEntry, e2: LOperatorEntry, g, z1, z2):
    """(L1 ⊗ L2) g at (z1, z2): phi1(z1) phi2(z2) g(lam_i, kappa_j)."""
    if not (e1.admissible and e2.admissible):
        return np.zeros(np.broadcast(z1, z2).shape, dtype=complex)
    c = complex(g(e1.lam[e1.index], e2.lam[e2.index]))
    return c * e1.outgoing()(z1) * e2.outgoing()(z2)


def rll_sides(xi1: complex, xi2: complex, lam: WeightSequence, nu: WeightSequence, f,
              points, params: ModularParams, parity: int = 1, tilde: bool = False,
              kappas: Sequence[WeightSequence] | None = None):
    """Both sides of sum_kappa R(xi12) L(xi1)_lam^kappa ⊗ L(xi2)_kappa^nu
    = sum_kappa L(xi2)_lam^kappa ⊗ L(xi1)_kappa^nu R(xi12), applied to f.

    ``kappas`` defaults to the one-step neighbours of lam; any extra
    (non-admissible) entries contribute exact zeros.
    """
    pts = np.asarray(points, dtype=complex).reshape(-1, 2)
    z1, z2 = pts[:, 0], pts[:, 1]
    ctx = RContext(params, xi1 - xi2)
    if kappas is None:
        kappas = [lam.step(m) for m in lam.indices]
    lhs = np.zeros(len(pts), dtype=complex)
    rhs = np.zeros(len(pts), dtype=complex)
    scale = np.zeros(len(pts))
    rf = lambda a, b: r_apply(ctx, f, a, b)  # noqa: E731
    for kappa in kappas:
        a1 = l_entry(xi1, lam, kappa, params, parity, tilde)
        b2 = l_entry(xi2, kappa, nu, params, parity, tilde) if a1.admissible else None
        if a1.admissible and b2.admissible:
            c = complex(f(lam[a1.index], kappa[b2.index]))
            g = tensor(a1.outgoing(), b2.outgoing())
            t = c * r_apply(ctx, g, z1, z2)
            lhs += t
            scale = np.maximum(scale, np.abs(t))
        a2 = l_entry(xi2, lam, kappa, params, parity, tilde)
        b1 = l_entry(xi1, kappa, nu, params, parity, tilde) if a2.admissible else None
        if a2.admissible and b1.admissible:
            t = _pair_apply(a2, b1, rf, z1, z2)
            rhs += t
            scale = np.maximum(scale, np.abs(t))
    return lhs, rhs, scale


def _relative(lhs, rhs, scale) -> float:
    scale = np.maximum(np.maximum(scale, np.abs(lhs)), np.abs(rhs))
    err = np.abs(lhs - rhs)
    return float(np.max(np.where(scale > 0, err / np.where(scale > 0, scale, 1.0), 0.0)))


def rll_pointwise_residual(xi1: complex, xi2: complex, lam: WeightSequence, i: int, j: int, f,
                           points, params: ModularParams, parity: int = 1, tilde: bool = False) -> float:
    """Relative RLL residual for nu = lam + mu (eps_i + eps_j)."""
    return _relative(*rll_sides(xi1, xi2, lam, lam.steps(i, j), f, points, params, parity, tilde))


def weights_up_to_level(root: WeightSequence, level: int) -> list:
    """All sequences root + mu * offsets with offsets >= 0 summing to at most ``level``."""
    out = []
    for lev in range(level + 1):
        for combo in itertools.combinations_with_replacement(root.indices, lev):
            out.append(root.steps(*combo))
    return out


def rll_assembled_residual(xi1: complex, xi2: complex, root: WeightSequence, f, points,
                           params: ModularParams, parity: int = 1) -> float:
    """Assembled form: every (lam, nu) block of the operator identity on the
    finite weight set up to level two, with kappa summed over the whole set.

    Blocks whose path is not admissible must vanish on both sides.
    """
    ws = weights_up_to_level(root, 2)
    worst = 0.0
    for lam in ws:
        for nu in ws:
            lhs, rhs, scale = rll_sides(xi1, xi2, lam, nu, f, points, params, parity, kappas=ws)
            worst = max(worst, _relative(lhs, rhs, scale))
    return worst


# --------------------------------------------------------------------------
# Belavin side


def require_belavin_generic(xi: complex, kappa: WeightSequence, params: ModularParams) -> None:
    k, mu, tau = kappa.k, params.mu, params.tau
    for label, val in (("xi", xi), ("xi - k mu", xi - k * mu),
                       ("xi + |kappa|_k - k mu", xi + kappa.weight_sum - k * mu)):
        require_generic(val, tau, label)


def belavin_outgoing(xi: complex, lam: WeightSequence, kappa: WeightSequence,
                     params: ModularParams) -> np.ndarray:
    """Dual-basis coefficients of phi(xi)_lam^kappa (downward step kappa = lam - mu eps_i)."""
    i = lam.step_to(kappa, sign=-1)
    if i is None:
        return np.zeros(lam.k, dtype=complex)
    k = lam.k
    spec = tilde_space(k, params)
    # e_j(z) = theta[..](-k z, k tau), so the argument xi + |lam| - k lam_i
    # corresponds to z = lam_i - (xi + |lam|)/k
    z = lam[i] - (xi + lam.weight_sum) / k
    return np.array([basis_eval(spec, j, z) for j in range(k)], dtype=complex)


def belavin_outgoing_composed(xi: complex, lam: WeightSequence, kappa: WeightSequence,
                              params: ModularParams) -> np.ndarray:
    """Same vector via the evaluation functional composed with T_k(xi + |lam| - k mu)."""
    k = lam.k
    spec = tilde_space(k, params)
    shift = xi + lam.weight_sum - k * params.mu
    out = np.zeros(k, dtype=complex)
    i = kappa.step_to(lam)
    if i is None:
        return out
    for j in range(k):
        out[j] = translate(k, shift, basis_function(spec, j))(kappa[i])
    return out


def w_tilde(kappa: WeightSequence, lam: WeightSequence, xi: complex, nu: WeightSequence,
            kappa_p: WeightSequence, params: ModularParams) -> complex:
    """~W[kappa; lam, xi, nu; kappa'] := W[kappa'; nu, xi, lam; kappa]."""
    return boltzmann_weight(nu, kappa_p, xi, lam, kappa, params)


def belavin_vertex_irf_sides(xi1: complex, xi2: complex, lam: WeightSequence, i: int, j: int,
                             params: ModularParams, star_matrix: np.ndarray | None = None):
    """R_k(xi12)* phi(xi1)_lam^kappa ⊗ phi(xi2)_kappa^nu versus the ~W-weighted sum;
    kappa = lam - mu eps_i, nu = kappa - mu eps_j."""
    kappa = lam.step(i, -1)
    nu = kappa.step(j, -1)
    x12 = xi1 - xi2
    s = star_matrix if star_matrix is not None else rk_star_matrix(lam.k, x12, params)
    lhs = s @ np.kron(belavin_outgoing(xi1, lam, kappa, params), belavin_outgoing(xi2, kappa, nu, params))
    rhs = np.zeros_like(lhs)
    scale = float(np.max(np.abs(lhs)))
    for m in lam.indices:
        kp = lam.step(m, -1)
        w = w_tilde(kappa, lam, x12, nu, kp, params)
        if w == 0:
            continue
        t = np.kron(belavin_outgoing(xi2, lam, kp, params), belavin_outgoing(xi1, kp, nu, params)) * w
        rhs += t
        scale = max(scale, float(np.max(np.abs(t))))
    return lhs, rhs, scale


def belavin_vertex_irf_residual(xi1: complex, xi2: complex, lam: WeightSequence, i: int, j: int,
                                params: ModularParams, star_matrix: np.ndarray | None = None) -> float:
    lhs, rhs, scale = belavin_vertex_irf_sides(xi1, xi2, lam, i, j, params, star_matrix)
    return float(np.max(np.abs(lhs - rhs))) / scale if scale > 0 else 0.0


def _l_tilde_pointwise(xi: complex, lam: WeightSequence, kappa: WeightSequence,
                       params: ModularParams) -> Callable:
    """f -> (~L(xi)_lam^kappa f)(z), composed literally from T_k and L."""
    k = kappa.k
    s = xi + kappa.weight_sum - k * params.mu
    parity = (-1) ** k
    entry = l_entry(xi - k * params.mu, kappa, lam, params, parity, tilde=True)

    def apply(f: Univariate):
        tf = translate(k, s, f)
        return lambda z: l_apply(entry, tf, np.asarray(z, dtype=complex) + s / k)
    return apply


def belavin_l_tilde_matrix(xi: complex, lam: WeightSequence, kappa: WeightSequence,
                           params: ModularParams) -> np.ndarray:
    """Matrix of ~L(xi)_lam^kappa on ~V_k by sampling and expansion (column b = image of e_b)."""
    k = lam.k
    if kappa.step_to(lam) is None:
        return np.zeros((k, k), dtype=complex)
    require_belavin_generic(xi, kappa, params)
    spec = tilde_space(k, params)
    op = _l_tilde_pointwise(xi, lam, kappa, params)
    cols = [expand_in_basis(op(basis_function(spec, b)), spec).coeffs for b in range(k)]
    return np.stack(cols, axis=1)


def belavin_l_matrix(xi: complex, lam: WeightSequence, kappa: WeightSequence,
                     params: ModularParams) -> np.ndarray:
    """~L*(xi)_lam^kappa on dual coordinates: the transpose of the ~L matrix."""
    return belavin_l_tilde_matrix(xi, lam, kappa, params).T


def belavin_l_matrix_rank_one(xi: complex, lam: WeightSequence, kappa: WeightSequence,
                              params: ModularParams) -> np.ndarray:
    """Closed rank-one form (u w^T)^T with u the outgoing column, w_b = e_b(kappa_i - s/k)."""
    k = lam.k
    i = kappa.step_to(lam)
    if i is None:
        return np.zeros((k, k), dtype=complex)
    require_belavin_generic(xi, kappa, params)
    s = xi + kappa.weight_sum - k * params.mu
    mat = outgoing_coeffs(xi - k * params.mu, kappa, params, (-1) ** k, tilde=True)
    u = mat.phi[:, i - kappa.k1]
    spec = tilde_space(k, params)
    w = np.array([basis_eval(spec, b, kappa[i] - s / k) for b in range(k)])
    return np.outer(u, w).T


def _l_blocks(xi: complex, lams, kappas, params, builder):
    return {(a, b): builder(xi, lams[a], kappas[b], params)
            for a in range(len(lams)) for b in range(len(kappas))}


def belavin_rll_pair_sides(xi1: complex, xi2: complex, lam: WeightSequence, nu: WeightSequence,
                           params: ModularParams, star_matrix: np.ndarray | None = None,
                           builder=belavin_l_matrix):
    """S sum_kappa L*(xi1)_lam^kappa ⊗ L*(xi2)_kappa^nu and
    sum_kappa L*(xi2)_lam^kappa ⊗ L*(xi1)_kappa^nu S (kappa = nu + one step)."""
    k = lam.k
    s = star_matrix if star_matrix is not None else rk_star_matrix(k, xi1 - xi2, params)
    lhs = np.zeros((k * k, k * k), dtype=complex)
    rhs = np.zeros_like(lhs)
    for m in nu.indices:
        kappa = nu.step(m)
        lhs += np.kron(builder(xi1, lam, kappa, params), builder(xi2, kappa, nu, params))
        rhs += np.kron(builder(xi2, lam, kappa, params), builder(xi1, kappa, nu, params))
    return s @ lhs, rhs @ s


def belavin_rll_residual(xi1: complex, xi2: complex, lam: WeightSequence, i: int, j: int,
                         params: ModularParams, star_matrix: np.ndarray | None = None) -> float:
    """Per-pair residual for lam = nu + mu (eps_i + eps_j), nu the given base ``lam`` argument.

    Here ``lam`` names the lower weight (the input index) and the output
    weight is lam + mu(eps_i + eps_j).
    """
    nu = lam
    top = nu.steps(i, j)
    lhs, rhs = belavin_rll_pair_sides(xi1, xi2, top, nu, params, star_matrix)
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(lhs - rhs))) / scale if scale > 0 else 0.0


def assemble_l_operator(xi: complex, weights: list, params: ModularParams,
                        builder=belavin_l_matrix) -> np.ndarray:
    """~L*(xi): ~V* ⊗ W -> W ⊗ ~V* on a finite weight set, as a matrix.

    Input index a * n + c (e^a ⊗ delta^{w_c}), output index r * k + b
    (delta^{w_r} ⊗ e^b); block (r, c) is ~L*(xi)_{w_r}^{w_c}.
    """
    n = len(weights)
    k = weights[0].k
    big = np.zeros((n * k, k * n), dtype=complex)
    for r, lam in enumerate(weights):
        for c, kappa in enumerate(weights):
            if kappa.step_to(lam) is None:
                continue
            blk = builder(xi, lam, kappa, params)
            for b in range(k):
                for a in range(k):
                    big[r * k + b, a * n + c] = blk[b, a]
    return big


def belavin_rll_assembled_residual(xi1: complex, xi2: complex, root: WeightSequence,
                                   params: ModularParams, builder=belavin_l_matrix) -> float:
    """(1⊗S)(L1⊗1)(1⊗L2) - (L2⊗1)(1⊗L1)(S⊗1) on ~V*⊗~V*⊗W, with W cut at level two
    and inputs restricted to the level-zero weight (so no path leaves the cut)."""
    k = root.k
    ws = weights_up_to_level(root, 2)
    n = len(ws)
    s = rk_star_matrix(k, xi1 - xi2, params)
    l1 = assemble_l_operator(xi1, ws, params, builder)
    l2 = assemble_l_operator(xi2, ws, params, builder)
    ik, iw = np.eye(k), np.eye(n)
    lhs = np.kron(iw, s) @ np.kron(l1, ik) @ np.kron(ik, l2)
    rhs = np.kron(l2, ik) @ np.kron(ik, l1) @ np.kron(s, iw)
    # columns e^a ⊗ e^b ⊗ delta^root
    c0 = ws.index(root)
    cols = [(a * k + b) * n + c0 for a in range(k) for b in range(k)]
    lhs, rhs = lhs[:, cols], rhs[:, cols]
    scale = max(float(np.max(np.abs(lhs))), float(np.max(np.abs(rhs))))
    return float(np.max(np.abs(lhs - rhs))) / scale if scale > 0 else 0.0
