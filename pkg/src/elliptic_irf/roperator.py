"""Pointwise action of the elliptic R-operator.

For a function f of two variables,

    (R(xi) f)(z1, z2) = th(xi) th(z21 - mu) th'(0) / (th(-mu) th(z21)) f(z2, z1)
                        + th(z21 - xi) th'(0) / th(z21) f(z1, z2),

z21 = z2 - z1, th = theta_1.  The poles at z21 in Z are removable; there the
value is given by the limit

    F(z, z + m) = s^m [ (th(xi) th'(-mu) + th'(-xi) th(-mu)) / th(-mu) f(z, z)
                        + th(xi) (d1 f - d2 f)(z, z) ]

with s = +1 for periodic and s = -1 for antiperiodic f.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DerivativeRequired
from .functions import Bivariate, tensor
from .spaces import SpaceSpec, basis_function, expand_in_product_basis
from .theta import ModularParams, theta1

#: Distance to the diagonal set below which the regularized branch is used.
EPS_DIAG = 1e-4

# Below this gap the limit formula itself is accurate to ~1e-12.
_ON_DIAGONAL = 1e-12

# Near, but off, the diagonal: mean of the off-diagonal formula over a circle
# in z2 (mean-value property of the holomorphic extension).
_CONTOUR_RADIUS = 2e-3
_CONTOUR_NODES = 16


@dataclass(frozen=True)
class RContext:
    params: ModularParams
    xi: complex

    def __post_init__(self):
        object.__setattr__(self, "xi", complex(self.xi))


def _off_diagonal(ctx: RContext, f: Callable, z1, z2):
    p = ctx.params
    th = lambda z: theta1(z, p.tau)  # noqa: E731
    d = z2 - z1
    tp0 = p.theta1_prime0
    first = th(ctx.xi) * th(d - p.mu) * tp0 / (th(-p.mu) * th(d))
    second = th(d - ctx.xi) * tp0 / th(d)
    return first * f(z2, z1) + second * f(z1, z2)


def diagonal_value(ctx: RContext, f: Bivariate, z, m=0):
    """Regularized value of R(xi) f at (z, z + m), m integer."""
    if not f.has_partials:
        raise DerivativeRequired("R(xi) f on the diagonal set needs the partials of f")
    p = ctx.params
    tau, mu, xi = p.tau, p.mu, ctx.xi
    z = np.asarray(z, dtype=complex)
    coef = (theta1(xi, tau) * theta1(-mu, tau, deriv=1)
            + theta1(-xi, tau, deriv=1) * theta1(-mu, tau)) / theta1(-mu, tau)
    val = coef * f(z, z) + theta1(xi, tau) * (f.d1(z, z) - f.d2(z, z))
    sign = np.where(np.asarray(m) % 2 == 0, 1.0, float(f.parity))
    return sign * val


def r_apply(ctx: RContext, f, z1, z2):
    """(R(xi) f)(z1, z2) for scalar or array arguments.

    ``f`` is a :class:`Bivariate` or plain callable; partials are only
    consulted when a point lies on the diagonal set (z21 integer).
    """
    z1, z2 = np.broadcast_arrays(np.asarray(z1, dtype=complex), np.asarray(z2, dtype=complex))
    scalar = z1.ndim == 0
    z1 = np.atleast_1d(z1)
    z2 = np.atleast_1d(z2)
    d = z2 - z1
    m = np.round(d.real)
    gap = np.abs(d - m)
    out = np.empty(z1.shape, dtype=complex)

    far = gap >= EPS_DIAG
    if far.any():
        out[far] = _off_diagonal(ctx, f, z1[far], z2[far])
    on = gap < _ON_DIAGONAL
    if on.any():
        fb = f if isinstance(f, Bivariate) else Bivariate(f)
        out[on] = diagonal_value(ctx, fb, z1[on], m[on])
    near = ~far & ~on
    if near.any():
        a, b = z1[near], z2[near]
        nodes = _CONTOUR_RADIUS * np.exp(2j * np.pi * np.arange(_CONTOUR_NODES) / _CONTOUR_NODES)
        ring = _off_diagonal(ctx, f, a[:, None], b[:, None] + nodes[None, :])
        out[near] = ring.mean(axis=1)
    return out[0] if scalar else out


def r_operator(ctx: RContext, f) -> Bivariate:
    """R(xi) f as a (value-only) function object, for nested evaluation."""
    parity = f.parity if isinstance(f, Bivariate) else 1
    return Bivariate(lambda z1, z2: r_apply(ctx, f, z1, z2), parity=parity)


def _on_slots(ctx: RContext, g: Callable, i: int, j: int) -> Callable:
    """Apply R(xi) to slots (i, j) of a trivariate function."""
    def out(*zs):
        def pair(a, b):
            args = list(zs)
            args[i], args[j] = a, b
            return g(*args)
        return r_apply(ctx, pair, zs[i], zs[j])
    return out


def _min_pair_gap(points: np.ndarray) -> float:
    gaps = []
    for i, j in ((0, 1), (0, 2), (1, 2)):
        d = points[:, j] - points[:, i]
        gaps.append(np.abs(d - np.round(d.real)))
    return float(np.min(gaps))


def ybe_sides(xi1, xi2, xi3, f: Callable, points, params: ModularParams):
    """Both triple products of the Yang-Baxter equation, evaluated pointwise.

    LHS = (1 ⊗ R(xi12)) (R(xi13) ⊗ 1) (1 ⊗ R(xi23)) f,
    RHS = (R(xi23) ⊗ 1) (1 ⊗ R(xi13)) (R(xi12) ⊗ 1) f.
    """
    pts = np.asarray(points, dtype=complex).reshape(-1, 3)
    if _min_pair_gap(pts) < EPS_DIAG:
        raise ValueError("YBE sample points must avoid all pairwise diagonals")
    c12 = RContext(params, xi1 - xi2)
    c13 = RContext(params, xi1 - xi3)
    c23 = RContext(params, xi2 - xi3)
    lhs = _on_slots(c12, _on_slots(c13, _on_slots(c23, f, 1, 2), 0, 1), 1, 2)
    rhs = _on_slots(c23, _on_slots(c13, _on_slots(c12, f, 0, 1), 1, 2), 0, 1)
    z1, z2, z3 = pts.T
    return lhs(z1, z2, z3), rhs(z1, z2, z3)


def ybe_pointwise_residual(xi1, xi2, xi3, f: Callable, points: Sequence, params: ModularParams) -> float:
    """max |LHS - RHS| / max(|LHS|, |RHS|, 1) over the sample points."""
    lhs, rhs = ybe_sides(xi1, xi2, xi3, f, points, params)
    scale = np.maximum(np.maximum(np.abs(lhs), np.abs(rhs)), 1.0)
    return float(np.max(np.abs(lhs - rhs) / scale))


def subspace_mapping_residual(n: int, xi1: complex, xi2: complex, parity: int,
                              params: ModularParams, swapped: bool = True) -> float:
    """Membership residual of R(xi12) (V_n(xi1) ⊗ V_n(xi2+mu)) in V_n(xi2) ⊗ V_n(xi1+mu).

    With ``swapped=False`` the target is the source space itself, which the
    image does not lie in for xi1 != xi2 (a negative control).
    """
    tau, mu = params.tau, params.mu
    src1 = SpaceSpec(n, xi1, tau, parity)
    src2 = SpaceSpec(n, xi2 + mu, tau, parity)
    if swapped:
        dst1, dst2 = SpaceSpec(n, xi2, tau, parity), SpaceSpec(n, xi1 + mu, tau, parity)
    else:
        dst1, dst2 = src1, src2
    ctx = RContext(params, xi1 - xi2)
    worst = 0.0
    for a in range(n):
        for b in range(n):
            f = tensor(basis_function(src1, a), basis_function(src2, b))
            exp = expand_in_product_basis(lambda z1, z2: r_apply(ctx, f, z1, z2), dst1, dst2)
            worst = max(worst, exp.residual)
    return worst
