import mpmath as mp
import numpy as np
import pytest

from elliptic_irf.errors import DerivativeRequired
from elliptic_irf.functions import Bivariate, fourier_mode, fourier_mode3, with_central_differences
from elliptic_irf.roperator import (EPS_DIAG, RContext, diagonal_value, r_apply, r_operator,
                                    subspace_mapping_residual, ybe_pointwise_residual)
from elliptic_irf.theta import ModularParams

import oracles

P = ModularParams()
XI = 0.31 + 0.12j
Z1 = 0.1 + 0.05j

# mpmath oracle, f = exp(2 pi i (z1 + 2 z2))
OFF_DIAGONAL = -4.8052257075280895 + 6.544740363777594j   # at (Z1, 0.45 - 0.1i)
DIAGONAL_LIMIT = -1.7274588259424561 - 1.8743062899818683j  # at (Z1, Z1 + 1e-30), 60 digits


def test_off_diagonal_matches_oracle():
    f = fourier_mode(1, 2)
    val = r_apply(RContext(P, XI), f, Z1, 0.45 - 0.1j)
    assert abs(val - OFF_DIAGONAL) < 1e-12


@pytest.mark.parametrize("m", [0, 1, -2])
def test_diagonal_matches_high_precision_limit(m):
    f = fourier_mode(1, 2)
    val = r_apply(RContext(P, XI), f, Z1, Z1 + m)
    assert abs(val - DIAGONAL_LIMIT) < 1e-12


def test_antiperiodic_diagonal_sign():
    ctx = RContext(P, XI)
    f = fourier_mode(0, 1, parity=-1)
    v0 = r_apply(ctx, f, Z1, Z1)
    v1 = r_apply(ctx, f, Z1, Z1 + 1)
    assert abs(v1 + v0) < 1e-12


@pytest.mark.parametrize("gap", [5e-5, 1e-7, 1e-10, 3e-13])
def test_near_diagonal_matches_oracle(gap):
    mp.mp.dps = 50
    ctx = RContext(P, XI)
    f = fourier_mode(1, -1)
    z2 = Z1 + gap * np.exp(0.7j)
    near = r_apply(ctx, f, Z1, z2)
    fm = lambda a, b: mp.exp(2j * mp.pi * (a - b))  # noqa: E731
    zz2 = mp.mpc(Z1) + mp.mpf(gap) * mp.exp(0.7j)
    ref = complex(oracles.r_apply(XI, P.mu, P.tau, fm, Z1, zz2))
    mp.mp.dps = 40
    assert abs(near - ref) < 1e-6


def test_both_branches_agree_at_threshold():
    ctx = RContext(P, XI)
    f = fourier_mode(2, 1)
    z2 = Z1 + EPS_DIAG * 1.0001
    far = r_apply(ctx, f, Z1, z2)
    near = r_apply(ctx, f, Z1, Z1 + EPS_DIAG * 0.9999)
    assert abs(far - near) < 1e-6


def test_derivative_required_on_diagonal():
    g = Bivariate(lambda a, b: np.exp(2j * np.pi * (a - b)))
    with pytest.raises(DerivativeRequired):
        r_apply(RContext(P, XI), g, Z1, Z1)
    # off the diagonal the value alone suffices
    r_apply(RContext(P, XI), g, Z1, Z1 + 0.3)


def test_central_difference_partials_on_diagonal():
    f = fourier_mode(1, 2)
    g = with_central_differences(f.value)
    exact = r_apply(RContext(P, XI), f, Z1, Z1)
    approx = r_apply(RContext(P, XI), g, Z1, Z1)
    assert abs(exact - approx) < 1e-6
    assert abs(diagonal_value(RContext(P, XI), f, Z1) - exact) < 1e-15


def test_vectorized_mixed_branches():
    ctx = RContext(P, XI)
    f = fourier_mode(1, 0)
    z1 = np.array([Z1, Z1, Z1])
    z2 = np.array([Z1, Z1 + 1e-6, Z1 + 0.3])
    vec = r_apply(ctx, f, z1, z2)
    for a, b, v in zip(z1, z2, vec):
        assert abs(r_apply(ctx, f, a, b) - v) < 1e-15


def test_unit_at_zero_spectral_parameter():
    # R(0) f = theta_1'(0) f
    f = fourier_mode(1, 2)
    val = r_apply(RContext(P, 0.0), f, 0.2, 0.55 + 0.1j)
    assert abs(val - P.theta1_prime0 * f(0.2, 0.55 + 0.1j)) < 1e-12


@pytest.mark.parametrize("parity", [1, -1])
def test_pointwise_yang_baxter(parity):
    pts = np.array([[0.11 + 0.02j, 0.47 - 0.1j, -0.23 + 0.15j],
                    [0.3, 0.71 + 0.05j, 0.05 - 0.12j]])
    for modes in [(0, 0, 0), (1, -1, 2), (2, 0, 1)]:
        f = fourier_mode3(*modes, parity=parity)
        assert ybe_pointwise_residual(0.3 + 0.1j, -0.17 + 0.05j, 0.05 - 0.2j, f, pts, P) < 1e-11


def test_ybe_rejects_diagonal_points():
    f = fourier_mode3(1, 0, 0)
    with pytest.raises(ValueError):
        ybe_pointwise_residual(0.1, 0.2, 0.3, f, [[0.1, 0.1, 0.5]], P)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("parity", [1, -1])
def test_subspace_mapping(n, parity):
    assert subspace_mapping_residual(n, 0.27 + 0.06j, -0.14 + 0.11j, parity, P) < 1e-10


def test_subspace_negative_control():
    assert subspace_mapping_residual(2, 0.27 + 0.06j, -0.14 + 0.11j, 1, P, swapped=False) > 1e-2


def test_r_operator_object():
    f = fourier_mode(1, 1)
    g = r_operator(RContext(P, XI), f)
    assert abs(g(0.1, 0.6) - r_apply(RContext(P, XI), f, 0.1, 0.6)) == 0
