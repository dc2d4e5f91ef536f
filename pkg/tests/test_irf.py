import itertools

import mpmath as mp
import pytest

from elliptic_irf.irf import (FaceConfig, WeightSequence, boltzmann_weight, face_weight,
                              star_triangle_residual, star_triangle_sides, validate_sequence)
from elliptic_irf.theta import ModularParams

import oracles

P = ModularParams()
LAM = WeightSequence.default(P, 0, 3)
XI = 0.23 - 0.14j


def _mp_weight(case, lam, i, j, xi):
    th = lambda u: oracles.theta1(u, P.tau)  # noqa: E731
    tp = oracles.theta1_prime(0, P.tau)
    mu = mp.mpf(P.mu.real)
    if case == 1:
        return complex(th(mu - xi) * tp / th(mu))
    lji = lam.diff(j, i)
    if case == 2:
        return complex(th(lji - xi) * tp / th(lji))
    return complex(th(xi) * th(lji - mu) * tp / (th(lji) * th(-mu)))


def test_sequence_steps_and_equality():
    a = LAM.steps(1, 2)
    b = LAM.steps(2, 1)
    assert a == b
    assert LAM.step_to(LAM.step(2)) == 2
    assert LAM.step_to(a) is None
    assert LAM.step(1).step_to(LAM, sign=-1) == 1
    assert abs(LAM.step(0)[0] - (LAM[0] + P.mu)) < 1e-15
    assert LAM.k == 4 and list(LAM.indices) == [0, 1, 2, 3]
    with pytest.raises(IndexError):
        LAM.step(7)


def test_validation():
    assert validate_sequence(LAM, P) == []
    bad = WeightSequence.from_values([0.0, 1.0 + P.mu], P.mu)
    v = validate_sequence(bad, P)
    assert v and v[0].kind == "lattice" and (v[0].m, v[0].n) == (1, 1)
    strip = WeightSequence.from_values([0.0, 0.6j], P.mu)
    assert any(x.kind == "strip" for x in validate_sequence(strip, P))


@pytest.mark.parametrize("i,j", [(1, 1), (0, 2), (3, 1)])
def test_weights_against_oracle(i, j):
    kappa = LAM.step(i)
    nu = kappa.step(j)
    if i == j:
        assert abs(boltzmann_weight(LAM, kappa, XI, nu, kappa, P) - _mp_weight(1, LAM, i, j, XI)) < 1e-12
        return
    w2 = boltzmann_weight(LAM, kappa, XI, nu, kappa, P)
    w3 = boltzmann_weight(LAM, LAM.step(j), XI, nu, kappa, P)
    assert abs(w2 - _mp_weight(2, LAM, i, j, XI)) < 1e-12
    assert abs(w3 - _mp_weight(3, LAM, i, j, XI)) < 1e-12


def test_non_admissible_faces_vanish():
    kappa = LAM.step(0)
    nu = kappa.step(1)
    assert boltzmann_weight(LAM, LAM.step(2), XI, nu, kappa, P) == 0
    assert boltzmann_weight(LAM, kappa, XI, LAM.steps(2, 3), kappa, P) == 0
    assert face_weight(FaceConfig(LAM, 0, 1, 1), XI, P) == boltzmann_weight(
        LAM, LAM.step(1), XI, nu, kappa, P)


def test_weight_at_zero_spectral_parameter():
    # W reduces to theta_1'(0) times a Kronecker delta
    kappa = LAM.step(0)
    nu = kappa.step(2)
    assert abs(boltzmann_weight(LAM, kappa, 0.0, nu, kappa, P) - P.theta1_prime0) < 1e-13
    assert abs(boltzmann_weight(LAM, LAM.step(2), 0.0, nu, kappa, P)) < 1e-15


def test_star_triangle_full_scan_small_window():
    lam = WeightSequence.default(P, 0, 2)
    xis = (0.3 + 0.1j, -0.17 + 0.05j, 0.05 - 0.2j)
    worst = max(star_triangle_residual(lam, i, j, l, a, b, *xis, P)
                for i, j, l in itertools.product(lam.indices, repeat=3)
                for a in range(3) for b in range(3))
    assert worst < 1e-12


def test_star_triangle_sides_nontrivial():
    lhs, rhs, scale = star_triangle_sides(LAM, 0, 1, 2, 1, 0, 0.3, -0.2 + 0.1j, 0.1j, P)
    assert scale > 1e-3 and abs(lhs - rhs) < 1e-12 * scale


def test_rational_mu_still_generic():
    p = ModularParams(mu=0.5, mu_real=True)
    lam = WeightSequence.default(p, 0, 2)
    assert validate_sequence(lam, p) == []
    assert star_triangle_residual(lam, 0, 1, 2, 0, 1, 0.3, 0.1, -0.2j, p) < 1e-12
