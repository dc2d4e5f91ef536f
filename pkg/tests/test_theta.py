import cmath
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from elliptic_irf.errors import ParameterError
from elliptic_irf.theta import (ModularParams, ThetaCharacteristics, dedekind_eta, lattice_distance,
                                theta1, theta1_deriv0, theta1_product, theta_char,
                                three_term_residual)

import oracles

TAU = 0.2 + 1.0j

# values frozen from the mpmath oracle (40 digits)
THETA1_03_I = -0.7371971637186816
ETA_I = 0.7682254223260566
THETA00_02_11I = 1.019505748291015
THETA_SIXTH = -0.40860457197209565 + 0.8673146401559608j
THETA_DERIV_QUARTER = 0.0009281780673578868 + 1.1476152014679617j
THETA1_PRIME0 = -2.826963276689074 - 0.4322929473771388j


def test_theta1_frozen():
    assert abs(theta1(0.3, 1j) - THETA1_03_I) < 1e-14


def test_eta_frozen():
    assert abs(dedekind_eta(1j) - ETA_I) < 1e-15


def test_theta00_frozen():
    ch = ThetaCharacteristics(0, 0)
    assert abs(theta_char(ch, 0.2, 1.1j) - THETA00_02_11I) < 1e-14


def test_rational_characteristics_frozen():
    ch = ThetaCharacteristics(Fraction(1, 6), Fraction(3, 2))
    assert abs(theta_char(ch, 0.37 - 0.21j, 3 * TAU) - THETA_SIXTH) < 1e-14


def test_derivative_frozen():
    ch = ThetaCharacteristics(Fraction(-1, 4), 2)
    val = theta_char(ch, 0.1 + 0.3j, 4 * TAU, deriv=1)
    assert abs(val - THETA_DERIV_QUARTER) < 1e-13


def test_theta1_prime0_is_minus_two_pi_eta_cubed():
    assert abs(theta1_deriv0(TAU) - THETA1_PRIME0) < 1e-13
    assert abs(theta1_deriv0(TAU) + 2 * np.pi * dedekind_eta(TAU) ** 3) < 1e-13


def test_second_derivative_against_finite_difference():
    z, h = 0.21 + 0.13j, 1e-4
    d1p = theta1(z + h, TAU, deriv=1)
    d1m = theta1(z - h, TAU, deriv=1)
    assert abs(theta1(z, TAU, deriv=2) - (d1p - d1m) / (2 * h)) < 1e-6


def test_vector_and_scalar_paths_agree():
    zs = np.array([0.1, -0.4 + 0.3j, 1.7 - 0.45j, 0.0])
    vec = theta1(zs, TAU)
    for z, v in zip(zs, vec):
        assert abs(theta1(complex(z), TAU) - v) <= 1e-13 * max(1.0, abs(v))


def test_large_imaginary_argument_matches_oracle():
    z = -1.3 + 1.7j
    ref = complex(oracles.theta1(z, TAU))
    assert abs(theta1(z, TAU) - ref) / abs(ref) < 1e-13


def test_range_reduction_phase():
    ch = ThetaCharacteristics(Fraction(1, 3), Fraction(1, 2))
    z = 0.17 + 0.08j
    for n in (-3, 1, 5):
        lhs = theta_char(ch, z + n, TAU)
        rhs = cmath.exp(2j * cmath.pi * ch.a * n) * theta_char(ch, z, TAU)
        assert abs(lhs - rhs) < 1e-13


def test_product_form_agrees():
    zs = np.array([0.3, 0.1 + 0.4j, -0.7 - 0.3j])
    assert np.max(np.abs(theta1_product(zs, TAU) - theta1(zs, TAU))) < 1e-14


def test_zeros_on_lattice():
    for m in range(-2, 3):
        for n in (-1, 0, 1):
            assert abs(theta1(m + n * TAU, TAU)) < 1e-13


@given(st.floats(-1, 1), st.floats(-0.45, 0.45))
@settings(max_examples=60, deadline=None)
def test_quasi_periodicity_and_oddness(x, y):
    z = complex(x, y)
    assume(lattice_distance(z, TAU) > 1e-3)
    t = theta1(z, TAU)
    scale = max(abs(t), 1e-12)
    assert abs(theta1(z + 1, TAU) + t) / scale < 1e-11
    mult = -cmath.exp(-2j * cmath.pi * z - 1j * cmath.pi * TAU)
    assert abs(theta1(z + TAU, TAU) - mult * t) / max(abs(mult * t), 1e-12) < 1e-11
    assert abs(theta1(-z, TAU) + t) / scale < 1e-11


@given(st.lists(st.complex_numbers(max_magnitude=0.4), min_size=4, max_size=4))
@settings(max_examples=40, deadline=None)
def test_three_term_identity(pts):
    # all twelve theta arguments away from zeros, else the relative residual is noise
    x, y, z, w = pts
    for a, b in ((x, y), (z, w), (x, z), (w, y), (x, w), (y, z)):
        assume(lattice_distance(a + b, TAU) > 1e-2 and lattice_distance(a - b, TAU) > 1e-2)
    assert three_term_residual(*pts, TAU) < 1e-10


def test_modular_params_validation():
    with pytest.raises(ParameterError):
        ModularParams(tau=0.3 - 1j)
    with pytest.raises(ParameterError):
        ModularParams(mu=1.0)
    with pytest.raises(ParameterError):
        ModularParams(mu=0.5 + 0.1j, mu_real=True)
    assert ModularParams(mu=0.5, mu_real=True).mu == 0.5


def test_lattice_distance():
    assert lattice_distance(2 + TAU, TAU) < 1e-15
    assert abs(lattice_distance(0.5, TAU) - 0.5) < 1e-15
