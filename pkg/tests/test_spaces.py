import numpy as np
import pytest

from elliptic_irf.errors import ConditioningError
from elliptic_irf.functions import constant, fourier_mode, linear_combination, tensor, with_central_differences
from elliptic_irf.spaces import (SpaceSpec, _sampling_system, basis_eval, basis_function,
                                 expand_in_basis, expand_in_product_basis,
                                 linear_combination_of_basis, quasi_periodicity_residual,
                                 translate, translate_eval)
from elliptic_irf.theta import theta1

TAU = 0.2 + 1.0j


@pytest.mark.parametrize("n", [1, 2, 3, 5])
@pytest.mark.parametrize("parity,tilde", [(1, False), (-1, False), (1, True)])
def test_basis_quasi_periodicity(n, parity, tilde):
    spec = SpaceSpec(n, 0.31 - 0.07j, TAU, parity, tilde)
    for j in range(n):
        assert quasi_periodicity_residual(basis_function(spec, j), spec) < 1e-12


def test_one_dimensional_basis_is_theta1():
    # theta[1/2; 1/2](xi - z, tau) exp(pi i z) = theta_1(xi - z) exp(pi i z)
    spec = SpaceSpec(1, 0.3 + 0.1j, TAU)
    z = np.array([0.1, 0.4 - 0.2j])
    expected = theta1(0.3 + 0.1j - z, TAU) * np.exp(1j * np.pi * z)
    assert np.max(np.abs(basis_eval(spec, 0, z) - expected)) < 1e-14


def test_basis_derivative_matches_finite_difference():
    spec = SpaceSpec(3, 0.2 + 0.05j, TAU, -1)
    z, h = 0.17 + 0.06j, 1e-5
    for j in range(3):
        fd = (basis_eval(spec, j, z + h) - basis_eval(spec, j, z - h)) / (2 * h)
        assert abs(basis_eval(spec, j, z, deriv=1) - fd) < 1e-7 * max(1.0, abs(fd))


def test_linear_combination_recovered_by_expansion():
    spec = SpaceSpec(4, -0.12 + 0.2j, TAU)
    coeffs = np.array([1.0, -2.0 + 0.5j, 0.25j, 3.0])
    f = linear_combination_of_basis(spec, coeffs)
    exp = expand_in_basis(f, spec)
    assert np.max(np.abs(exp.coeffs - coeffs)) < 1e-10
    assert exp.residual < 1e-12
    assert exp.cond < 1e4


def test_expansion_rejects_foreign_function():
    spec = SpaceSpec(2, 0.1, TAU)
    f = fourier_mode(3, 0)
    exp = expand_in_basis(lambda z: f(z, 0.0 * z), spec)
    assert exp.residual > 1e-2


def test_product_expansion():
    s1 = SpaceSpec(2, 0.3, TAU)
    s2 = SpaceSpec(3, -0.2 + 0.1j, TAU)
    c = np.arange(6).reshape(2, 3) + 1j

    def g(z1, z2):
        z1, z2 = np.broadcast_arrays(z1, z2)
        out = np.zeros(z1.shape, dtype=complex)
        for a in range(2):
            for b in range(3):
                out += c[a, b] * basis_eval(s1, a, z1) * basis_eval(s2, b, z2)
        return out

    exp = expand_in_product_basis(g, s1, s2)
    assert np.max(np.abs(exp.coeffs - c)) < 1e-10
    assert exp.residual < 1e-12


def test_conditioning_error(monkeypatch):
    spec = SpaceSpec(2, 0.1, TAU)
    monkeypatch.setattr("elliptic_irf.spaces.MAX_COND", 0.5)
    with pytest.raises(ConditioningError):
        _sampling_system(spec)


def test_translation_maps_spaces():
    k, xi = 3, 0.37 - 0.1j
    base = SpaceSpec(k, 0.0, TAU, tilde=True)
    target = SpaceSpec(k, xi, TAU, tilde=True)
    f = translate(k, xi, basis_function(base, 1))
    assert quasi_periodicity_residual(f, target) < 1e-12
    assert abs(translate_eval(k, xi, basis_function(base, 1), 0.2) - f(0.2)) == 0
    with pytest.raises(ValueError):
        translate(0, xi, f)


def test_function_helpers():
    one = constant(2.0)
    assert one(np.zeros(3)).tolist() == [2, 2, 2]
    lc = linear_combination([1.0, 2.0], [one, one])
    assert lc(0.0) == 6.0 and lc.deriv(0.0) == 0.0
    with pytest.raises(ValueError):
        tensor(constant(1.0, 1), constant(1.0, -1))
    fm = fourier_mode(1, -1, parity=-1)
    assert abs(fm(0.3 + 1, 0.1) + fm(0.3, 0.1)) < 1e-14
    cd = with_central_differences(fm.value, -1)
    assert abs(cd.d1(0.2, 0.1) - fm.d1(0.2, 0.1)) < 1e-6


def test_space_validation():
    with pytest.raises(ValueError):
        SpaceSpec(0, 0.0, TAU)
    with pytest.raises(ValueError):
        SpaceSpec(2, 0.0, TAU, parity=0)
