"""Arbitrary-precision reference implementations (mpmath), independent of the package."""

import mpmath as mp

mp.mp.dps = 40


def theta_char(a, b, z, tau, terms=60):
    a, b, z, tau = mp.mpf(a), mp.mpf(b), mp.mpc(z), mp.mpc(tau)
    s = mp.mpc(0)
    for m in range(-terms, terms + 1):
        ma = m + a
        s += mp.exp(mp.pi * 1j * ma ** 2 * tau + 2 * mp.pi * 1j * ma * (z + b))
    return s


def theta_char_deriv(a, b, z, tau, terms=60):
    a, b, z, tau = mp.mpf(a), mp.mpf(b), mp.mpc(z), mp.mpc(tau)
    s = mp.mpc(0)
    for m in range(-terms, terms + 1):
        ma = m + a
        s += 2 * mp.pi * 1j * ma * mp.exp(mp.pi * 1j * ma ** 2 * tau + 2 * mp.pi * 1j * ma * (z + b))
    return s


def theta1(z, tau):
    return theta_char(0.5, 0.5, z, tau)


def theta1_prime(z, tau):
    return theta_char_deriv(0.5, 0.5, z, tau)


def eta(tau, terms=200):
    tau = mp.mpc(tau)
    q = mp.exp(2 * mp.pi * 1j * tau)
    p = mp.mpc(1)
    for m in range(1, terms):
        p *= 1 - q ** m
    return mp.exp(mp.pi * 1j * tau / 12) * p


def r_apply(xi, mu, tau, f, z1, z2):
    """Two-term R-operator formula at an off-diagonal point."""
    th = lambda u: theta1(u, tau)  # noqa: E731
    tp = theta1_prime(0, tau)
    d = mp.mpc(z2) - mp.mpc(z1)
    return (th(xi) * th(d - mu) * tp / (th(-mu) * th(d)) * f(z2, z1)
            + th(d - xi) * tp / th(d) * f(z1, z2))
