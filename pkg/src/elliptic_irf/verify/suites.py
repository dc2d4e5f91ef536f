"""Verification suites: each returns a list of named residual checks."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from ..belavin import (belavin_property_residuals, rk_star_matrix, ybe_matrix_residual)
from ..errors import EllipticIRFError, GenericityError
from ..functions import fourier_mode, fourier_mode3
from ..intertwiners import (exchange_residual, outgoing_coeffs, vertex_irf_residual,
                            weyl_kac_det_residual)
from ..irf import DEFAULT_R, WeightSequence, star_triangle_residual, validate_sequence
from ..loperators import (belavin_rll_assembled_residual, belavin_rll_residual,
                          belavin_vertex_irf_residual, rll_assembled_residual,
                          rll_pointwise_residual)
from ..roperator import subspace_mapping_residual, ybe_pointwise_residual
from ..theta import (ModularParams, dedekind_eta, theta1, theta1_product, three_term_residual)
from .config import SuiteConfig
from .rng import Draws

#: Fourier test modes (a, b) used for bivariate identities.
TEST_MODES = ((0, 0), (1, 0), (0, 1), (1, 2), (-2, 1))
TEST_MODES3 = ((0, 0, 0), (1, 0, 0), (0, -1, 1), (1, 2, 0), (-2, 1, 1))
PARITIES = (1, -1)


@dataclass
class Check:
    name: str
    inputs: dict
    residual: Optional[float]
    error: Optional[str] = None


def _run(name: str, inputs: dict, fn: Callable[[], float]) -> Check:
    """Evaluate one residual; numerical failures become failed checks."""
    try:
        res = float(fn())
    except (EllipticIRFError, np.linalg.LinAlgError, FloatingPointError, ZeroDivisionError) as exc:
        return Check(name, inputs, None, f"{type(exc).__name__}: {exc}")
    if not np.isfinite(res):
        return Check(name, inputs, None, "non-finite residual")
    return Check(name, inputs, res)


class Context:
    """Parameters, seeded draws and weight windows shared by a suite run."""

    def __init__(self, cfg: SuiteConfig):
        self.cfg = cfg
        self.params = ModularParams(cfg.tau, cfg.mu)
        self.draws = Draws(cfg.seed)
        self.window = self._window()
        bad = validate_sequence(self.window, self.params)
        if bad:
            v = bad[0]
            if v.kind == "strip":
                raise GenericityError(f"lambda_{v.i} violates |Im lambda_i| < Im(tau)/2")
            raise GenericityError(
                f"lambda_{v.j} - lambda_{v.i} lies within {v.margin:.3g} of {v.m} + ({v.n}) mu")

    def _window(self) -> WeightSequence:
        cfg = self.cfg
        if cfg.lam is not None:
            return WeightSequence.from_values(cfg.lam, self.params.mu, cfg.window[0])
        k1, k2 = cfg.window
        return WeightSequence.default(self.params, k1, k2)

    def sub_window(self, k: int) -> WeightSequence:
        """First k weights of the configured window (or default weights if it is shorter)."""
        w = self.window
        if k <= w.k:
            return WeightSequence(w.k1, w.root[:k], w.mu)
        return WeightSequence(w.k1, tuple(i * DEFAULT_R for i in range(w.k1, w.k1 + k)), w.mu)

    def ks(self, default: tuple) -> tuple:
        if self.cfg.lam is not None:
            return (self.window.k,)
        if self.cfg.k is not None:
            return (self.cfg.k,)
        return default

    def count(self, default: int) -> int:
        return self.cfg.draws if self.cfg.draws is not None else default

    def spectral(self, count: int, size: int, shifts=(0.0,)) -> list:
        """Spectral tuples: explicit xi values (sliding windows, padded with draws) or draws."""
        xi = self.cfg.xi
        tau = self.params.tau
        if xi:
            if len(xi) >= size:
                return [tuple(xi[t:t + size]) for t in range(len(xi) - size + 1)]
            pad = [self.draws.spectral(tau, shifts=shifts) for _ in range(size - len(xi))]
            return [tuple(xi) + tuple(pad)]
        return [tuple(self.draws.spectral(tau, shifts=shifts) for _ in range(size)) for _ in range(count)]


def _tag(*parts) -> str:
    return "/".join(str(p) for p in parts)


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# --------------------------------------------------------------------------


def suite_theta(ctx: Context) -> list:
    tau = ctx.params.tau
    h = 0.45 * tau.imag
    n = ctx.count(100)
    zs = np.array([ctx.draws.complex_in_box((-1, 1), (-h, h)) for _ in range(n)])
    quad = np.array([[ctx.draws.complex_in_box((-1, 1), (-h / 2, h / 2)) for _ in range(4)]
                     for _ in range(n)])
    th = theta1(zs, tau)
    scale = np.maximum(np.abs(th), 1e-300)

    def qp1():
        return np.max(np.abs(theta1(zs + 1, tau) + th) / scale)

    def qpt():
        mult = -np.exp(-2j * np.pi * zs - 1j * np.pi * tau)
        return np.max(np.abs(theta1(zs + tau, tau) - mult * th) / np.maximum(np.abs(mult * th), 1e-300))

    def odd():
        return np.max(np.abs(theta1(-zs, tau) + th) / scale)

    def three():
        return max(three_term_residual(*row, tau) for row in quad)

    def zeros():
        pts = np.array([m + nn * tau for m in range(-2, 3) for nn in range(-1, 2)])
        return np.max(np.abs(theta1(pts, tau)) / np.abs(theta1(pts, tau, deriv=1)))

    def product():
        return np.max(np.abs(theta1_product(zs, tau) - th) / scale)

    def eta():
        target = -2 * np.pi * dedekind_eta(tau) ** 3
        return abs(ctx.params.theta1_prime0 - target) / abs(target)

    inp = {"tau": _c(tau), "draws": n}
    return [
        _run("theta/quasi-period-1", inp, qp1),
        _run("theta/quasi-period-tau", inp, qpt),
        _run("theta/odd", inp, odd),
        _run("theta/three-term", inp, three),
        _run("theta/zeros", inp, zeros),
        _run("theta/product-form", inp, product),
        _run("theta/derivative-eta", inp, eta),
    ]


def suite_ybe_pointwise(ctx: Context) -> list:
    out = []
    triples = ctx.spectral(ctx.count(10), 3)
    pts = ctx.draws.points(10, 3, ctx.params.tau)
    for t, (x1, x2, x3) in enumerate(triples):
        for m, modes in enumerate(TEST_MODES3):
            for par in PARITIES:
                f = fourier_mode3(*modes, parity=par)
                inp = {"xi": [_c(x1), _c(x2), _c(x3)], "mode": list(modes), "parity": par}
                out.append(_run(_tag("ybe-pointwise", f"t{t:03d}", f"f{m}", f"p{par:+d}"), inp,
                                lambda f=f, x1=x1, x2=x2, x3=x3:
                                ybe_pointwise_residual(x1, x2, x3, f, pts, ctx.params)))
    return out


def suite_subspace(ctx: Context) -> list:
    out = []
    pairs = ctx.spectral(ctx.count(3), 2)
    for n in ctx.ks((1, 2, 3, 4)):
        for t, (x1, x2) in enumerate(pairs):
            for par in PARITIES:
                inp = {"n": n, "xi": [_c(x1), _c(x2)], "parity": par}
                out.append(_run(_tag("subspace", f"n{n}", f"t{t:03d}", f"p{par:+d}"), inp,
                                lambda n=n, x1=x1, x2=x2, par=par:
                                subspace_mapping_residual(n, x1, x2, par, ctx.params)))
    return out


def suite_belavin_props(ctx: Context) -> list:
    out = []
    for k in ctx.ks((1, 2, 3, 4)):
        for t, (xi,) in enumerate(ctx.spectral(ctx.count(2), 1)):
            inp = {"k": k, "xi": _c(xi)}
            try:
                res = belavin_property_residuals(k, xi, ctx.params)
            except EllipticIRFError as exc:
                out.append(Check(_tag("belavin-props", f"k{k}", f"t{t:03d}"), inp, None,
                                 f"{type(exc).__name__}: {exc}"))
                continue
            for prop, val in sorted(res.items()):
                out.append(_run(_tag("belavin-props", f"k{k}", f"t{t:03d}", prop), inp, lambda v=val: v))
    return out


def suite_ybe_matrix(ctx: Context) -> list:
    out = []
    for k in ctx.ks((1, 2, 3, 4)):
        for t, (x1, x2, x3) in enumerate(ctx.spectral(ctx.count(5), 3)):
            inp = {"k": k, "xi": [_c(x1), _c(x2), _c(x3)]}
            out.append(_run(_tag("ybe-matrix", f"k{k}", f"t{t:03d}"), inp,
                            lambda k=k, x1=x1, x2=x2, x3=x3: ybe_matrix_residual(k, x1, x2, x3, ctx.params)))
    return out


def suite_star_triangle(ctx: Context) -> list:
    out = []
    lam = ctx.window
    for t, (x1, x2, x3) in enumerate(ctx.spectral(ctx.count(5), 3)):
        def scan(x1=x1, x2=x2, x3=x3):
            worst = 0.0
            for i, j, l in itertools.product(lam.indices, repeat=3):
                for a in range(3):
                    for b in range(3):
                        worst = max(worst, star_triangle_residual(lam, i, j, l, a, b, x1, x2, x3, ctx.params))
            return worst
        inp = {"window": list(ctx.cfg.window), "xi": [_c(x1), _c(x2), _c(x3)]}
        out.append(_run(_tag("irf-star-triangle", f"t{t:03d}"), inp, scan))
    return out


def suite_vertex_irf(ctx: Context) -> list:
    out = []
    lam = ctx.window
    for t, (xi,) in enumerate(ctx.spectral(ctx.count(5), 1)):
        for m, modes in enumerate(TEST_MODES):
            for par in PARITIES:
                f = fourier_mode(*modes, parity=par)

                def scan(f=f, xi=xi):
                    return max(vertex_irf_residual(lam, i, j, xi, f, ctx.params)
                               for i, j in itertools.product(lam.indices, repeat=2))
                inp = {"xi": _c(xi), "mode": list(modes), "parity": par}
                out.append(_run(_tag("vertex-irf", f"t{t:03d}", f"f{m}", f"p{par:+d}"), inp, scan))
    return out


def suite_duality(ctx: Context) -> list:
    out = []
    for k in ctx.ks((1, 2, 3, 4)):
        lam = ctx.sub_window(k)
        for t, (xi,) in enumerate(ctx.spectral(ctx.count(5), 1)):
            for par in PARITIES:
                inp = {"k": k, "xi": _c(xi), "parity": par}
                out.append(_run(_tag("duality", f"k{k}", f"t{t:03d}", f"p{par:+d}"), inp,
                                lambda lam=lam, xi=xi, par=par:
                                max(outgoing_coeffs(xi, lam, ctx.params, par).duality_residuals())))
    return out


def suite_weyl_kac(ctx: Context) -> list:
    out = []
    for k in ctx.ks((1, 2, 3, 4)):
        lam = ctx.sub_window(k)
        for t, (xi,) in enumerate(ctx.spectral(ctx.count(5), 1)):
            inp = {"k": k, "xi": _c(xi)}
            out.append(_run(_tag("weyl-kac", f"k{k}", f"t{t:03d}"), inp,
                            lambda lam=lam, xi=xi: weyl_kac_det_residual(xi, lam, ctx.params)))
    return out


def suite_exchange(ctx: Context) -> list:
    out = []
    pts = ctx.draws.points(5, 2, ctx.params.tau)
    for k in ctx.ks((1, 2, 3)):
        lam = ctx.sub_window(k)
        for t, (x1, x2) in enumerate(ctx.spectral(ctx.count(3), 2)):
            for par in PARITIES:
                def scan(lam=lam, x1=x1, x2=x2, par=par):
                    return max(exchange_residual(x1, x2, lam, i, j, pts[:, 0], pts[:, 1], ctx.params, par)
                               for i, j in itertools.product(lam.indices, repeat=2))
                inp = {"k": k, "xi": [_c(x1), _c(x2)], "parity": par}
                out.append(_run(_tag("exchange", f"k{k}", f"t{t:03d}", f"p{par:+d}"), inp, scan))
    return out


def suite_rll(ctx: Context) -> list:
    out = []
    pts = ctx.draws.points(5, 2, ctx.params.tau)
    for k in ctx.ks((1, 2, 3)):
        lam = ctx.sub_window(k)
        for t, (x1, x2) in enumerate(ctx.spectral(ctx.count(3), 2)):
            for par in PARITIES:
                f = fourier_mode(1, 2, par)

                def scan(lam=lam, x1=x1, x2=x2, par=par, f=f):
                    return max(rll_pointwise_residual(x1, x2, lam, i, j, f, pts, ctx.params, par)
                               for i, j in itertools.product(lam.indices, repeat=2))
                inp = {"k": k, "xi": [_c(x1), _c(x2)], "parity": par}
                out.append(_run(_tag("rll", f"k{k}", f"t{t:03d}", f"p{par:+d}"), inp, scan))
            if k <= 2:
                inp = {"k": k, "xi": [_c(x1), _c(x2)], "parity": 1}
                out.append(_run(_tag("rll", f"k{k}", f"t{t:03d}", "assembled"), inp,
                                lambda lam=lam, x1=x1, x2=x2:
                                rll_assembled_residual(x1, x2, lam, fourier_mode(1, 2), pts, ctx.params)))
    return out


def _belavin_shifts(ctx: Context, k: int) -> tuple:
    mu = ctx.params.mu
    return (0.0, -k * mu)


def suite_belavin_vertex_irf(ctx: Context) -> list:
    out = []
    for k in ctx.ks((2, 3)):
        lam = ctx.sub_window(k)
        for t, (x1, x2) in enumerate(ctx.spectral(ctx.count(3), 2, _belavin_shifts(ctx, k))):
            def scan(lam=lam, x1=x1, x2=x2, k=k):
                s = rk_star_matrix(k, x1 - x2, ctx.params)
                return max(belavin_vertex_irf_residual(x1, x2, lam, i, j, ctx.params, s)
                           for i, j in itertools.product(lam.indices, repeat=2))
            inp = {"k": k, "xi": [_c(x1), _c(x2)]}
            out.append(_run(_tag("belavin-vertex-irf", f"k{k}", f"t{t:03d}"), inp, scan))
    return out


def suite_belavin_rll(ctx: Context) -> list:
    out = []
    for k in ctx.ks((2, 3)):
        lam = ctx.sub_window(k)
        for t, (x1, x2) in enumerate(ctx.spectral(ctx.count(3), 2, _belavin_shifts(ctx, k))):
            def scan(lam=lam, x1=x1, x2=x2, k=k):
                s = rk_star_matrix(k, x1 - x2, ctx.params)
                return max(belavin_rll_residual(x1, x2, lam, i, j, ctx.params, s)
                           for i, j in itertools.product(lam.indices, repeat=2))
            inp = {"k": k, "xi": [_c(x1), _c(x2)]}
            out.append(_run(_tag("belavin-rll", f"k{k}", f"t{t:03d}", "per-pair"), inp, scan))
            out.append(_run(_tag("belavin-rll", f"k{k}", f"t{t:03d}", "assembled"), inp,
                            lambda lam=lam, x1=x1, x2=x2:
                            belavin_rll_assembled_residual(x1, x2, lam, ctx.params)))
    return out


SUITE_FUNCS = {
    "theta": suite_theta,
    "ybe-pointwise": suite_ybe_pointwise,
    "subspace": suite_subspace,
    "belavin-props": suite_belavin_props,
    "ybe-matrix": suite_ybe_matrix,
    "irf-star-triangle": suite_star_triangle,
    "vertex-irf": suite_vertex_irf,
    "duality": suite_duality,
    "weyl-kac": suite_weyl_kac,
    "exchange": suite_exchange,
    "rll": suite_rll,
    "belavin-vertex-irf": suite_belavin_vertex_irf,
    "belavin-rll": suite_belavin_rll,
}


def run_checks(cfg: SuiteConfig) -> list:
    """All checks for ``cfg.suite``; ``all`` runs every suite with its own seeded stream."""
    names = list(SUITE_FUNCS) if cfg.suite == "all" else [cfg.suite]
    checks = []
    for name in names:
        # a fresh context per suite keeps each suite's draws independent of the others
        checks.extend(SUITE_FUNCS[name](Context(replace(cfg, suite=name))))
    return checks
