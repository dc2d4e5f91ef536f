"""Seeded draws for verification suites.

Uses numpy's PCG64 bit generator (seeded through SeedSequence) and maps the
raw 64-bit outputs to doubles with the top 53 bits.  Only raw outputs are
consumed, so the stream does not depend on numpy's distribution code.
"""

from __future__ import annotations

import numpy as np

from ..theta import lattice_distance

_SCALE = 2.0 ** -53


class Draws:
    def __init__(self, seed: int):
        self.seed = int(seed)
        self._bits = np.random.PCG64(self.seed)

    def uniform(self, lo: float = 0.0, hi: float = 1.0) -> float:
        raw = int(self._bits.random_raw())
        return lo + (hi - lo) * ((raw >> 11) * _SCALE)

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi] (inclusive)."""
        raw = int(self._bits.random_raw())
        return lo + raw % (hi - lo + 1)

    def complex_in_box(self, re: tuple, im: tuple) -> complex:
        x = self.uniform(*re)
        return complex(x, self.uniform(*im))

    def spectral(self, tau: complex, margin: float = 0.05, shifts=(0.0,)) -> complex:
        """xi with re in [-0.5, 0.5], im in +-0.3 Im tau, every xi + shift at
        least ``margin`` from the period lattice."""
        h = 0.3 * complex(tau).imag
        while True:
            xi = self.complex_in_box((-0.5, 0.5), (-h, h))
            if all(lattice_distance(xi + s, tau) >= margin for s in shifts):
                return xi

    def points(self, count: int, dim: int, tau: complex, min_gap: float = 0.05) -> np.ndarray:
        """count x dim points whose pairwise differences avoid the integers."""
        h = 0.2 * complex(tau).imag
        out = []
        while len(out) < count:
            p = [self.complex_in_box((-0.5, 0.5), (-h, h)) for _ in range(dim)]
            ok = True
            for a in range(dim):
                for b in range(a + 1, dim):
                    d = p[b] - p[a]
                    if abs(d - round(d.real)) < min_gap:
                        ok = False
            if ok:
                out.append(p)
        return np.array(out, dtype=complex)
