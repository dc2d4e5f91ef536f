"""Weight sequences, admissible steps and the IRF Boltzmann weights.

A weight sequence is stored as a fixed root window plus integer offsets:
``values = root + mu * offsets``.  Sequences reached from a common root by
steps lambda -> lambda + mu eps_i compare equal exactly when their offsets
agree, which for generic data is equality of sequences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .theta import DELTA_GEN, ModularParams, theta1

#: lambda_i = i * r for the default sequence; r is not in Q + Q mu for generic mu.
DEFAULT_R = 0.5513288954217921


@dataclass(frozen=True)
class WeightSequence:
    k1: int
    root: tuple
    mu: complex
    offsets: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "root", tuple(complex(v) for v in self.root))
        object.__setattr__(self, "mu", complex(self.mu))
        offs = self.offsets if self.offsets is not None else (0,) * len(self.root)
        if len(offs) != len(self.root):
            raise ValueError("offsets and root must have the same length")
        object.__setattr__(self, "offsets", tuple(int(o) for o in offs))
        if not self.root:
            raise ValueError("empty window")

    @classmethod
    def from_values(cls, values: Iterable[complex], mu: complex, k1: int = 0) -> "WeightSequence":
        return cls(k1, tuple(values), mu)

    @classmethod
    def default(cls, params: ModularParams, k1: int = 0, k2: int = 3, r: float = DEFAULT_R):
        return cls(k1, tuple(i * r for i in range(k1, k2 + 1)), params.mu)

    @property
    def k2(self) -> int:
        return self.k1 + len(self.root) - 1

    @property
    def k(self) -> int:
        return len(self.root)

    @property
    def indices(self) -> range:
        return range(self.k1, self.k2 + 1)

    @property
    def values(self) -> np.ndarray:
        return np.asarray(self.root) + self.mu * np.asarray(self.offsets)

    def __getitem__(self, i: int) -> complex:
        return complex(self.values[i - self.k1])

    def diff(self, i: int, j: int) -> complex:
        """lambda_ij = lambda_i - lambda_j."""
        return self[i] - self[j]

    @property
    def weight_sum(self) -> complex:
        """|lambda|_k, the sum over the window."""
        return complex(np.sum(self.values))

    def step(self, i: int, sign: int = 1) -> "WeightSequence":
        """lambda + sign * mu * eps_i."""
        if i not in self.indices:
            raise IndexError(f"step index {i} outside window [{self.k1}, {self.k2}]")
        offs = list(self.offsets)
        offs[i - self.k1] += sign
        return WeightSequence(self.k1, self.root, self.mu, tuple(offs))

    def steps(self, *indices: int, sign: int = 1) -> "WeightSequence":
        out = self
        for i in indices:
            out = out.step(i, sign)
        return out

    def same_family(self, other: "WeightSequence") -> bool:
        return self.k1 == other.k1 and self.root == other.root and self.mu == other.mu

    def step_to(self, other: "WeightSequence", sign: int = 1) -> Optional[int]:
        """Index i with other = self + sign * mu * eps_i, else None."""
        if not self.same_family(other):
            return None
        d = [b - a for a, b in zip(self.offsets, other.offsets)]
        nz = [t for t, v in enumerate(d) if v != 0]
        if len(nz) == 1 and d[nz[0]] == sign:
            return self.k1 + nz[0]
        return None


@dataclass(frozen=True)
class Violation:
    kind: str
    i: int
    j: int
    m: int
    n: int
    margin: float


def validate_sequence(seq: WeightSequence, params: ModularParams) -> list:
    """All violated genericity constraints (empty list means valid)."""
    out = []
    half = params.tau.imag / 2
    for i in seq.indices:
        if not abs(seq[i].imag) < half:
            out.append(Violation("strip", i, i, 0, 0, half - abs(seq[i].imag)))
    for i, j in itertools.combinations(seq.indices, 2):
        d = seq.diff(j, i)
        for m in range(-2, 3):
            for n in range(-2, 3):
                margin = abs(d - m - n * params.mu)
                if margin <= DELTA_GEN:
                    out.append(Violation("lattice", i, j, m, n, margin))
    return out


@dataclass(frozen=True)
class FaceConfig:
    """Face (lambda, kappa, kappa', nu): kappa = lambda + mu eps_i,
    kappa' = lambda + mu eps_jp, nu = kappa + mu eps_j."""

    lam: WeightSequence
    i: int
    jp: int
    j: int

    def corners(self):
        kappa = self.lam.step(self.i)
        return self.lam, kappa, self.lam.step(self.jp), kappa.step(self.j)


def boltzmann_weight(lam: WeightSequence, kappa_top: WeightSequence, xi: complex,
                     nu: WeightSequence, kappa_bottom: WeightSequence,
                     params: ModularParams) -> complex:
    """W[kappa_top; lam, xi, nu; kappa_bottom]; zero for non-admissible faces."""
    i = lam.step_to(kappa_bottom)
    if i is None:
        return 0j
    j = kappa_bottom.step_to(nu)
    if j is None:
        return 0j
    jp = lam.step_to(kappa_top)
    if jp is None or kappa_top.step_to(nu) is None:
        return 0j
    tau, mu = params.tau, params.mu
    th = lambda z: complex(theta1(z, tau))  # noqa: E731
    tp0 = params.theta1_prime0
    if i == j:
        # the only admissible kappa' is kappa itself
        return th(mu - xi) * tp0 / th(mu)
    lji = lam.diff(j, i)
    if jp == i:
        return th(lji - xi) * tp0 / th(lji)
    if jp == j:
        return th(xi) * th(lji - mu) * tp0 / (th(lji) * th(-mu))
    return 0j


def face_weight(face: FaceConfig, xi: complex, params: ModularParams) -> complex:
    lam, kappa, kappa_p, nu = face.corners()
    return boltzmann_weight(lam, kappa_p, xi, nu, kappa, params)


def _neighbours(*seqs: WeightSequence) -> list:
    out = []
    for s in seqs:
        for m in s.indices:
            c = s.step(m)
            if c not in out:
                out.append(c)
    return out


def star_triangle_sides(lam: WeightSequence, i: int, j: int, l: int, alpha_choice: int,
                        beta_choice: int, xi1, xi2, xi3, params: ModularParams):
    """Both sides of the star-triangle relation plus the largest term magnitude.

    kappa = lam + eps_i, nu = kappa + eps_j, gamma = nu + eps_l;
    alpha = lam + eps_{(i, j, l)[alpha_choice]},
    beta = lam + eps_a + eps_b with (a, b) = ((i, j), (i, l), (j, l))[beta_choice].
    """
    W = lambda top, left, x, right, bottom: boltzmann_weight(left, top, x, right, bottom, params)  # noqa: E731
    kappa = lam.step(i)
    nu = kappa.step(j)
    gamma = nu.step(l)
    alpha = lam.step((i, j, l)[alpha_choice])
    beta = lam.steps(*((i, j), (i, l), (j, l))[beta_choice])
    x12, x13, x23 = xi1 - xi2, xi1 - xi3, xi2 - xi3
    # kappa' ranges over all of Lambda; only one-step neighbours of lam or kappa
    # can give nonzero weights
    cands = _neighbours(lam, kappa)
    lhs_terms = [W(kp, kappa, x12, gamma, nu) * W(alpha, lam, x13, kp, kappa) * W(beta, alpha, x23, gamma, kp)
                 for kp in cands]
    rhs_terms = [W(kp, lam, x23, nu, kappa) * W(beta, kp, x13, gamma, nu) * W(alpha, lam, x12, beta, kp)
                 for kp in cands]
    scale = max([abs(t) for t in lhs_terms + rhs_terms] + [0.0])
    return sum(lhs_terms), sum(rhs_terms), scale


def star_triangle_residual(lam: WeightSequence, i: int, j: int, l: int, alpha_choice: int,
                           beta_choice: int, xi1, xi2, xi3, params: ModularParams) -> float:
    lhs, rhs, scale = star_triangle_sides(lam, i, j, l, alpha_choice, beta_choice, xi1, xi2, xi3, params)
    return abs(lhs - rhs) / scale if scale > 0 else 0.0
