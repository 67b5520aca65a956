"""Maximal commutative line subgroups and their eigenbases.

A primitive vector (c, d) mod MN generates the size-MN commutative subgroup
supported on the line {(x*c, x*d) : x in Z_MN}.  Two families of common
eigenvectors have closed forms: pulsones (impulse trains with a Doppler
phase progression, for the rectangular M x N grid line) and constant-modulus
discrete chirps (for lines of slope 2*alpha with alpha invertible).  Every
other line is reached by transporting the pulsone basis with a symplectic
transform that maps the rectangular direction onto the target direction.

The crystallization check decides whether a rectangular delay-Doppler region
can be read out alias-free against a given line: translates of the region by
the line support must be pairwise disjoint on the MN x MN torus.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .ddcore import PeriodicSequence
from .errors import AlphaNotCoprime, ConfigurationError, IndexOutOfRange, NotPrimitive
from .modmath import Modulus, mod_inv
from .symplectic import sl2_apply, sl2_mapping_direction

__all__ = [
    "DDRegion",
    "LineSubgroup",
    "chirp",
    "crystallization_check",
    "eigenbasis_for_line",
    "pulsone",
]


@dataclass(frozen=True)
class LineSubgroup:
    """Line {(x*c, x*d)} mod MN with primitive generator (c, d)."""

    mod: Modulus
    c: int
    d: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "c", self.c % self.mod.MN)
        object.__setattr__(self, "d", self.d % self.mod.MN)
        if gcd(self.c, self.d) != 1:
            raise NotPrimitive(f"generator ({self.c}, {self.d}) has gcd {gcd(self.c, self.d)}")

    @classmethod
    def from_slope(cls, mod: Modulus, slope: int) -> "LineSubgroup":
        """Line {(k, slope*k)}; any integer slope is admissible."""
        return cls(mod, 1, slope)

    @classmethod
    def rectangular(cls, mod: Modulus) -> "LineSubgroup":
        """The (M, N) direction, whose support is the M x N rectangular grid."""
        return cls(mod, mod.M, mod.N)

    def support_set(self) -> set[tuple[int, int]]:
        """All MN distinct (k, l) points of the line."""
        mn = self.mod.MN
        points = {((x * self.c) % mn, (x * self.d) % mn) for x in range(mn)}
        if len(points) != mn:  # cannot happen for a primitive generator
            raise NotPrimitive(f"generator ({self.c}, {self.d}) spans only {len(points)} points")
        return points

    def contains(self, k: int, l: int) -> bool:
        """O(1) membership: (k, l) is on the line iff k*d = l*c mod MN."""
        return (k * self.d - l * self.c) % self.mod.MN == 0

    def is_rectangular(self) -> bool:
        return self.contains(self.mod.M, self.mod.N)

    def coprime_slope(self) -> int | None:
        """Return alpha with the line equal to {(k, 2*alpha*k)}, if one exists."""
        mn = self.mod.MN
        if gcd(self.c, mn) != 1 or gcd(self.d, mn) != 1:
            return None
        return (self.d * mod_inv(self.c, mn) % mn) * self.mod.inv2 % mn


@dataclass(frozen=True)
class DDRegion:
    """Inclusive rectangle [k_min, k_max] x [l_min, l_max] in delay-Doppler."""

    k_min: int
    k_max: int
    l_min: int
    l_max: int

    def __post_init__(self) -> None:
        if self.k_min > self.k_max or self.l_min > self.l_max:
            raise ConfigurationError(f"empty region {self}")

    @property
    def width_k(self) -> int:
        return self.k_max - self.k_min + 1

    @property
    def width_l(self) -> int:
        return self.l_max - self.l_min + 1

    def validate(self, mod: Modulus) -> None:
        if self.width_k > mod.MN or self.width_l > mod.MN:
            raise ConfigurationError(f"region wider than MN = {mod.MN}: {self}")

    def points(self):
        for k in range(self.k_min, self.k_max + 1):
            for l in range(self.l_min, self.l_max + 1):
                yield k, l


def pulsone(mod: Modulus, k0: int, l0: int) -> PeriodicSequence:
    """Impulse train v[k0 + p*M] = (1/sqrt(N)) * exp(j*2*pi*p*l0/N), zero elsewhere.

    The (k0, l0)-indexed common eigenvector of the rectangular grid line.
    """
    if not (0 <= k0 < mod.M and 0 <= l0 < mod.N):
        raise IndexOutOfRange(f"need 0 <= k0 < M and 0 <= l0 < N, got ({k0}, {l0})")
    samples = np.zeros(mod.MN, dtype=np.complex128)
    p = np.arange(mod.N)
    samples[k0 + p * mod.M] = np.exp(1j * 2 * np.pi * p * l0 / mod.N) / np.sqrt(mod.N)
    return PeriodicSequence(mod, samples)


def chirp(mod: Modulus, alpha: int, beta: int = 0, gamma: int = 0) -> PeriodicSequence:
    """Constant-modulus quadratic-phase sequence exp(j*2*pi*(a*n^2+b*n+g)/MN)/sqrt(MN).

    The common eigenvector family of the slope-2*alpha line; needs
    gcd(alpha, MN) = 1.
    """
    if gcd(alpha, mod.MN) != 1:
        raise AlphaNotCoprime(f"alpha = {alpha} shares a factor with MN = {mod.MN}")
    alpha, beta, gamma = alpha % mod.MN, beta % mod.MN, gamma % mod.MN
    n = np.arange(mod.MN, dtype=np.int64)
    expo = (alpha * (n * n % mod.MN) + beta * n + gamma) % mod.MN
    return PeriodicSequence(mod, np.exp(1j * 2 * np.pi * expo / mod.MN) / np.sqrt(mod.MN))


def eigenbasis_for_line(line: LineSubgroup) -> list[PeriodicSequence]:
    """MN orthonormal common eigenvectors of every element of the line.

    Rectangular line: the pulsone basis.  Coprime-slope line: the chirp
    basis at fixed alpha, indexed by beta (gamma only contributes a global
    phase).  Any other line: the pulsone basis transported by a symplectic
    transform mapping the rectangular direction onto the line direction.
    """
    mod = line.mod
    if line.is_rectangular():
        return [pulsone(mod, k0, l0) for l0 in range(mod.N) for k0 in range(mod.M)]
    alpha = line.coprime_slope()
    if alpha is not None:
        return [chirp(mod, alpha, beta, 0) for beta in range(mod.MN)]
    g = sl2_mapping_direction(mod, (mod.M, mod.N), (line.c, line.d))
    return [
        sl2_apply(g, pulsone(mod, k0, l0)) for l0 in range(mod.N) for k0 in range(mod.M)
    ]


def crystallization_check(line: LineSubgroup, region: DDRegion) -> bool:
    """True iff translates of the region by the line support are pairwise disjoint.

    Equivalent formulation used here: no nonzero support point falls in the
    difference set region - region on the torus, which for a rectangle only
    depends on the two widths.
    """
    mod = line.mod
    region.validate(mod)
    mn = mod.MN
    wk, wl = region.width_k, region.width_l
    for k, l in line.support_set():
        if (k, l) == (0, 0):
            continue
        hit_k = k <= wk - 1 or mn - k <= wk - 1
        hit_l = l <= wl - 1 or mn - l <= wl - 1
        if hit_k and hit_l:
            return False
    return True
