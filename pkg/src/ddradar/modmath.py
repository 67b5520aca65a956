"""Exact modular-integer arithmetic for phase and index bookkeeping.

All phases are carried as integer indices p modulo 2*M*N representing the
unit complex number exp(j*pi*p/(M*N)).  Whole phases exp(j*2*pi*m/(M*N))
embed as even indices p = 2*m; the affine Fourier machinery introduces odd
(half-integer) indices, which is why the ring is 2*M*N and not M*N.
Keeping indices exact until the final complex evaluation makes group-law
tests bit-exact instead of tolerance-based.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import ConfigurationError, NotInvertible

__all__ = [
    "Modulus",
    "crt_join",
    "crt_split",
    "gcd",
    "is_prime",
    "mod_inv",
    "phase_from_whole",
    "phase_mul",
    "phases_to_complex",
    "to_complex",
]

# 2*MN*MN must stay below 2**63 for exact int64 phase arithmetic.
_MN_CAP = 2_147_483_647


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Modulus:
    """The pair of distinct odd primes (M, N) that fixes every grid size.

    `allow_composite=True` skips the primality check; maximality and
    eigenbasis guarantees then no longer hold and the toolkit makes no
    promises beyond basic arithmetic.
    """

    M: int
    N: int
    allow_composite: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        if self.M < 3 or self.N < 3:
            raise ConfigurationError(f"M, N must be >= 3, got ({self.M}, {self.N})")
        if self.M == self.N:
            raise ConfigurationError(f"M and N must be distinct, got M = N = {self.M}")
        if self.M * self.N > _MN_CAP:
            raise ConfigurationError(f"MN = {self.M * self.N} exceeds the 64-bit-safe cap {_MN_CAP}")
        if not self.allow_composite:
            for v in (self.M, self.N):
                if not is_prime(v):
                    raise ConfigurationError(
                        f"{v} is not an odd prime; pass allow_composite to override "
                        "(unsupported: subgroup maximality guarantees are lost)"
                    )
        if self.M % 2 == 0 or self.N % 2 == 0:
            raise ConfigurationError(f"M, N must be odd, got ({self.M}, {self.N})")

    @property
    def MN(self) -> int:
        return self.M * self.N

    @property
    def twoMN(self) -> int:
        return 2 * self.M * self.N

    @property
    def inv2(self) -> int:
        """Inverse of 2 mod MN (exists since MN is odd)."""
        return mod_inv(2, self.MN)


def mod_inv(a: int, n: int) -> int:
    """Inverse of a mod n; raises NotInvertible when gcd(a, n) != 1."""
    try:
        return pow(a, -1, n)
    except ValueError as exc:
        raise NotInvertible(f"{a} has no inverse mod {n} (gcd = {gcd(a, n)})") from exc


def crt_split(x: int, mod: Modulus) -> tuple[int, int]:
    """Split x in Z_MN into (a, b) with x = (M^-1 mod N)*a*M + (N^-1 mod M)*b*N mod MN.

    Concretely a = x mod N and b = x mod M.
    """
    return x % mod.N, x % mod.M


def crt_join(a: int, b: int, mod: Modulus) -> int:
    """Inverse of crt_split: recompose x in Z_MN from residues (a mod N, b mod M)."""
    minv = mod_inv(mod.M, mod.N)
    ninv = mod_inv(mod.N, mod.M)
    return (minv * a * mod.M + ninv * b * mod.N) % mod.MN


def phase_mul(p1: int, p2: int, mod: Modulus) -> int:
    """Product of unit phases: index addition mod 2MN."""
    return (p1 + p2) % mod.twoMN


def phase_from_whole(m: int, mod: Modulus) -> int:
    """Embed a whole phase exp(j*2*pi*m/MN) as index 2m."""
    return (2 * m) % mod.twoMN


def to_complex(p: int, mod: Modulus) -> complex:
    """Evaluate phase index p as exp(j*pi*p/MN)."""
    return cmath.exp(1j * cmath.pi * (p % mod.twoMN) / mod.MN)


def phases_to_complex(p: np.ndarray, mod: Modulus) -> np.ndarray:
    """Vectorised to_complex for integer index arrays (reduced mod 2MN)."""
    reduced = np.asarray(p, dtype=np.int64) % mod.twoMN
    return np.exp(1j * np.pi / mod.MN * reduced)
