"""SL2(Z_MN)-labelled unitary transforms that rotate ambiguity surfaces.

Two concrete realisations cover the group: quadratic-phase multiplication
(LFM, lower-triangular label) and the generalised discrete affine Fourier
transform (GDAFT, invertible b entry)

    (W x)[n] = (1/sqrt(MN)) * sum_n1 exp(j*pi*binv*(d*n^2 - 2*n*n1 + a*n1^2)/MN) * x[n1].

The half-integer exponent is evaluated ring-exactly: since MN is odd, the
division by two is multiplication by inv2 = (MN+1)/2 in Z_MN, and the whole
exponent is an integer reduced mod 2MN before the single complex
exponential call.  This is the reading under which b*binv = 1 holds exactly
inside the exponent, making the shift-conjugation law and the ambiguity
remap law identities rather than approximations; the literal
real-division-by-pi reading breaks both for labels such as [[1, 1], [0, 1]].
A general determinant-1 matrix with non-invertible b is realised through a
shear decomposition; that route fixes the operator only up to a global
unimodular phase, so composition identities are checked projectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .ddcore import PeriodicSequence
from .errors import BNotCoprime, DetNotOne, ModulusMismatch, NotCoprime, ZeroSequence
from .modmath import Modulus, crt_join, mod_inv, phases_to_complex

__all__ = [
    "AmbiguityRemap",
    "SL2Element",
    "gdaft_adjoint",
    "gdaft_apply",
    "lfm_apply",
    "papr_db",
    "remap_for",
    "sl2_apply",
    "sl2_mapping_direction",
]


@dataclass(frozen=True)
class SL2Element:
    """2x2 matrix [[a, b], [c, d]] over Z_MN with determinant 1."""

    mod: Modulus
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        mn = self.mod.MN
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % mn)
        det = (self.a * self.d - self.b * self.c) % mn
        if det != 1:
            raise DetNotOne(f"det = {det} mod {mn}, expected 1")

    @classmethod
    def identity(cls, mod: Modulus) -> "SL2Element":
        return cls(mod, 1, 0, 0, 1)

    @classmethod
    def lfm(cls, mod: Modulus, A: int) -> "SL2Element":
        """Label of the rate-A quadratic phase multiplier: [[1, 0], [2A, 1]]."""
        return cls(mod, 1, 0, 2 * A, 1)

    @classmethod
    def dft(cls, mod: Modulus) -> "SL2Element":
        """Label of the unitary DFT: [[0, 1], [-1, 0]]."""
        return cls(mod, 0, 1, -1, 0)

    def matmul(self, other: "SL2Element") -> "SL2Element":
        if self.mod != other.mod:
            raise ModulusMismatch("cannot multiply SL2 elements over different moduli")
        return SL2Element(
            self.mod,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "SL2Element":
        return SL2Element(self.mod, self.d, -self.b, -self.c, self.a)

    def apply_vec(self, k: int, l: int) -> tuple[int, int]:
        """Column action: (k, l) -> (a*k + b*l, c*k + d*l) mod MN."""
        mn = self.mod.MN
        return (self.a * k + self.b * l) % mn, (self.c * k + self.d * l) % mn


def lfm_apply(A: int, x: PeriodicSequence) -> PeriodicSequence:
    """Multiply by the quadratic phase exp(j*2*pi*A*n^2/MN); requires gcd(A, MN) = 1."""
    mod = x.mod
    if gcd(A, mod.MN) != 1:
        raise NotCoprime(f"LFM rate {A} shares a factor with MN = {mod.MN}")
    n = np.arange(mod.MN, dtype=np.int64)
    idx = 2 * ((A % mod.MN) * (n * n % mod.twoMN) % mod.twoMN) % mod.twoMN
    return PeriodicSequence(mod, x.samples * phases_to_complex(idx, mod))


def _gdaft_kernel(g: SL2Element) -> np.ndarray:
    """Dense GDAFT matrix K[n, n1] with ring-exact half-integer exponents."""
    mod = g.mod
    if gcd(g.b, mod.MN) != 1:
        raise BNotCoprime(f"GDAFT needs gcd(b, MN) = 1, got b = {g.b}, MN = {mod.MN}")
    mn = mod.MN
    half_binv = mod.inv2 * mod_inv(g.b, mn) % mn
    n = np.arange(mn, dtype=np.int64)
    dn2 = g.d * (n * n % mn) % mn             # d*n^2 along rows
    an2 = g.a * (n * n % mn) % mn             # a*n1^2 along columns
    cross = (-2 * np.outer(n, n)) % mn        # -2*n*n1
    idx = 2 * (half_binv * ((dn2[:, None] + an2[None, :] + cross) % mn) % mn)
    return phases_to_complex(idx, mod) / np.sqrt(mod.MN)


def gdaft_apply(g: SL2Element, x: PeriodicSequence) -> PeriodicSequence:
    """Generalised discrete affine Fourier transform of x for label g.

    For g = [[0, 1], [-1, 0]] this reduces to the unitary DFT.  Unitary for
    every admissible g; maps impulse trains to constant-modulus waveforms
    exactly when gcd(a, N) = 1 (the quadratic Gauss sum over the train slots
    degenerates otherwise).
    """
    if g.mod != x.mod:
        raise ModulusMismatch("transform label and sequence use different moduli")
    return PeriodicSequence(x.mod, _gdaft_kernel(g) @ x.samples)


def gdaft_adjoint(g: SL2Element, x: PeriodicSequence) -> PeriodicSequence:
    """Exact inverse (conjugate transpose) of gdaft_apply for the same g.

    gdaft_apply(g.inverse(), .) agrees only up to a global unimodular phase;
    the adjoint is phase-exact, which the fast ambiguity engine relies on.
    """
    if g.mod != x.mod:
        raise ModulusMismatch("transform label and sequence use different moduli")
    return PeriodicSequence(x.mod, _gdaft_kernel(g).conj().T @ x.samples)


def sl2_apply(g: SL2Element, x: PeriodicSequence) -> PeriodicSequence:
    """Apply a unitary realising any determinant-1 label g.

    Direct GDAFT when gcd(b, MN) = 1; otherwise factor through a shear
    S = [[1, x0], [0, 1]] chosen so both factors have invertible b entries.
    The result is then defined up to a global unimodular phase.
    """
    mod = g.mod
    if gcd(g.b, mod.MN) == 1:
        return gdaft_apply(g, x)
    for x0 in range(1, mod.MN):
        if gcd(x0, mod.MN) == 1 and gcd(g.b + x0 * g.d, mod.MN) == 1:
            break
    else:  # unreachable for M, N >= 3 (two forbidden residues per prime factor)
        raise DetNotOne(f"no admissible shear found for {g}")
    shear = SL2Element(mod, 1, x0, 0, 1)
    return gdaft_apply(shear.inverse(), gdaft_apply(shear.matmul(g), x))


@dataclass(frozen=True)
class AmbiguityRemap:
    """Index map and phase law relating A_{x,y} to A_{Wx,Wy}.

    A_{x,y}[k, l] = exp(j*pi*phase_index(k, l)/MN) * A_{Wx,Wy}[g.apply_vec(k, l)]
    where phase_index is the ring-exact reduction of
    -(a*c*k^2 + b*d*l^2 + 2*b*c*l*k) to an even index mod 2MN.  For the LFM
    label [[1, 0], [2A, 1]] this specialises to -2*A*k^2, i.e. the factor
    exp(-j*2*pi*A*k^2/MN) in front of A_{Wx,Wy}[k, 2A*k + l].
    """

    g: SL2Element

    def phase_index(self, k, l):
        """Phase index at (k, l); accepts equal-shape integer arrays."""
        g = self.g
        mn = g.mod.MN
        k = np.asarray(k, dtype=np.int64) % mn
        l = np.asarray(l, dtype=np.int64) % mn
        quad = (g.a * g.c % mn) * (k * k % mn) + (g.b * g.d % mn) * (l * l % mn)
        quad = (quad + (2 * g.b * g.c % mn) * (l * k % mn)) % mn
        idx = (-2 * (g.mod.inv2 * quad % mn)) % g.mod.twoMN
        if idx.ndim == 0:
            return int(idx)
        return idx

    def target(self, k: int, l: int) -> tuple[int, int]:
        return self.g.apply_vec(k, l)


def remap_for(g: SL2Element) -> AmbiguityRemap:
    """Ambiguity remap for a label realisable as LFM (b = 0) or GDAFT (b invertible)."""
    mn = g.mod.MN
    if g.b != 0 and gcd(g.b, mn) != 1:
        raise BNotCoprime(
            f"remap law is defined for b = 0 or gcd(b, MN) = 1, got b = {g.b}"
        )
    if g.b == 0 and not (g.a == 1 and g.d == 1 and g.c % 2 == 0):
        raise NotCoprime(
            f"b = 0 labels must be LFM-shaped [[1, 0], [2A, 1]], got {g}"
        )
    return AmbiguityRemap(g)


def sl2_mapping_direction(mod: Modulus, src: tuple[int, int], dst: tuple[int, int]) -> SL2Element:
    """Determinant-1 matrix g with g * src = dst (column action), built per prime factor.

    Both vectors must be nonzero mod M and mod N, which gcd-primitivity of a
    line generator guarantees.
    """

    def complete(u1: int, u2: int, p: int) -> tuple[int, int, int, int]:
        # columns (u1, u2) and (x, y) with det = u1*y - u2*x = 1 mod p
        if u1 % p != 0:
            return u1 % p, u2 % p, 0, mod_inv(u1, p)
        return u1 % p, u2 % p, (-mod_inv(u2, p)) % p, 0

    def solve(p: int) -> tuple[int, int, int, int]:
        u1, u2, ux, uy = complete(src[0], src[1], p)
        v1, v2, vx, vy = complete(dst[0], dst[1], p)
        # g = V * U^-1 with U = [[u1, ux], [u2, uy]], det U = det V = 1
        ui = ((uy, -ux), (-u2, u1))
        a = (v1 * ui[0][0] + vx * ui[1][0]) % p
        b = (v1 * ui[0][1] + vx * ui[1][1]) % p
        c = (v2 * ui[0][0] + vy * ui[1][0]) % p
        d = (v2 * ui[0][1] + vy * ui[1][1]) % p
        return a, b, c, d

    gm = solve(mod.M)
    gn = solve(mod.N)
    a, b, c, d = (crt_join(en, em, mod) for em, en in zip(gm, gn))
    return SL2Element(mod, a, b, c, d)


def papr_db(x: PeriodicSequence) -> float:
    """Peak-to-average power ratio in dB: 10*log10(max|x|^2 / mean|x|^2)."""
    power = np.abs(x.samples) ** 2
    mean = float(power.mean())
    if mean == 0.0:
        raise ZeroSequence("PAPR undefined for the zero sequence")
    return float(10.0 * np.log10(power.max() / mean))
