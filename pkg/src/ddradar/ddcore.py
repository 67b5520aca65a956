"""The two unitarily equivalent signal spaces and the Zak transform between them.

Time side: complex sequences of period MN, stored as one fundamental period
with modular indexing.  Delay-Doppler side: M x N arrays whose extension
beyond the fundamental domain picks up the quasi-periodic phase
exp(j*2*pi*n*l/N) under delay-period shifts.  The discrete Zak transform

    X[k, l] = (1/sqrt(N)) * sum_p x[k + p*M] * exp(-j*2*pi*p*l/N)

is the unitary map between them; its inverse reads

    x[n] = (1/sqrt(N)) * sum_q X[n mod M, q] * exp(j*2*pi*q*floor(n/M)/N).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError, ModulusMismatch
from .modmath import Modulus

__all__ = [
    "PeriodicSequence",
    "QuasiPeriodicArray",
    "SampleGrid",
    "array_from_csv",
    "array_to_csv",
    "basis_vrs",
    "dzt",
    "dzt_direct",
    "idzt",
    "idzt_direct",
    "inner",
    "inner_dd",
    "sequence_from_csv",
    "sequence_to_csv",
]


def _as_complex_vector(samples, length: int) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.complex128)
    if arr.shape != (length,):
        raise ConfigurationError(f"expected {length} samples, got shape {arr.shape}")
    return arr


@dataclass(frozen=True)
class PeriodicSequence:
    """One fundamental period of an MN-periodic complex sequence."""

    mod: Modulus
    samples: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", _as_complex_vector(self.samples, self.mod.MN))

    @classmethod
    def zeros(cls, mod: Modulus) -> "PeriodicSequence":
        return cls(mod, np.zeros(mod.MN, dtype=np.complex128))

    @classmethod
    def basis(cls, mod: Modulus, n: int) -> "PeriodicSequence":
        """Standard basis vector e_n (index reduced mod MN)."""
        samples = np.zeros(mod.MN, dtype=np.complex128)
        samples[n % mod.MN] = 1.0
        return cls(mod, samples)

    def at(self, n: int) -> complex:
        """Sample at any integer index, reduced mod MN."""
        return complex(self.samples[n % self.mod.MN])

    def norm(self) -> float:
        return float(np.linalg.norm(self.samples))

    def unit(self) -> "PeriodicSequence":
        nrm = self.norm()
        if nrm == 0.0:
            raise ConfigurationError("cannot normalise the zero sequence")
        return PeriodicSequence(self.mod, self.samples / nrm)


@dataclass(frozen=True)
class QuasiPeriodicArray:
    """M x N delay-Doppler array; extension rule applied by extend(), never stored."""

    mod: Modulus
    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.complex128)
        if arr.shape != (self.mod.M, self.mod.N):
            raise ConfigurationError(
                f"expected shape {(self.mod.M, self.mod.N)}, got {arr.shape}"
            )
        object.__setattr__(self, "values", arr)

    @classmethod
    def zeros(cls, mod: Modulus) -> "QuasiPeriodicArray":
        return cls(mod, np.zeros((mod.M, mod.N), dtype=np.complex128))

    def extend(self, k: int, l: int) -> complex:
        """Quasi-periodic extension at any integer (k, l).

        X[k + n*M, l + m*N] = exp(j*2*pi*n*l/N) * X[k, l].
        """
        M, N = self.mod.M, self.mod.N
        n = k // M
        phase = np.exp(1j * 2 * np.pi * n * (l % N) / N)
        return complex(phase * self.values[k % M, l % N])


@dataclass(frozen=True)
class SampleGrid:
    """Physical metadata: delay period tau_p (s) and Doppler period nu_p (Hz).

    Units never touch the numerics; the discrete core is unit-free.
    """

    mod: Modulus
    tau_p: float
    nu_p: float = field(default=0.0)

    def __post_init__(self) -> None:
        nu = self.nu_p if self.nu_p else 1.0 / self.tau_p
        object.__setattr__(self, "nu_p", nu)
        if abs(self.tau_p * self.nu_p - 1.0) > 1e-12:
            raise ConfigurationError(
                f"tau_p*nu_p must be 1, got {self.tau_p * self.nu_p!r}"
            )

    @property
    def delay_resolution(self) -> float:
        return self.tau_p / self.mod.M

    @property
    def doppler_resolution(self) -> float:
        return self.nu_p / self.mod.N


def _require_same_mod(a, b) -> None:
    if a.mod != b.mod:
        raise ModulusMismatch(f"operands use different moduli: {a.mod} vs {b.mod}")


def inner(x: PeriodicSequence, y: PeriodicSequence) -> complex:
    """<x, y> = sum_n x[n] * conj(y[n]) over one period."""
    _require_same_mod(x, y)
    return complex(np.vdot(y.samples, x.samples))


def inner_dd(X: QuasiPeriodicArray, Y: QuasiPeriodicArray) -> complex:
    """Delay-Doppler inner product over the fundamental M x N domain."""
    _require_same_mod(X, Y)
    return complex(np.vdot(Y.values, X.values))


def dzt(x: PeriodicSequence) -> QuasiPeriodicArray:
    """Discrete Zak transform, one length-N FFT per delay row."""
    mod = x.mod
    # x[k + p*M] lives at reshaped[p, k]
    reshaped = x.samples.reshape(mod.N, mod.M)
    values = np.fft.fft(reshaped, axis=0).T / np.sqrt(mod.N)
    return QuasiPeriodicArray(mod, values)


def dzt_direct(x: PeriodicSequence) -> QuasiPeriodicArray:
    """Direct-sum Zak transform; the oracle the FFT path must match."""
    mod = x.mod
    M, N = mod.M, mod.N
    values = np.zeros((M, N), dtype=np.complex128)
    for k in range(M):
        for l in range(N):
            acc = 0.0 + 0.0j
            for p in range(N):
                acc += x.samples[k + p * M] * np.exp(-1j * 2 * np.pi * p * l / N)
            values[k, l] = acc / np.sqrt(N)
    return QuasiPeriodicArray(mod, values)


def idzt(X: QuasiPeriodicArray) -> PeriodicSequence:
    """Inverse Zak transform, one length-N inverse FFT per delay row."""
    mod = X.mod
    # x[k + p*M] = (1/sqrt(N)) sum_q X[k, q] exp(j*2*pi*q*p/N) = sqrt(N)*ifft_q(X[k,:])[p]
    reshaped = np.sqrt(mod.N) * np.fft.ifft(X.values, axis=1)  # [k, p]
    return PeriodicSequence(mod, reshaped.T.reshape(mod.MN))


def idzt_direct(X: QuasiPeriodicArray) -> PeriodicSequence:
    """Direct-sum inverse Zak transform (oracle)."""
    mod = X.mod
    M, N = mod.M, mod.N
    samples = np.zeros(mod.MN, dtype=np.complex128)
    for n in range(mod.MN):
        acc = 0.0 + 0.0j
        for q in range(N):
            acc += X.values[n % M, q] * np.exp(1j * 2 * np.pi * q * (n // M) / N)
        samples[n] = acc / np.sqrt(N)
    return PeriodicSequence(mod, samples)


def basis_vrs(r: int, s: int, mod: Modulus) -> PeriodicSequence:
    """Windowed-exponential orthonormal basis of the time-domain space.

    v[n] = (1/sqrt(M)) * exp(j*2*pi*s*n/M) for r*M <= n < (r+1)*M, else 0.
    """
    if not (0 <= r < mod.N and 0 <= s < mod.M):
        raise ConfigurationError(f"need 0 <= r < N and 0 <= s < M, got (r, s) = ({r}, {s})")
    samples = np.zeros(mod.MN, dtype=np.complex128)
    n = np.arange(r * mod.M, (r + 1) * mod.M)
    samples[n] = np.exp(1j * 2 * np.pi * s * n / mod.M) / np.sqrt(mod.M)
    return PeriodicSequence(mod, samples)


# ---------------------------------------------------------------------------
# CSV serialisation: sequences use header n,re,im; arrays use k,l,re,im.
# Values are printed with 17 significant digits, enough to round-trip float64.

_FMT = "%.17g"


def sequence_to_csv(x: PeriodicSequence, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("n,re,im\n")
        for n, v in enumerate(x.samples):
            fh.write(f"{n},{_FMT % v.real},{_FMT % v.imag}\n")


def sequence_from_csv(path, mod: Modulus) -> PeriodicSequence:
    samples = np.zeros(mod.MN, dtype=np.complex128)
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "n,re,im":
            raise ConfigurationError(f"bad sequence CSV header: {header!r}")
        count = 0
        for line in fh:
            n_s, re_s, im_s = line.strip().split(",")
            samples[int(n_s)] = float(re_s) + 1j * float(im_s)
            count += 1
    if count != mod.MN:
        raise ConfigurationError(f"expected {mod.MN} rows, got {count}")
    return PeriodicSequence(mod, samples)


def array_to_csv(X: QuasiPeriodicArray, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write("k,l,re,im\n")
        for k in range(X.mod.M):
            for l in range(X.mod.N):
                v = X.values[k, l]
                fh.write(f"{k},{l},{_FMT % v.real},{_FMT % v.imag}\n")


def array_from_csv(path, mod: Modulus) -> QuasiPeriodicArray:
    values = np.zeros((mod.M, mod.N), dtype=np.complex128)
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip()
        if header != "k,l,re,im":
            raise ConfigurationError(f"bad array CSV header: {header!r}")
        count = 0
        for line in fh:
            k_s, l_s, re_s, im_s = line.strip().split(",")
            values[int(k_s), int(l_s)] = float(re_s) + 1j * float(im_s)
            count += 1
    if count != mod.MN:
        raise ConfigurationError(f"expected {mod.MN} rows, got {count}")
    return QuasiPeriodicArray(mod, values)
