"""End-to-end discrete radar: channel, noise, image formation, target readout.

A scattering environment is a sparse set of delay-Doppler taps (k, l, h).
Illumination applies each tap as a delay shift plus Doppler ramp; the radar
image is the cross-ambiguity of the return against the transmitted waveform,
which equals the tap map blurred by the phase-scaled self-ambiguity of the
waveform.  With a bed-of-nails waveform and a crystallized region, the taps
can be read back exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .ambiguity import AmbiguitySurface, cross_ambiguity_naive, fast_cross_ambiguity
from .ddcore import PeriodicSequence
from .errors import (
    ConfigurationError,
    GridMismatch,
    ModulusMismatch,
    NotCrystallized,
    ZeroSignal,
)
from .modmath import Modulus
from .subgroups import DDRegion, LineSubgroup, crystallization_check

__all__ = [
    "RadarImage",
    "ScatteringEnvironment",
    "add_noise",
    "apply_channel",
    "form_image",
    "predicted_image",
    "readout_targets",
    "scene_from_json",
    "scene_to_json",
]


@dataclass(frozen=True)
class ScatteringEnvironment:
    """Sparse delay-Doppler channel: taps (k, l, h) with distinct coordinates."""

    mod: Modulus
    taps: tuple

    def __post_init__(self) -> None:
        mn = self.mod.MN
        normed = tuple((k % mn, l % mn, complex(h)) for k, l, h in self.taps)
        coords = [(k, l) for k, l, _ in normed]
        if len(set(coords)) != len(coords):
            raise ConfigurationError(f"duplicate tap coordinates in {coords}")
        object.__setattr__(self, "taps", normed)


@dataclass(frozen=True)
class RadarImage:
    """Estimated tap map on an ambiguity grid plus run metadata."""

    surface: AmbiguitySurface
    meta: dict = field(default_factory=dict)


def apply_channel(env: ScatteringEnvironment, x: PeriodicSequence) -> PeriodicSequence:
    """y[n] = sum_taps h * x[(n-k) mod MN] * exp(j*2*pi*l*(n-k)/MN)."""
    if env.mod != x.mod:
        raise ModulusMismatch("environment and waveform use different moduli")
    mn = env.mod.MN
    n = np.arange(mn)
    out = np.zeros(mn, dtype=np.complex128)
    for k, l, h in env.taps:
        offsets = (n - k) % mn
        out += h * x.samples[offsets] * np.exp(2j * np.pi * l * offsets / mn)
    return PeriodicSequence(env.mod, out)


def add_noise(y: PeriodicSequence, snr_db: float | None, seed: int) -> PeriodicSequence:
    """Add circularly-symmetric complex Gaussian noise at the requested SNR.

    Per-sample variance solves 10*log10(||y||^2 / E||w||^2) = snr_db, so the
    quoted SNR is total signal energy over expected total noise energy.
    Deterministic for a fixed seed; snr_db = None (or +inf) returns y as is.
    """
    if snr_db is None or snr_db == float("inf"):
        return y
    energy = y.norm() ** 2
    if energy == 0.0:
        raise ZeroSignal("cannot set an SNR against a zero-energy signal")
    mn = y.mod.MN
    var = energy / (mn * 10.0 ** (snr_db / 10.0))
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(mn) + 1j * rng.standard_normal(mn)
    w *= np.sqrt(var / 2.0)
    return PeriodicSequence(y.mod, y.samples + w)


def form_image(
    y: PeriodicSequence,
    x: PeriodicSequence,
    grid: str = "full",
    pulsone_indices: tuple[int, int] | None = None,
    transform: tuple[str, object] | None = None,
    workers: int = 1,
) -> RadarImage:
    """Radar image: surface[k, l] = A_{y,x}[k, l].

    When the reference x is the pulsone with indices (k0, l0), or such a
    pulsone passed through a known transform, the surface is produced by the
    O(1)-per-point fast engine; otherwise by the naive oracle.  `transform`
    is ("lfm", A) or ("gdaft", SL2Element) describing how x was built from
    the pulsone.
    """
    if y.mod != x.mod:
        raise ModulusMismatch("return and reference use different moduli")
    meta = {"grid": grid}
    if pulsone_indices is None:
        # the return y is a raw channel output; unit-norm semantics apply to x only
        surface = cross_ambiguity_naive(y, x, grid=grid, workers=workers, warn_nonunit=False)
        meta["engine"] = "naive"
        return RadarImage(surface, meta)
    k0, l0 = pulsone_indices
    meta["engine"] = "fast"
    meta["pulsone"] = (k0, l0)
    if transform is not None:
        meta["transform"] = transform[0]
    surface = fast_cross_ambiguity(y, k0, l0, transform=transform, grid=grid)
    return RadarImage(surface, meta)


def predicted_image(env: ScatteringEnvironment, a_x: AmbiguitySurface) -> AmbiguitySurface:
    """Independent oracle for form_image: taps blurred by the self-ambiguity.

    pred[k, l] = sum_taps h * exp(j*2*pi*l_tap*(k - k_tap)/MN)
                 * A_x[(k - k_tap) mod MN, (l - l_tap) mod MN].
    """
    if a_x.grid != "full":
        raise GridMismatch("predicted_image needs the full-grid self-ambiguity")
    if env.mod != a_x.mod:
        raise ModulusMismatch("environment and surface use different moduli")
    mn = env.mod.MN
    idx = np.arange(mn)
    out = np.zeros((mn, mn), dtype=np.complex128)
    for k_t, l_t, h in env.taps:
        rows = (idx - k_t) % mn
        cols = (idx - l_t) % mn
        phases = np.exp(2j * np.pi * l_t * (idx - k_t) / mn)
        out += h * phases[:, None] * a_x.values[np.ix_(rows, cols)]
    return AmbiguitySurface(env.mod, "full", out)


def readout_targets(
    img: RadarImage,
    line: LineSubgroup,
    region: DDRegion,
    threshold: float | None = None,
) -> list[tuple[int, int, complex]]:
    """Read taps off a crystallized region of the image.

    Refuses (NotCrystallized) when region translates by the line support
    overlap, since the image would alias.  `threshold` is an absolute
    magnitude cut; None means half the strongest magnitude in the region.
    Coordinates are returned reduced mod MN, sorted by (k, l).
    """
    if img.surface.mod != line.mod:
        raise ModulusMismatch("image and line subgroup use different moduli")
    if not crystallization_check(line, region):
        raise NotCrystallized(
            f"region {region} aliases under the ({line.c}, {line.d}) line support"
        )
    mod = line.mod
    if img.surface.grid != "full":
        raise GridMismatch("readout needs a full-grid image")
    mn = mod.MN
    values = {}
    for k, l in region.points():
        values[(k % mn, l % mn)] = complex(img.surface.values[k % mn, l % mn])
    if threshold is None:
        peak = max(abs(v) for v in values.values())
        threshold = 0.5 * peak
    hits = [(k, l, v) for (k, l), v in values.items() if abs(v) >= threshold]
    hits.sort(key=lambda t: (t[0], t[1]))
    return hits


# ---------------------------------------------------------------------------
# Scene files: JSON of the form
# {"M": 3, "N": 5, "taps": [{"k": 2, "l": 3, "re": 1.0, "im": 0.0}]}


def scene_to_json(env: ScatteringEnvironment, path) -> None:
    doc = {
        "M": env.mod.M,
        "N": env.mod.N,
        "taps": [
            {"k": k, "l": l, "re": h.real, "im": h.imag} for k, l, h in env.taps
        ],
    }
    with open(path, "w", encoding="ascii") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


def scene_from_json(path, allow_composite: bool = False) -> ScatteringEnvironment:
    with open(path, "r", encoding="ascii") as fh:
        doc = json.load(fh)
    try:
        mod = Modulus(int(doc["M"]), int(doc["N"]), allow_composite=allow_composite)
        taps = [
            (int(t["k"]), int(t["l"]), float(t["re"]) + 1j * float(t["im"]))
            for t in doc["taps"]
        ]
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed scene file {path}: {exc}") from exc
    return ScatteringEnvironment(mod, tuple(taps))
