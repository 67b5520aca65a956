"""Command-line front end: waveforms, ambiguity surfaces, scene simulation, benchmarks.

Exit codes: 0 success, 2 usage error, 3 refused precondition (aliasing
readout, unsupported fast engine), 4 numeric validation failure (composite
modulus, non-coprime parameters).  All file outputs land under --out with
fixed names; every command is deterministic for a fixed --seed.  The
DDRADAR_THREADS environment variable caps the worker threads used by the
naive ambiguity engine.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

import numpy as np

from .ambiguity import (
    coded_waveform,
    cross_ambiguity_array,
    cross_ambiguity_fft,
    cross_ambiguity_naive,
    fast_cross_ambiguity,
    fast_pulsone_precompute,
    fast_pulsone_surface,
    surface_to_csv,
    surface_to_pgm,
    zc_sequence,
)
from .ddcore import PeriodicSequence, sequence_to_csv
from .errors import EngineUnsupported, PreconditionError, ValidationError
from .modmath import Modulus
from .radarsim import add_noise, apply_channel, form_image, readout_targets, scene_from_json
from .subgroups import DDRegion, LineSubgroup, chirp, eigenbasis_for_line, pulsone
from .symplectic import SL2Element, gdaft_apply, lfm_apply, papr_db, sl2_apply

__all__ = ["main"]


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("DDRADAR_THREADS", "1")))
    except ValueError:
        return 1


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"{what} must be 'a,b', got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{what} must be integers, got {text!r}") from exc


def _parse_region(text: str) -> DDRegion:
    try:
        k_part, l_part = text.split(",")
        k_min, k_max = (int(v) for v in k_part.split(":"))
        l_min, l_max = (int(v) for v in l_part.split(":"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"region must be 'kmin:kmax,lmin:lmax', got {text!r}"
        ) from exc
    return DDRegion(k_min, k_max, l_min, l_max)


def _parse_sl2(text: str, mod: Modulus) -> SL2Element:
    try:
        parts = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"--sl2 must be integers 'a,b,c,d', got {text!r}") from exc
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"--sl2 must be 'a,b,c,d', got {text!r}")
    return SL2Element(mod, *parts)


class WaveformSpec:
    """Parsed waveform description.

    `seq` is a PeriodicSequence for modulus-bound waveforms, otherwise
    `array` holds a modulus-free coded waveform.  `fast` carries
    (k0, l0, transform) when the waveform is a pulsone or a symplectic image
    of one, enabling the O(1)-per-point ambiguity engine.
    """

    def __init__(self, label, seq=None, array=None, fast=None):
        self.label = label
        self.seq = seq
        self.array = array
        self.fast = fast


def parse_waveform_spec(text: str, mod: Modulus) -> WaveformSpec:
    """Grammar: [lfm(A):|gdaft(a,b,c,d):] base, with base one of
    pulsone:k0,l0 | chirp:alpha[,beta[,gamma]] | zc:root | zc-coded:root,chip.
    """
    spec = text.strip()
    transform = None
    if spec.startswith("lfm(") or spec.startswith("gdaft("):
        head, _, rest = spec.partition(":")
        if not rest or not head.endswith(")"):
            raise argparse.ArgumentTypeError(f"malformed transform prefix in {text!r}")
        inner = head[head.index("(") + 1 : -1]
        try:
            if head.startswith("lfm"):
                transform = ("lfm", int(inner))
            else:
                transform = ("gdaft", _parse_sl2(inner, mod))
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"malformed transform {head!r}") from exc
        spec = rest

    kind, _, args = spec.partition(":")
    try:
        if kind == "pulsone":
            k0, l0 = _parse_pair(args, "pulsone indices")
            base = pulsone(mod, k0, l0)
            fast = (k0, l0, transform)
        elif kind == "chirp":
            vals = [int(v) for v in args.split(",")] if args else []
            if not 1 <= len(vals) <= 3:
                raise argparse.ArgumentTypeError(f"chirp needs alpha[,beta[,gamma]]: {text!r}")
            base = chirp(mod, *vals)
            fast = None
        elif kind == "zc":
            base = PeriodicSequence(mod, zc_sequence(int(args), mod.MN))
            fast = None
        elif kind == "zc-coded":
            root, chip_len = _parse_pair(args, "zc-coded parameters")
            if transform is not None:
                raise argparse.ArgumentTypeError("transforms do not apply to zc-coded waveforms")
            arr = coded_waveform(zc_sequence(root, mod.MN), np.ones(chip_len))
            return WaveformSpec(text, array=arr)
        else:
            raise argparse.ArgumentTypeError(f"unknown waveform kind {kind!r}")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"malformed waveform parameters in {text!r}") from exc

    if transform is None:
        return WaveformSpec(text, seq=base, fast=fast)
    if transform[0] == "lfm":
        seq = lfm_apply(transform[1], base)
    else:
        seq = gdaft_apply(transform[1], base)
    return WaveformSpec(text, seq=seq, fast=fast)


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# waveform


def cmd_waveform(args, parser) -> int:
    mod = Modulus(args.M, args.N, allow_composite=args.allow_composite)
    kind = args.kind
    if kind in ("gdaft-of", "lfm-of"):
        if args.base is None:
            parser.error(f"{kind} needs a base waveform kind")
        if kind == "gdaft-of" and args.sl2 is None:
            parser.error("gdaft-of needs --sl2 a,b,c,d")
        if kind == "lfm-of" and args.lfm is None:
            parser.error("lfm-of needs --lfm A")
        base_kind = args.base
    else:
        base_kind = kind

    if base_kind == "pulsone":
        seq = pulsone(mod, args.k0, args.l0)
    elif base_kind == "chirp":
        if args.alpha is None:
            parser.error("chirp needs --alpha")
        seq = chirp(mod, args.alpha, args.beta, args.gamma)
    elif base_kind == "zc":
        seq = PeriodicSequence(mod, zc_sequence(args.root, mod.MN))
    else:
        parser.error(f"unknown waveform kind {base_kind!r}")

    if kind == "gdaft-of":
        seq = gdaft_apply(_parse_sl2(args.sl2, mod), seq)
    elif kind == "lfm-of":
        seq = lfm_apply(args.lfm, seq)

    out = _out_dir(args)
    sequence_to_csv(seq, out / "waveform.csv")
    papr = papr_db(seq)
    line = f"papr_db={papr:.12g}"
    print(line)
    (out / "papr.txt").write_text(line + "\n", encoding="ascii")
    if args.self_ambiguity:
        surface = cross_ambiguity_fft(seq, seq)
        surface_to_pgm(surface.values, out / "selfambiguity.pgm", scale=args.scale, floor=args.floor)
    return 0


# ---------------------------------------------------------------------------
# ambiguity


def cmd_ambiguity(args, parser) -> int:
    mod = Modulus(args.M, args.N, allow_composite=args.allow_composite)
    x = parse_waveform_spec(args.x, mod)
    y = parse_waveform_spec(args.y, mod)
    out = _out_dir(args)

    if x.array is not None or y.array is not None:
        if x.array is None or y.array is None:
            parser.error("zc-coded waveforms can only be paired with zc-coded waveforms")
        if args.engine == "fast":
            raise EngineUnsupported("fast engine requires a pulsone-family reference")
        values = cross_ambiguity_array(x.array, y.array, workers=_workers())
    elif args.engine == "fast":
        if y.fast is None:
            raise EngineUnsupported(
                f"fast engine requires y to be a pulsone or a symplectic image of one, got {y.label!r}"
            )
        k0, l0, transform = y.fast
        values = fast_cross_ambiguity(x.seq, k0, l0, transform=transform, grid=args.grid).values
    else:
        values = cross_ambiguity_naive(x.seq, y.seq, grid=args.grid, workers=_workers()).values

    surface_to_csv(values, out / "ambiguity.csv")
    surface_to_pgm(values, out / "ambiguity.pgm", scale=args.scale, floor=args.floor)
    print(f"ambiguity surface {values.shape[0]}x{values.shape[1]} written to {out}")
    return 0


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args, parser) -> int:
    env = scene_from_json(args.scene, allow_composite=args.allow_composite)
    mod = env.mod
    line = LineSubgroup(mod, *_parse_pair(args.line, "--line"))
    region = _parse_region(args.region)

    if args.waveform == "eigen":
        basis = eigenbasis_for_line(line)
        if not 0 <= args.eigen_index < len(basis):
            parser.error(f"--eigen-index out of range 0..{len(basis) - 1}")
        seq = basis[args.eigen_index]
        fast = None
        if line.is_rectangular():
            fast = (args.eigen_index % mod.M, args.eigen_index // mod.M, None)
        spec = WaveformSpec("eigen", seq=seq, fast=fast)
    else:
        spec = parse_waveform_spec(args.waveform, mod)
        if spec.array is not None:
            parser.error("simulate needs a modulus-bound waveform, not zc-coded")

    y = apply_channel(env, spec.seq)
    y = add_noise(y, args.snr_db, args.seed)
    if spec.fast is not None:
        k0, l0, transform = spec.fast
        img = form_image(y, spec.seq, grid="full", pulsone_indices=(k0, l0), transform=transform)
    else:
        img = form_image(y, spec.seq, grid="full", workers=_workers())

    targets = readout_targets(img, line, region, threshold=args.threshold)
    out = _out_dir(args)
    surface_to_csv(img.surface, out / "image.csv")
    surface_to_pgm(img.surface.values, out / "image.pgm", scale=args.scale, floor=args.floor)
    doc = {
        "M": mod.M,
        "N": mod.N,
        "waveform": spec.label,
        "engine": img.meta.get("engine", "naive"),
        "snr_db": args.snr_db,
        "seed": args.seed,
        "targets": [
            {"k": k, "l": l, "re": v.real, "im": v.imag} for k, l, v in targets
        ],
    }
    with open(out / "targets.json", "w", encoding="ascii") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"recovered {len(targets)} target(s); outputs in {out}")
    return 0


# ---------------------------------------------------------------------------
# bench


def _bench_naive(x: PeriodicSequence, y: PeriodicSequence):
    return cross_ambiguity_naive(x, y, grid="fundamental")


def _bench_fast(x: PeriodicSequence, k0: int, l0: int):
    return fast_pulsone_surface(fast_pulsone_precompute(x, k0, l0))


def cmd_bench(args, parser) -> int:
    out = _out_dir(args)
    rng = np.random.default_rng(args.seed)
    rows = []
    for m, n in (_parse_pair(s, "--size") for s in args.size):
        mod = Modulus(m, n)
        samples = rng.standard_normal(mod.MN) + 1j * rng.standard_normal(mod.MN)
        x = PeriodicSequence(mod, samples / np.linalg.norm(samples))
        y = pulsone(mod, 0, 0)
        naive = _bench_naive(x, y)
        fast = _bench_fast(x, 0, 0)
        err = float(np.max(np.abs(naive.values - fast.values)))
        if err > 1e-10:
            raise ValidationError(f"fast/naive disagreement {err:.3e} at (M, N) = ({m}, {n})")
        t_naive = min(
            _timed(lambda: _bench_naive(x, y)) for _ in range(args.repeats)
        )
        t_fast = min(
            _timed(lambda: _bench_fast(x, 0, 0)) for _ in range(args.repeats)
        )
        ratio = t_naive / t_fast if t_fast > 0 else float("inf")
        rows.append((m, n, mod.MN, t_naive, t_fast, ratio, err))
        print(
            f"M={m} N={n} MN={mod.MN}: naive {t_naive:.6f}s fast {t_fast:.6f}s "
            f"ratio {ratio:.1f}x maxerr {err:.2e}"
        )
    with open(out / "bench.csv", "w", encoding="ascii") as fh:
        fh.write("M,N,MN,naive_seconds,fast_seconds,ratio,max_abs_diff\n")
        for m, n, mn, tn, tf, ratio, err in rows:
            fh.write(f"{m},{n},{mn},{tn:.9f},{tf:.9f},{ratio:.3f},{err:.3e}\n")
    return 0


def _timed(fn) -> float:
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddradar",
        description="Discrete delay-Doppler radar toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_mod=True):
        if with_mod:
            p.add_argument("--M", type=int, required=True, help="delay-axis prime")
            p.add_argument("--N", type=int, required=True, help="Doppler-axis prime")
        p.add_argument("--out", required=True, help="output directory")
        p.add_argument("--seed", type=int, default=0, help="deterministic seed")
        p.add_argument("--allow-composite", action="store_true",
                       help="skip primality checks (unsupported: maximality guarantees are lost)")
        p.add_argument("--scale", choices=("linear", "db"), default="linear",
                       help="PGM magnitude scaling")
        p.add_argument("--floor", type=float, default=-120.0, help="dB floor for --scale db")

    wf = sub.add_parser("waveform", help="generate a waveform, report PAPR")
    wf.add_argument("kind", choices=("pulsone", "chirp", "zc", "gdaft-of", "lfm-of"))
    wf.add_argument("base", nargs="?", choices=("pulsone", "chirp", "zc"),
                    help="base kind for gdaft-of / lfm-of")
    add_common(wf)
    wf.add_argument("--k0", type=int, default=0)
    wf.add_argument("--l0", type=int, default=0)
    wf.add_argument("--alpha", type=int, default=None)
    wf.add_argument("--beta", type=int, default=0)
    wf.add_argument("--gamma", type=int, default=0)
    wf.add_argument("--root", type=int, default=1, help="Zadoff-Chu root")
    wf.add_argument("--sl2", default=None, help="a,b,c,d entries for gdaft-of")
    wf.add_argument("--lfm", type=int, default=None, help="rate A for lfm-of")
    wf.add_argument("--self-ambiguity", action="store_true",
                    help="also write the full-grid self-ambiguity PGM")
    wf.set_defaults(func=cmd_waveform)

    amb = sub.add_parser("ambiguity", help="cross-ambiguity surface of two waveforms")
    add_common(amb)
    amb.add_argument("--x", required=True, help="waveform spec, e.g. pulsone:0,0")
    amb.add_argument("--y", required=True, help="waveform spec (reference)")
    amb.add_argument("--engine", choices=("naive", "fast"), default="naive")
    amb.add_argument("--grid", choices=("fundamental", "full"), default="fundamental")
    amb.set_defaults(func=cmd_ambiguity)

    sim = sub.add_parser("simulate", help="scene -> image -> target readout")
    add_common(sim, with_mod=False)
    sim.add_argument("--scene", required=True, help="scene JSON file")
    sim.add_argument("--waveform", default="eigen",
                     help="waveform spec or 'eigen' for an eigenvector of --line")
    sim.add_argument("--line", required=True, help="line generator c,d")
    sim.add_argument("--region", required=True, help="readout region kmin:kmax,lmin:lmax")
    sim.add_argument("--eigen-index", type=int, default=0)
    sim.add_argument("--snr-db", type=float, default=None,
                     help="add noise at this SNR; omit for noiseless")
    sim.add_argument("--threshold", type=float, default=None,
                     help="absolute readout threshold; default half the region peak")
    sim.set_defaults(func=cmd_simulate)

    bench = sub.add_parser("bench", help="naive vs fast fundamental-grid timing")
    add_common(bench, with_mod=False)
    bench.add_argument("--size", action="append", required=True,
                       help="M,N pair; repeatable")
    bench.add_argument("--repeats", type=int, default=5, help="timing repetitions (best-of)")
    bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    raise SystemExit(main())
