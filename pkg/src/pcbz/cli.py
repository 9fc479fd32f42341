"""Command line front end.

Subcommands: compress, decompress, inspect, gen, bench.  Every path is a
thin wrapper over the library; no computation happens here beyond
argument parsing and output formatting.

Exit codes: 0 success, 1 usage error, 2 I/O or file-format error,
3 corrupted archive data.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import time

from .blocks import DEFAULT_BLOCK_SIZE
from .container import read_container
from .core import FrameStack, LensletGeometry, PredictorSpec, all_intra_specs
from .criterion import select_predictor
from .errors import (BlockDecodeError, ContainerFormatError, CorruptContainerError,
                     PcbzError, UnsupportedImageError)
from .pgmio import read_pgm, read_raw_stack, write_pgm, write_raw_stack
from .pipeline import CompressOptions, compress_stack, decompress_stack, measure
from .synth import MODES, SynthParams, generate

THREADS_ENV = "PCBZ_THREADS"

_CSV_COLUMNS = ("sample_id", "mode", "noise_sigma", "predictor_byte", "entropy_bits",
                "container_bytes", "bits_per_dim", "ratio", "compress_ms",
                "decompress_ms", "selected_flag")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; this tool reserves 2 for I/O errors
    def error(self, message):
        raise _UsageError(message)


def _parse_pair(text: str, what: str) -> tuple[int, int]:
    try:
        a, _, b = text.lower().partition("x")
        pair = int(a), int(b)
    except ValueError:
        raise _UsageError(f"{what} must look like WxH, got {text!r}")
    if pair[0] < 1 or pair[1] < 1:
        raise _UsageError(f"{what} components must be positive, got {text!r}")
    return pair


def _parse_predictor(text: str) -> PredictorSpec | None:
    if text == "auto":
        return None
    head, _, tail = text.partition(",")
    temporal = False
    if tail:
        if tail != "temporal":
            raise _UsageError(f"predictor suffix must be 'temporal', got {tail!r}")
        temporal = True
    try:
        return PredictorSpec(temporal, int(head))
    except ValueError as exc:
        raise _UsageError(f"bad predictor spec {text!r}: {exc}")


def _parse_noise_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip() != ""]
    except ValueError:
        raise _UsageError(f"noise list must be comma-separated numbers, got {text!r}")
    if not values:
        raise _UsageError("noise list must not be empty")
    return values


def _parse_modes(text: str) -> list[str]:
    modes = [m.strip() for m in text.split(",") if m.strip()]
    for m in modes:
        if m not in MODES:
            raise _UsageError(f"unknown mode {m!r}, choose from {','.join(MODES)}")
    if not modes:
        raise _UsageError("mode list must not be empty")
    return modes


def _default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            n = int(env)
            if n >= 1:
                return n
        except ValueError:
            pass
    return os.cpu_count() or 1


def _resolve_input(args) -> str:
    named = getattr(args, "input", None)
    positional = getattr(args, "input_pos", None)
    if named and positional:
        raise _UsageError("input given both positionally and with -i/--input")
    path = named or positional
    if not path:
        raise _UsageError("no input file given")
    return path


def _read_stack(path: str, pitch: tuple[int, int] | None) -> FrameStack:
    if path.endswith(".pgm"):
        geo = LensletGeometry(*pitch) if pitch else LensletGeometry()
        return FrameStack((read_pgm(path, geo),))
    stack = read_raw_stack(path)
    if pitch:
        geo = LensletGeometry(*pitch)
        stack = FrameStack.from_array(stack.to_array(), geo)
    return stack


def _write_stack(path: str, stack: FrameStack) -> None:
    if path.endswith(".pgm"):
        if stack.frame_count != 1:
            raise _UsageError(
                f"{stack.frame_count} frames cannot go into one PGM; use a .raw output"
            )
        write_pgm(path, stack[0])
    else:
        write_raw_stack(path, stack)


def _cmd_compress(args) -> int:
    in_path = _resolve_input(args)
    if not args.output:
        raise _UsageError("compress requires -o/--output")
    stack = _read_stack(in_path, args.pitch)
    opts = CompressOptions(
        forced=args.predictor,
        block_size=args.block_size,
        workers=args.threads,
        temporal=args.temporal,
    )
    t0 = time.perf_counter()
    data = compress_stack(stack, opts)
    elapsed = time.perf_counter() - t0
    with open(args.output, "wb") as fh:
        fh.write(data)
    m = measure(data, stack, compress_seconds=elapsed)
    print(f"{in_path} -> {args.output}: {m.uncompressed_bytes} -> {m.container_bytes} bytes, "
          f"ratio {m.compression_ratio:.3f}, {m.bits_per_dim:.3f} bits/dim, {elapsed:.3f} s")
    return 0


def _cmd_decompress(args) -> int:
    in_path = _resolve_input(args)
    if not args.output:
        raise _UsageError("decompress requires -o/--output")
    with open(in_path, "rb") as fh:
        data = fh.read()
    t0 = time.perf_counter()
    stack = decompress_stack(data, workers=args.threads)
    elapsed = time.perf_counter() - t0
    _write_stack(args.output, stack)
    print(f"{in_path} -> {args.output}: {len(data)} -> {stack.nbytes} bytes, {elapsed:.3f} s")
    return 0


def _cmd_inspect(args) -> int:
    in_path = _resolve_input(args)
    with open(in_path, "rb") as fh:
        data = fh.read()
    header, records, _payloads = read_container(data)
    print(f"file: {in_path}")
    print(f"size: {len(data)}")
    print("magic: PCBZ")
    print("version: 1")
    print("bit_depth: 16")
    print(f"width: {header.width}")
    print(f"height: {header.height}")
    print(f"frames: {header.frame_count}")
    print(f"pitch: {header.pitch_x}x{header.pitch_y}")
    print(f"block_size: {header.block_size}")
    print(f"temporal_used: {'yes' if header.temporal_used else 'no'}")
    for i, rec in enumerate(records):
        sizes = ",".join(str(s) for s in rec.block_sizes)
        print(f"frame {i}: predictor=0x{rec.spec.to_byte():02X} name={rec.spec.describe()} "
              f"blocks={rec.block_count} compressed={rec.payload_size} block_sizes={sizes}")
    total = sum(rec.payload_size for rec in records)
    print(f"payload_total: {total}")
    return 0


def _cmd_gen(args) -> int:
    if not args.output:
        raise _UsageError("gen requires -o/--output directory")
    os.makedirs(args.output, exist_ok=True)
    width, height = args.size
    pitch_x, pitch_y = args.pitch or (1, 1)
    for mode in args.modes:
        for sigma in args.sweep_noise:
            params = SynthParams(
                width=width, height=height, pitch_x=pitch_x, pitch_y=pitch_y,
                mode=mode, noise_sigma=sigma, photon_scale=args.photon_scale,
                frames=args.frames, drift=args.drift, seed=args.seed,
            )
            stack = generate(params)
            name = f"{mode}_noise{sigma:g}_seed{args.seed}.raw"
            path = os.path.join(args.output, name)
            write_raw_stack(path, stack)
            print(path)
    return 0


def _bench_rows(mode: str, sigma: float, args):
    width, height = args.size
    pitch_x, pitch_y = args.pitch or (1, 1)
    params = SynthParams(
        width=width, height=height, pitch_x=pitch_x, pitch_y=pitch_y,
        mode=mode, noise_sigma=sigma, photon_scale=args.photon_scale,
        frames=1, seed=args.seed,
    )
    stack = generate(params)
    sample_id = f"{mode}_n{sigma:g}_s{args.seed}"
    report = select_predictor(stack[0], candidates=all_intra_specs(),
                              workers=args.threads)
    rows = []
    for spec, entropy in report.entries:
        opts = CompressOptions(forced=spec, workers=args.threads, temporal=False)
        t0 = time.perf_counter()
        data = compress_stack(stack, opts)
        t1 = time.perf_counter()
        back = decompress_stack(data, workers=args.threads)
        t2 = time.perf_counter()
        if back != stack:
            raise PcbzError(f"round trip failed for {sample_id} predictor {spec.describe()}")
        m = measure(data, stack)
        rows.append({
            "sample_id": sample_id,
            "mode": mode,
            "noise_sigma": f"{sigma:g}",
            "predictor_byte": f"0x{spec.to_byte():02X}",
            "entropy_bits": f"{entropy:.6f}",
            "container_bytes": m.container_bytes,
            "bits_per_dim": f"{m.bits_per_dim:.6f}",
            "ratio": f"{m.compression_ratio:.6f}",
            "compress_ms": f"{1000 * (t1 - t0):.3f}",
            "decompress_ms": f"{1000 * (t2 - t1):.3f}",
            "selected_flag": int(spec == report.selected),
        })
    return rows


def _cmd_bench(args) -> int:
    rows = []
    for mode in args.modes:
        for sigma in args.sweep_noise:
            rows.extend(_bench_rows(mode, sigma, args))
    out = open(args.csv, "w", newline="") if args.csv else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=_CSV_COLUMNS)
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.csv:
            out.close()
            print(f"wrote {len(rows)} rows to {args.csv}")
    return 0


def _add_io_args(p, output_help: str):
    p.add_argument("input_pos", nargs="?", metavar="INPUT", help="input file")
    p.add_argument("-i", "--input", help="input file (alternative to the positional)")
    p.add_argument("-o", "--output", help=output_help)


def _add_gen_like_args(p):
    p.add_argument("--modes", type=_parse_modes, default=list(MODES),
                   help="comma-separated scene modes (default: all)")
    p.add_argument("--sweep-noise", type=_parse_noise_list, default=[0.0, 50.0, 200.0, 800.0],
                   help="comma-separated read-noise sigmas (default: 0,50,200,800)")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--size", type=lambda s: _parse_pair(s, "--size"), default=(96, 96),
                   help="frame size WxH (default 96x96)")
    p.add_argument("--photon-scale", type=float, default=0.05,
                   help="photon noise scale, 0 disables (default 0.05)")


def build_parser() -> _Parser:
    parser = _Parser(prog="pcbz", description="Lossless lenslet-image compression toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compress", help="compress a PGM frame or raw stack into a container")
    _add_io_args(p, "output container path")
    p.add_argument("--pitch", type=lambda s: _parse_pair(s, "--pitch"),
                   help="lenslet pitch WxH (required information for PGM inputs)")
    p.add_argument("--threads", type=int, default=_default_threads(),
                   help=f"worker count (default: ${THREADS_ENV} or CPU count)")
    p.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE,
                   help="uncompressed bytes per coding block (default 4 MiB)")
    p.add_argument("--predictor", type=_parse_predictor, default=None,
                   help="auto (default) or a forced id 0..12, optionally ',temporal'")
    p.add_argument("--temporal", choices=("on", "off"), default="on",
                   help="allow temporal prediction between frames (default on)")
    p.set_defaults(fn=_cmd_compress)

    p = sub.add_parser("decompress", help="restore a container to PGM or raw stack")
    _add_io_args(p, "output image/stack path")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(fn=_cmd_decompress)

    p = sub.add_parser("inspect", help="print container header and per-frame records")
    _add_io_args(p, argparse.SUPPRESS)
    p.set_defaults(fn=_cmd_inspect)

    p = sub.add_parser("gen", help="write a synthetic raw-stack corpus")
    p.add_argument("-o", "--output", help="output directory")
    _add_gen_like_args(p)
    p.add_argument("--pitch", type=lambda s: _parse_pair(s, "--pitch"), default=(6, 6),
                   help="lenslet pitch WxH (default 6x6)")
    p.add_argument("--frames", type=int, default=1, help="frames per stack")
    p.add_argument("--drift", type=float, default=0.0, help="scene drift in pixels/frame")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("bench", help="per-predictor compression sweep, emitted as CSV")
    _add_gen_like_args(p)
    p.add_argument("--pitch", type=lambda s: _parse_pair(s, "--pitch"), default=(6, 6),
                   help="lenslet pitch WxH (default 6x6)")
    p.add_argument("--csv", help="CSV output path (default: stdout)")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.set_defaults(fn=_cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "temporal", None) is not None:
            args.temporal = args.temporal == "on"
        if getattr(args, "threads", 1) < 1:
            raise _UsageError("--threads must be >= 1")
        return args.fn(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (CorruptContainerError, BlockDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UnsupportedImageError, ContainerFormatError, PcbzError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
