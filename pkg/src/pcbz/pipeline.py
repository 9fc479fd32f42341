"""End-to-end compression and decompression of frame stacks.

Per frame the compressor (1) picks a predictor, either by the entropy
criterion over the candidate set or forced by the caller, with frame 0
never temporal; (2) forms the symbol image (temporal delta first when
flagged, then intra prediction); (3) packs it high/low byte row-major;
(4) codes it as independent bzip2 blocks; and finally writes one
container.  Decompression replays the exact inverse, decoding frames in
order so temporal deltas always see the already reconstructed previous
frame.  Output bytes are a pure function of (stack, options): worker
count changes speed only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .blocks import DEFAULT_BLOCK_SIZE, compress_blocks, decompress_blocks
from .container import blocks_for_frame, read_container, write_container
from .core import Frame, FrameStack, LensletGeometry, PredictorSpec, pack_symbols, unpack_symbols
from .criterion import EntropyReport, default_candidates, select_predictor
from .predictors import apply_predictor, invert_predictor


@dataclass(frozen=True)
class CompressOptions:
    """Knobs for compress_stack.

    candidates: predictor set the criterion chooses from (None = all
    intra ids, doubled with the temporal flag when enabled); temporal
    candidates in an explicit list are only used where a previous frame
    exists.  forced bypasses the criterion entirely.  workers parallelize
    candidate scoring and block coding without affecting output bytes.
    """

    candidates: tuple[PredictorSpec, ...] | None = None
    forced: PredictorSpec | None = None
    block_size: int = DEFAULT_BLOCK_SIZE
    workers: int = 1
    temporal: bool = True

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError(f"workers must be >= 1, got {self.workers}")
        if self.block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {self.block_size}")
        if self.candidates is not None and not self.candidates:
            raise ValueError("candidate set must not be empty")


@dataclass
class CompressResult:
    """Container bytes plus what the pipeline did to produce them."""

    data: bytes
    specs: list[PredictorSpec]
    reports: list[EntropyReport | None]
    select_seconds: float = 0.0
    encode_seconds: float = 0.0


def _intra_only(spec: PredictorSpec) -> PredictorSpec:
    return PredictorSpec(False, spec.intra_id) if spec.temporal else spec


def _frame_candidates(opts: CompressOptions, have_prev: bool) -> tuple[PredictorSpec, ...]:
    if opts.candidates is None:
        return default_candidates(have_prev, opts.temporal)
    usable = tuple(s for s in opts.candidates if have_prev or not s.temporal)
    if not usable:
        raise ValueError("no usable candidate for a frame without a previous frame")
    return usable


def compress_stack_detailed(stack: FrameStack, opts: CompressOptions | None = None) -> CompressResult:
    """compress_stack plus per-frame selection reports and phase timings."""
    opts = opts or CompressOptions()
    specs: list[PredictorSpec] = []
    reports: list[EntropyReport | None] = []
    encoded = []
    select_seconds = 0.0
    encode_seconds = 0.0

    prev: Frame | None = None
    for i, frame in enumerate(stack):
        have_prev = prev is not None and opts.temporal
        if opts.forced is not None:
            spec = opts.forced if have_prev else _intra_only(opts.forced)
            report = None
        else:
            t0 = time.perf_counter()
            report = select_predictor(frame, prev if have_prev else None,
                                      _frame_candidates(opts, have_prev),
                                      workers=opts.workers)
            select_seconds += time.perf_counter() - t0
            spec = report.selected

        t0 = time.perf_counter()
        residual = apply_predictor(frame, spec, prev)
        blocks = compress_blocks(pack_symbols(residual.samples),
                                 opts.block_size, opts.workers)
        encode_seconds += time.perf_counter() - t0

        specs.append(spec)
        reports.append(report)
        encoded.append((spec, blocks))
        prev = frame

    data = write_container(stack.width, stack.height,
                           stack.geometry.pitch_x, stack.geometry.pitch_y,
                           opts.block_size, encoded)
    return CompressResult(data, specs, reports, select_seconds, encode_seconds)


def compress_stack(stack: FrameStack, opts: CompressOptions | None = None) -> bytes:
    """Compress a stack into container bytes."""
    return compress_stack_detailed(stack, opts).data


def decompress_stack(data, workers: int = 1) -> FrameStack:
    """Exact inverse of compress_stack; reconstructs the stack bit-for-bit."""
    header, records, payloads = read_container(data)
    geometry = LensletGeometry(header.pitch_x, header.pitch_y)
    frames: list[Frame] = []
    prev: Frame | None = None
    for i, rec in enumerate(records):
        blocks = blocks_for_frame(header, rec, payloads[i])
        stream = decompress_blocks(blocks, workers)
        try:
            samples = unpack_symbols(stream, header.width, header.height)
        except ValueError as exc:
            from .errors import CorruptContainerError
            raise CorruptContainerError(f"frame {i}: {exc}") from exc
        residual = Frame(samples, geometry)
        frame = invert_predictor(residual, rec.spec, prev)
        frames.append(frame)
        prev = frame
    return FrameStack(tuple(frames))


@dataclass
class Metrics:
    """Size and (optional) timing figures for one compressed stack."""

    uncompressed_bytes: int
    container_bytes: int
    compression_ratio: float
    bits_per_dim: float
    compress_seconds: float | None = None
    decompress_seconds: float | None = None


def measure(container: bytes, stack: FrameStack,
            compress_seconds: float | None = None,
            decompress_seconds: float | None = None) -> Metrics:
    """Report compression ratio and bits per pixel for a (container, stack)
    pair; wall-clock timings are passed through when the caller timed the
    corresponding calls."""
    n_pix = stack.width * stack.height * stack.frame_count
    return Metrics(
        uncompressed_bytes=stack.nbytes,
        container_bytes=len(container),
        compression_ratio=stack.nbytes / len(container),
        bits_per_dim=8.0 * len(container) / n_pix,
        compress_seconds=compress_seconds,
        decompress_seconds=decompress_seconds,
    )
