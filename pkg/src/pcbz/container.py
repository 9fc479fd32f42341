"""On-disk archive format (see FORMAT.md for the byte-level reference).

Layout, all integers little-endian:

    offset  size  field
    ------  ----  -----------------------------------------------
    0       4     magic "PCBZ"
    4       1     version (= 1)
    5       1     flags (bit 0: temporal prediction used somewhere)
    6       1     bit depth (= 16)
    7       1     reserved (= 0)
    8       4     width  (u32, pixels)
    12      4     height (u32, pixels)
    16      4     frame count (u32)
    20      2     lenslet pitch x (u16)
    22      2     lenslet pitch y (u16)
    24      4     uncompressed block size (u32, bytes)

followed by one record per frame:

    0       1     predictor byte (bit 7 temporal, bits 0-6 intra id)
    1       3     reserved (= 0)
    4       4     block count (u32)
    8       8*n   compressed size of each block (u64 each)

followed by every frame's block payloads concatenated in frame order,
blocks in index order.  Total overhead for F frames of B blocks each is
exactly 28 + F*(8 + 8*B) bytes.  Writing is deterministic: the same
inputs always produce the same bytes.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Sequence

from .blocks import BlockPlan, CompressedBlocks
from .core import PredictorSpec
from .errors import ContainerFormatError, CorruptContainerError, NotAContainerError

MAGIC = b"PCBZ"
VERSION = 1
BIT_DEPTH = 16
FLAG_TEMPORAL = 0x01

_HEADER = struct.Struct("<4sBBBBIIIHHI")
_RECORD_FIXED = struct.Struct("<B3xI")

HEADER_SIZE = _HEADER.size  # 28


@dataclass(frozen=True)
class ContainerHeader:
    width: int
    height: int
    frame_count: int
    pitch_x: int
    pitch_y: int
    block_size: int
    temporal_used: bool = False

    def __post_init__(self):
        for name in ("width", "height", "frame_count", "pitch_x", "pitch_y", "block_size"):
            v = getattr(self, name)
            if not isinstance(v, (int,)) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class FrameRecord:
    spec: PredictorSpec
    block_sizes: tuple[int, ...]

    @property
    def block_count(self) -> int:
        return len(self.block_sizes)

    @property
    def payload_size(self) -> int:
        return sum(self.block_sizes)


def write_container(width: int, height: int, pitch_x: int, pitch_y: int,
                    block_size: int,
                    frames: Sequence[tuple[PredictorSpec, CompressedBlocks]]) -> bytes:
    """Assemble header, per-frame records and payloads into archive bytes."""
    frames = list(frames)
    if not frames:
        raise ValueError("container must hold at least one frame")
    if frames[0][0].temporal:
        raise ValueError("frame 0 must not use a temporal predictor")
    temporal_used = any(spec.temporal for spec, _ in frames)
    flags = FLAG_TEMPORAL if temporal_used else 0

    out = bytearray()
    out += _HEADER.pack(MAGIC, VERSION, flags, BIT_DEPTH, 0,
                        width, height, len(frames), pitch_x, pitch_y, block_size)
    for spec, blocks in frames:
        sizes = blocks.compressed_sizes
        out += _RECORD_FIXED.pack(spec.to_byte(), len(sizes))
        out += struct.pack(f"<{len(sizes)}Q", *sizes)
    for _, blocks in frames:
        for payload in blocks.payloads:
            out += payload
    return bytes(out)


def read_container(data) -> tuple[ContainerHeader, list[FrameRecord], list[list[memoryview]]]:
    """Parse archive bytes into header, frame records and payload slices.

    Payloads are returned as zero-copy memoryview slices per frame, in
    block order.  Validates magic, version, bit depth, predictor bytes
    and that the payload region length matches the recorded block sizes
    exactly.
    """
    buf = memoryview(data)
    if len(buf) < 4 or bytes(buf[:4]) != MAGIC:
        raise NotAContainerError(
            f"bad magic {bytes(buf[:4])!r}, expected {MAGIC!r}"
        )
    if len(buf) < HEADER_SIZE:
        raise CorruptContainerError(
            f"truncated header: {len(buf)} bytes, need {HEADER_SIZE}"
        )
    (_, version, flags, bit_depth, _reserved,
     width, height, frame_count, pitch_x, pitch_y, block_size) = _HEADER.unpack_from(buf, 0)
    if version != VERSION:
        raise ContainerFormatError(f"unsupported container version {version}")
    if bit_depth != BIT_DEPTH:
        raise ContainerFormatError(f"unsupported bit depth {bit_depth}")
    if width < 1 or height < 1 or frame_count < 1 or pitch_x < 1 or pitch_y < 1 or block_size < 1:
        raise CorruptContainerError(
            f"non-positive header field (width={width} height={height} "
            f"frames={frame_count} pitch={pitch_x}x{pitch_y} block_size={block_size})"
        )
    header = ContainerHeader(width, height, frame_count, pitch_x, pitch_y,
                             block_size, bool(flags & FLAG_TEMPORAL))

    records: list[FrameRecord] = []
    offset = HEADER_SIZE
    for fi in range(frame_count):
        if offset + _RECORD_FIXED.size > len(buf):
            raise CorruptContainerError(f"truncated record for frame {fi} at offset {offset}")
        pbyte, block_count = _RECORD_FIXED.unpack_from(buf, offset)
        offset += _RECORD_FIXED.size
        try:
            spec = PredictorSpec.from_byte(pbyte)
        except ValueError as exc:
            raise CorruptContainerError(f"frame {fi}: {exc}") from exc
        if fi == 0 and spec.temporal:
            raise CorruptContainerError("frame 0 carries a temporal predictor flag")
        if offset + 8 * block_count > len(buf):
            raise CorruptContainerError(
                f"truncated block table for frame {fi} at offset {offset}"
            )
        sizes = struct.unpack_from(f"<{block_count}Q", buf, offset)
        offset += 8 * block_count
        records.append(FrameRecord(spec, tuple(sizes)))

    payloads: list[list[memoryview]] = []
    for fi, rec in enumerate(records):
        frame_payloads = []
        for bi, size in enumerate(rec.block_sizes):
            if offset + size > len(buf):
                raise CorruptContainerError(
                    f"payload truncated in frame {fi} block {bi}: "
                    f"need {size} bytes at offset {offset}, file ends at {len(buf)}"
                )
            frame_payloads.append(buf[offset:offset + size])
            offset += size
        payloads.append(frame_payloads)
    if offset != len(buf):
        raise CorruptContainerError(
            f"{len(buf) - offset} trailing bytes after payload region (offset {offset})"
        )
    return header, records, payloads


def blocks_for_frame(header: ContainerHeader, record: FrameRecord,
                     payloads: Sequence[memoryview]) -> CompressedBlocks:
    """Rebuild the CompressedBlocks value for one frame of a parsed container."""
    plan = BlockPlan(header.block_size, record.block_count)
    return CompressedBlocks(plan, tuple(bytes(p) for p in payloads))
