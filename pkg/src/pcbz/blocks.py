"""Block-parallel bzip2 coding of byte streams.

The stream is split into fixed-size blocks (the last one may be shorter)
and each block is compressed independently as a standard bzip2 stream at
the maximum internal block size (level 9, the 900k setting).  Fixed-size
splitting keeps output bytes identical on any machine; worker count only
maps over blocks and never changes the bytes.  Any conforming bzip2
decoder can decode an individual block payload.
"""

from __future__ import annotations

import bz2
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .errors import BlockDecodeError

DEFAULT_BLOCK_SIZE = 4 * 1024 * 1024
_COMPRESS_LEVEL = 9


@dataclass(frozen=True)
class BlockPlan:
    """How a stream was split: uncompressed bytes per block and block count."""

    block_size: int
    block_count: int

    def __post_init__(self):
        if self.block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {self.block_size}")
        if self.block_count < 0:
            raise ValueError(f"block_count must be >= 0, got {self.block_count}")

    @classmethod
    def for_length(cls, length: int, block_size: int) -> "BlockPlan":
        if block_size < 1:
            raise ValueError(f"block_size must be >= 1, got {block_size}")
        return cls(block_size, -(-length // block_size) if length else 0)


@dataclass(frozen=True)
class CompressedBlocks:
    """Ordered compressed payloads plus the plan that produced them."""

    plan: BlockPlan
    payloads: tuple[bytes, ...]

    def __post_init__(self):
        if len(self.payloads) != self.plan.block_count:
            raise ValueError(
                f"{len(self.payloads)} payloads do not match plan of {self.plan.block_count} blocks"
            )

    @property
    def compressed_sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.payloads)

    @property
    def total_compressed(self) -> int:
        return sum(len(p) for p in self.payloads)


def _map_ordered(fn, items: Sequence, workers: int) -> list:
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def compress_blocks(stream: bytes, block_size: int = DEFAULT_BLOCK_SIZE,
                    workers: int = 1) -> CompressedBlocks:
    """Split and compress a byte stream; byte output is independent of
    worker count."""
    plan = BlockPlan.for_length(len(stream), block_size)
    view = memoryview(stream)
    chunks = [view[i * block_size:(i + 1) * block_size] for i in range(plan.block_count)]
    payloads = _map_ordered(lambda b: bz2.compress(b, _COMPRESS_LEVEL), chunks, workers)
    return CompressedBlocks(plan, tuple(payloads))


def decompress_blocks(blocks: CompressedBlocks, workers: int = 1) -> bytes:
    """Concatenated decoding of every block; inverse of compress_blocks."""

    def decode(indexed):
        i, payload = indexed
        try:
            return bz2.decompress(payload)
        except (OSError, EOFError, ValueError) as exc:
            raise BlockDecodeError(i, str(exc)) from exc

    parts = _map_ordered(decode, list(enumerate(blocks.payloads)), workers)
    return b"".join(parts)
