# The symbol stream is coded as fixed-size blocks, each an ordinary
# bzip2 stream. Blocks decode independently, output bytes never depend
# on the worker count, and any bzip2 tool can decode a single block.

import bz2

import numpy as np

from pcbz import compress_blocks, decompress_blocks

rng = np.random.default_rng(0)
stream = rng.integers(0, 16, 3_000_000, dtype=np.uint8).tobytes()

blocks = compress_blocks(stream, block_size=1024 * 1024, workers=4)
print(f"{len(stream)} bytes -> {blocks.plan.block_count} blocks, "
      f"{blocks.total_compressed} compressed bytes")
print(f"per-block sizes: {blocks.compressed_sizes}")

# every payload is a standard stream ("BZh" magic), individually decodable
for i, payload in enumerate(blocks.payloads):
    assert payload[:3] == b"BZh"
    chunk = bz2.decompress(payload)          # plain stdlib decoder
    assert chunk == stream[i * 1024 * 1024:(i + 1) * 1024 * 1024]
print("each block decodes on its own with a stock bzip2 decoder")

# worker count is a speed knob, never a bytes knob
assert compress_blocks(stream, 1024 * 1024, workers=1).payloads == blocks.payloads
assert decompress_blocks(blocks, workers=8) == stream
print("bytes identical across worker counts; round trip exact")
