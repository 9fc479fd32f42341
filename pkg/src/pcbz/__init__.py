"""pcbz: lossless compression for 16-bit light-field microscopy stacks.

The pipeline predicts each frame from its lenslet-aware neighborhoods,
scores candidate predictors with a fast 2D entropy proxy, codes the
winning symbol image as block-parallel bzip2 streams, and packs
everything into a deterministic container (magic "PCBZ").
"""

from .blocks import (BlockPlan, CompressedBlocks, DEFAULT_BLOCK_SIZE,
                     compress_blocks, decompress_blocks)
from .container import (ContainerHeader, FrameRecord, read_container,
                        write_container)
from .core import (Frame, FrameStack, LensletGeometry, PredictorSpec,
                   all_intra_specs, pack_symbols, unpack_symbols)
from .criterion import (EntropyReport, PairHistogram, approx_bwt,
                        candidate_entropy, entropy2d, pair_histogram,
                        select_predictor)
from .errors import (BlockDecodeError, ContainerFormatError,
                     CorruptContainerError, NotAContainerError, PcbzError,
                     UnsupportedImageError)
from .pgmio import read_pgm, read_raw_stack, write_pgm, write_raw_stack
from .pipeline import (CompressOptions, CompressResult, Metrics,
                       compress_stack, compress_stack_detailed,
                       decompress_stack, measure)
from .predictors import (LENSLET_STRIDE, PIXEL_ADJACENT, NeighborTriple,
                         apply_predictor, gather_neighbors, invert_predictor,
                         predict_frame, predict_value, temporal_delta,
                         temporal_undelta, unpredict_frame)
from .synth import MODES, SynthParams, generate

__version__ = "0.1.0"

__all__ = [
    "BlockDecodeError", "BlockPlan", "CompressOptions", "CompressResult",
    "CompressedBlocks", "ContainerFormatError", "ContainerHeader",
    "CorruptContainerError", "DEFAULT_BLOCK_SIZE", "EntropyReport", "Frame",
    "FrameRecord", "FrameStack", "LENSLET_STRIDE", "LensletGeometry",
    "MODES", "Metrics", "NeighborTriple", "NotAContainerError",
    "PIXEL_ADJACENT", "PairHistogram", "PcbzError", "PredictorSpec",
    "SynthParams", "UnsupportedImageError", "all_intra_specs", "approx_bwt",
    "apply_predictor", "candidate_entropy", "compress_blocks",
    "compress_stack", "compress_stack_detailed", "decompress_blocks",
    "decompress_stack", "entropy2d", "gather_neighbors", "generate",
    "invert_predictor", "measure", "pack_symbols", "pair_histogram",
    "predict_frame", "predict_value", "read_container", "read_pgm",
    "read_raw_stack", "select_predictor", "temporal_delta",
    "temporal_undelta", "unpack_symbols", "unpredict_frame",
    "write_container", "write_pgm", "write_raw_stack",
]
