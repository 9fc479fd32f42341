"""Exception hierarchy for pcbz.

Programmer errors (bad predictor ids, mismatched shapes, invalid options)
raise plain ValueError/TypeError.  The classes below are reserved for
problems with *data*: malformed input files, damaged archives, payloads
that fail to decode.
"""


class PcbzError(Exception):
    """Base class for all pcbz data errors."""


class UnsupportedImageError(PcbzError):
    """Input image or raw stack cannot be ingested (bad header, wrong
    maxval, size mismatch against its sidecar)."""


class ContainerFormatError(PcbzError):
    """Archive bytes do not form a readable container."""


class NotAContainerError(ContainerFormatError):
    """Leading magic bytes are not the container signature."""


class CorruptContainerError(ContainerFormatError):
    """Structurally recognized container with damaged contents.

    Carries enough location context (frame/block index, byte offset) in
    the message to point at the failing region.
    """


class BlockDecodeError(PcbzError):
    """A compressed payload block failed to decode."""

    def __init__(self, block_index: int, message: str = ""):
        self.block_index = block_index
        detail = message or "payload is not a valid bzip2 stream"
        super().__init__(f"block {block_index}: {detail}")
