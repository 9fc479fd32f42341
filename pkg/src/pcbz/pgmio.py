"""Image and raw-stack file I/O.

Two interchange formats, both bit-exact:

  - binary PGM ("P5") with maxval 65535, big-endian samples.  PGM stores
    no lenslet geometry, so the pitch is supplied by the caller (or on
    the command line).
  - headerless raw stacks: little-endian uint16 samples, frame-major,
    accompanied by a text sidecar `<file>.meta` of `key=value` lines
    with exactly the keys width, height, frames, pitch_x, pitch_y.
"""

from __future__ import annotations

import os

import numpy as np

from .core import Frame, FrameStack, LensletGeometry
from .errors import UnsupportedImageError

_SIDECAR_KEYS = ("width", "height", "frames", "pitch_x", "pitch_y")


def write_pgm(path, frame: Frame) -> None:
    """Write one frame as binary 16-bit PGM."""
    header = f"P5\n{frame.width} {frame.height}\n65535\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(frame.samples.astype(">u2").tobytes())


def _pgm_tokens(data: bytes, count: int) -> tuple[list[bytes], int]:
    """Read `count` whitespace-separated header tokens, skipping comments;
    returns tokens and the offset just past the single whitespace byte
    that terminates the last one."""
    tokens = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i:i + 1].isspace():
            i += 1
        if i < n and data[i:i + 1] == b"#":
            while i < n and data[i] != 0x0A:
                i += 1
            continue
        start = i
        while i < n and not data[i:i + 1].isspace():
            i += 1
        if i == start:
            raise UnsupportedImageError("truncated PGM header")
        tokens.append(data[start:i])
        if len(tokens) == count:
            if i >= n:
                raise UnsupportedImageError("PGM header not followed by sample data")
            i += 1  # exactly one whitespace byte before the raster
    return tokens, i


def read_pgm(path, geometry: LensletGeometry | None = None) -> Frame:
    """Read a binary 16-bit PGM; only maxval 65535 is supported."""
    with open(path, "rb") as fh:
        data = fh.read()
    if not data.startswith(b"P5"):
        raise UnsupportedImageError(f"{path}: not a binary PGM (P5) file")
    try:
        (magic, w_tok, h_tok, maxval_tok), offset = _pgm_tokens(data, 4)
        width, height, maxval = int(w_tok), int(h_tok), int(maxval_tok)
    except (ValueError, UnsupportedImageError) as exc:
        raise UnsupportedImageError(f"{path}: malformed PGM header: {exc}") from exc
    if maxval != 65535:
        raise UnsupportedImageError(
            f"{path}: unsupported maxval {maxval}, only 16-bit (65535) PGM is handled"
        )
    if width < 1 or height < 1:
        raise UnsupportedImageError(f"{path}: bad dimensions {width}x{height}")
    expected = 2 * width * height
    raster = data[offset:offset + expected]
    if len(raster) != expected:
        raise UnsupportedImageError(
            f"{path}: expected {expected} raster bytes, found {len(raster)}"
        )
    samples = np.frombuffer(raster, dtype=">u2").reshape(height, width).astype(np.uint16)
    return Frame(samples, geometry or LensletGeometry())


def _sidecar_path(path) -> str:
    return os.fspath(path) + ".meta"


def write_raw_stack(path, stack: FrameStack) -> None:
    """Write a stack as raw little-endian samples plus its sidecar."""
    with open(path, "wb") as fh:
        for frame in stack:
            fh.write(frame.samples.astype("<u2").tobytes())
    geo = stack.geometry
    meta = (
        f"width={stack.width}\n"
        f"height={stack.height}\n"
        f"frames={stack.frame_count}\n"
        f"pitch_x={geo.pitch_x}\n"
        f"pitch_y={geo.pitch_y}\n"
    )
    with open(_sidecar_path(path), "w", encoding="ascii") as fh:
        fh.write(meta)


def read_raw_stack(path) -> FrameStack:
    """Read a raw stack, validating its size against the sidecar."""
    sidecar = _sidecar_path(path)
    try:
        with open(sidecar, "r", encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise UnsupportedImageError(f"{path}: missing sidecar {sidecar}: {exc}") from exc
    fields: dict[str, int] = {}
    for line in lines:
        if not line.strip():
            continue
        if "=" not in line:
            raise UnsupportedImageError(f"{sidecar}: malformed line {line!r}")
        key, _, value = line.partition("=")
        try:
            fields[key.strip()] = int(value)
        except ValueError as exc:
            raise UnsupportedImageError(f"{sidecar}: bad value in {line!r}") from exc
    if set(fields) != set(_SIDECAR_KEYS):
        raise UnsupportedImageError(
            f"{sidecar}: keys must be exactly {set(_SIDECAR_KEYS)}, got {set(fields)}"
        )
    if any(v < 1 for v in fields.values()):
        raise UnsupportedImageError(f"{sidecar}: all fields must be positive")

    width, height, frames = fields["width"], fields["height"], fields["frames"]
    with open(path, "rb") as fh:
        data = fh.read()
    expected = 2 * width * height * frames
    if len(data) != expected:
        raise UnsupportedImageError(
            f"{path}: {len(data)} bytes, sidecar implies {expected} "
            f"({frames} frames of {width}x{height})"
        )
    volume = np.frombuffer(data, dtype="<u2").reshape(frames, height, width).astype(np.uint16)
    return FrameStack.from_array(volume, LensletGeometry(fields["pitch_x"], fields["pitch_y"]))
