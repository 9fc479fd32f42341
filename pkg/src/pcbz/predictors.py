"""Intra-frame predictors over the two lenslet neighbor systems.

A lenslet image carries two kinds of continuity.  Adjacent sensor pixels
sample nearby angles under the same microlens ("pixel-adjacent"
neighbors: left, top, top-left pixels).  Pixels one lenslet pitch apart
sample the same angle at the neighboring spatial location
("lenslet-stride" neighbors: same intra-lenslet offset under the left,
top and top-left lenslets).  The literature is not consistent about
which of these gets called "spatial" and which "angular", so this module
sticks to the two mechanical names.

Thirteen intra predictors are defined.  Id 0 is the identity.  Ids 1-4
apply the four classic JPEG-style functions

    f1 = A + B - C
    f2 = A + (B - C)/2
    f3 = B + (A - C)/2
    f4 = (A + B)/2          (all divisions floor toward -inf)

to the pixel-adjacent triple (A=left, B=top, C=top-left), ids 5-8 the
same functions to the lenslet-stride triple, and ids 9-12 the floor
average of both predictions, fusing the two continuity directions.
Out-of-bounds neighbors count as 0.

Residual samples are mapped into the positive 16-bit range by modular
wrap, residual = (X - pred) mod 2**16, which the inverse undoes exactly;
prediction reads original samples only, so compression is causal and
decompression can replay it row-major from already reconstructed pixels.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import _kernels
from .core import INTRA_ID_MAX, Frame, PredictorSpec

PIXEL_ADJACENT = "pixel_adjacent"
LENSLET_STRIDE = "lenslet_stride"


class NeighborTriple(NamedTuple):
    """Left-type (A), top-type (B) and top-left-type (C) neighbor values."""

    A: int
    B: int
    C: int


def predict_value(f_id: int, t: NeighborTriple) -> int:
    """Apply prediction function f1..f4 to a neighbor triple.

    Arithmetic is exact signed integer math; the result is the raw
    (unwrapped) prediction and may be negative or exceed 16 bits.
    """
    a, b, c = int(t[0]), int(t[1]), int(t[2])
    if f_id == 1:
        return a + b - c
    if f_id == 2:
        return a + (b - c) // 2
    if f_id == 3:
        return b + (a - c) // 2
    if f_id == 4:
        return (a + b) // 2
    raise ValueError(f"prediction function id must be in [1, 4], got {f_id}")


def gather_neighbors(frame: Frame, x: int, y: int, mode: str) -> NeighborTriple:
    """Fetch the neighbor triple for one pixel; out-of-bounds reads are 0."""
    if not (0 <= x < frame.width and 0 <= y < frame.height):
        raise ValueError(f"pixel ({x}, {y}) outside {frame.width}x{frame.height} frame")
    if mode == PIXEL_ADJACENT:
        sx, sy = 1, 1
    elif mode == LENSLET_STRIDE:
        sx, sy = frame.geometry.pitch_x, frame.geometry.pitch_y
    else:
        raise ValueError(f"unknown neighbor mode {mode!r}")
    img = frame.samples
    a = int(img[y, x - sx]) if x >= sx else 0
    b = int(img[y - sy, x]) if y >= sy else 0
    c = int(img[y - sy, x - sx]) if (x >= sx and y >= sy) else 0
    return NeighborTriple(a, b, c)


def _check_intra_id(intra_id: int) -> int:
    if not 0 <= int(intra_id) <= INTRA_ID_MAX:
        raise ValueError(f"intra predictor id must be in [0, {INTRA_ID_MAX}], got {intra_id}")
    return int(intra_id)


def predict_frame(frame: Frame, intra_id: int) -> Frame:
    """Produce the symbol image for one intra predictor."""
    intra_id = _check_intra_id(intra_id)
    geo = frame.geometry
    res = _kernels.residual_image(frame.samples, intra_id, geo.pitch_x, geo.pitch_y)
    return Frame(res, geo)


def unpredict_frame(residual: Frame, intra_id: int) -> Frame:
    """Exact inverse of predict_frame for the same intra id."""
    intra_id = _check_intra_id(intra_id)
    geo = residual.geometry
    out = _kernels.reconstruct_image(residual.samples, intra_id, geo.pitch_x, geo.pitch_y)
    return Frame(out, geo)


def _check_shapes(a: Frame, b: Frame):
    if a.samples.shape != b.samples.shape:
        raise ValueError(
            f"frame shapes differ: {a.samples.shape} vs {b.samples.shape}"
        )


def temporal_delta(curr: Frame, prev: Frame) -> Frame:
    """Modular per-pixel delta against the previous frame."""
    _check_shapes(curr, prev)
    d = (curr.samples.astype(np.int32) - prev.samples.astype(np.int32)) % 65536
    return Frame(d.astype(np.uint16), curr.geometry)


def temporal_undelta(delta: Frame, prev: Frame) -> Frame:
    """Exact inverse of temporal_delta."""
    _check_shapes(delta, prev)
    c = (delta.samples.astype(np.int32) + prev.samples.astype(np.int32)) % 65536
    return Frame(c.astype(np.uint16), delta.geometry)


def apply_predictor(frame: Frame, spec: PredictorSpec, prev: Frame | None = None) -> Frame:
    """Full forward path for one frame: temporal delta (if flagged), then
    intra prediction."""
    if spec.temporal:
        if prev is None:
            raise ValueError("temporal predictor requires a previous frame")
        frame = temporal_delta(frame, prev)
    return predict_frame(frame, spec.intra_id)


def invert_predictor(residual: Frame, spec: PredictorSpec, prev: Frame | None = None) -> Frame:
    """Exact inverse of apply_predictor."""
    out = unpredict_frame(residual, spec.intra_id)
    if spec.temporal:
        if prev is None:
            raise ValueError("temporal predictor requires a previous frame")
        out = temporal_undelta(out, prev)
    return out
