"""Compiled inner loops (numba) shared by the predictor and criterion layers.

Conventions baked into every kernel:

  - all arithmetic in int64; `>> 1` is used for division by two because an
    arithmetic right shift rounds toward negative infinity for any sign,
    which is the floor semantics the residuals are defined with;
  - `& 0xFFFF` reduces any int64 to its value mod 2**16 (two's complement);
  - out-of-bounds neighbors read as 0;
  - images are C-contiguous uint16 grids (Frame guarantees this).

The *_pair_hist kernels produce the histogram of overlapping byte pairs of
the first-character-sorted rotation transform without materializing the
transformed string: within one first-byte bucket the transform emits the
predecessor bytes in scan order, so consecutive occurrences of a value
chain directly into pair counts, and one stitch per adjacent non-empty
bucket pair covers the seams.  Equality with the composed route
(counting_bwt -> pair histogram) is enforced by the test suite.

The histogram automaton bodies are spelled out inline in each loop; routing
them through a helper function measurably defeats the optimizer (about a
10x slowdown), so the few duplicated lines stay.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True, nogil=True, inline="always")
def _pred_at(img, y, x, sx, sy, f):
    a = np.int64(img[y, x - sx]) if x >= sx else 0
    b = np.int64(img[y - sy, x]) if y >= sy else 0
    c = np.int64(img[y - sy, x - sx]) if (x >= sx and y >= sy) else 0
    if f == 1:
        return a + b - c
    elif f == 2:
        return a + ((b - c) >> 1)
    elif f == 3:
        return b + ((a - c) >> 1)
    else:
        return (a + b) >> 1


@njit(cache=True, nogil=True)
def residual_image(img, intra_id, px, py):
    """Forward prediction over original samples; returns the symbol image."""
    h, w = img.shape
    out = np.empty((h, w), np.uint16)
    if intra_id == 0:
        for y in range(h):
            for x in range(w):
                out[y, x] = img[y, x]
        return out
    f = (intra_id - 1) % 4 + 1
    grp = (intra_id - 1) // 4
    sx = 1 if grp == 0 else px
    sy = 1 if grp == 0 else py
    for y in range(h):
        for x in range(w):
            p = _pred_at(img, y, x, sx, sy, f)
            if grp == 2:
                p = (p + _pred_at(img, y, x, 1, 1, f)) >> 1
            out[y, x] = (np.int64(img[y, x]) - p) & 0xFFFF
    return out


@njit(cache=True, nogil=True)
def reconstruct_image(res, intra_id, px, py):
    """Inverse prediction; recomputes each prediction from already
    reconstructed samples in row-major order."""
    h, w = res.shape
    out = np.zeros((h, w), np.uint16)
    if intra_id == 0:
        for y in range(h):
            for x in range(w):
                out[y, x] = res[y, x]
        return out
    f = (intra_id - 1) % 4 + 1
    grp = (intra_id - 1) // 4
    sx = 1 if grp == 0 else px
    sy = 1 if grp == 0 else py
    for y in range(h):
        for x in range(w):
            p = _pred_at(out, y, x, sx, sy, f)
            if grp == 2:
                p = (p + _pred_at(out, y, x, 1, 1, f)) >> 1
            out[y, x] = (np.int64(res[y, x]) + p) & 0xFFFF
    return out


@njit(cache=True, nogil=True)
def counting_bwt(s):
    """Stable counting sort of all cyclic rotations by first byte only,
    emitting the last byte of each rotation: for each byte value v
    ascending, for each position i ascending with s[i] == v, emit
    s[(i - 1) mod n]."""
    n = s.shape[0]
    counts = np.zeros(256, np.int64)
    for i in range(n):
        counts[s[i]] += 1
    offsets = np.zeros(256, np.int64)
    acc = np.int64(0)
    for v in range(256):
        offsets[v] = acc
        acc += counts[v]
    out = np.empty(n, np.uint8)
    for i in range(n):
        v = s[i]
        out[offsets[v]] = s[i - 1]  # i == 0 wraps to s[n-1]
        offsets[v] += 1
    return out


@njit(cache=True, nogil=True)
def pair_hist(s):
    """Histogram of the n-1 overlapping byte pairs, first byte high."""
    hist = np.zeros(65536, np.int64)
    for i in range(s.shape[0] - 1):
        hist[np.int64(s[i]) * 256 + np.int64(s[i + 1])] += 1
    return hist


@njit(cache=True, nogil=True)
def _stitch_buckets(hist, first, lastp):
    # seams between consecutive non-empty first-byte buckets
    prev_last = np.int64(-1)
    for v in range(256):
        if first[v] >= 0:
            if prev_last >= 0:
                hist[prev_last * 256 + first[v]] += 1
            prev_last = lastp[v]


@njit(cache=True, nogil=True)
def bwt_pair_hist(s):
    """pair_hist(counting_bwt(s)) in a single sequential pass."""
    hist = np.zeros(65536, np.int64)
    n = s.shape[0]
    if n < 2:
        return hist
    first = np.full(256, -1, np.int64)
    lastp = np.full(256, -1, np.int64)
    for j in range(n):
        v = np.int64(s[j])
        p = np.int64(s[j - 1])  # j == 0 wraps to s[n-1]
        if lastp[v] >= 0:
            hist[lastp[v] * 256 + p] += 1
        else:
            first[v] = p
        lastp[v] = p
    _stitch_buckets(hist, first, lastp)
    return hist


@njit(cache=True, nogil=True)
def residual_bwt_pair_hist(img, intra_id, px, py):
    """bwt_pair_hist of the packed (high, low) byte stream of the symbol
    image for one predictor, generated on the fly."""
    hist = np.zeros(65536, np.int64)
    h, w = img.shape
    if 2 * h * w < 2:
        return hist
    first = np.full(256, -1, np.int64)
    lastp = np.full(256, -1, np.int64)
    f = (intra_id - 1) % 4 + 1 if intra_id > 0 else 0
    grp = (intra_id - 1) // 4 if intra_id > 0 else -1
    sx = 1 if grp == 0 else px
    sy = 1 if grp == 0 else py
    prevb = np.int64(0)
    # pass 0 visits only the last pixel: its low byte is the wrapped
    # predecessor of byte position 0; pass 1 streams the whole image
    for pass_id in range(2):
        ys = h - 1 if pass_id == 0 else 0
        for y in range(ys, h):
            xs = w - 1 if pass_id == 0 else 0
            for x in range(xs, w):
                X = np.int64(img[y, x])
                if intra_id == 0:
                    r = X
                else:
                    p = _pred_at(img, y, x, sx, sy, f)
                    if grp == 2:
                        p = (p + _pred_at(img, y, x, 1, 1, f)) >> 1
                    r = (X - p) & 0xFFFF
                hi = r >> 8
                lo = r & 0xFF
                if pass_id == 0:
                    prevb = lo
                else:
                    if lastp[hi] >= 0:
                        hist[lastp[hi] * 256 + prevb] += 1
                    else:
                        first[hi] = prevb
                    lastp[hi] = prevb
                    if lastp[lo] >= 0:
                        hist[lastp[lo] * 256 + hi] += 1
                    else:
                        first[lo] = hi
                    lastp[lo] = hi
                    prevb = lo
    _stitch_buckets(hist, first, lastp)
    return hist


def warm_up():
    """Trigger JIT compilation of every kernel on tiny inputs so later
    timing measurements see steady-state speed."""
    img = np.arange(12, dtype=np.uint16).reshape(3, 4)
    res = residual_image(img, 9, 2, 2)
    reconstruct_image(res, 9, 2, 2)
    s = np.array([1, 2, 1, 0], np.uint8)
    pair_hist(counting_bwt(s))
    bwt_pair_hist(s)
    residual_bwt_pair_hist(img, 3, 2, 2)
