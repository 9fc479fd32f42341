"""Entropy-based predictor selection.

Trying every predictor by actually bzip2-compressing every candidate
would cost more than it saves, so candidates are ranked by a cheap proxy
for post-BWT compressibility:

  1. pack the candidate's symbol image as a byte string (high byte, low
     byte, row-major, the same stream the coder would see);
  2. apply an approximate Burrows-Wheeler transform that sorts the cyclic
     rotations by their *first byte only* (stable, so equal first bytes
     keep generation order) and takes the last column - unlike the full
     BWT this is a single counting-sort pass and trivially parallel;
  3. histogram the overlapping byte pairs of the transformed string as
     16-bit symbols (this is what keeps local ordering information that a
     plain byte histogram would discard, mirroring the move-to-front
     stage's sensitivity to symbol adjacency);
  4. score with the Shannon entropy of that pair distribution, in bits.

The candidate with the smallest score wins; ties break toward the
smallest encoded predictor byte so selection is deterministic regardless
of evaluation order or worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .core import Frame, PredictorSpec, all_intra_specs
from .predictors import temporal_delta


def _as_byte_array(data) -> np.ndarray:
    arr = np.frombuffer(bytes(data), dtype=np.uint8) if not isinstance(data, np.ndarray) else data
    if arr.dtype != np.uint8 or arr.ndim != 1:
        raise TypeError("expected a byte string or 1D uint8 array")
    return np.ascontiguousarray(arr)


def approx_bwt(data) -> bytes:
    """First-character approximate BWT of a byte string.

    Equivalent to listing all cyclic rotations, stably sorting them by
    their first byte only, and emitting the last byte of each rotation.
    The output is a permutation of the input; it is *not* the canonical
    BWT (which compares full rotations).
    """
    s = _as_byte_array(data)
    if s.size == 0:
        return b""
    return _kernels.counting_bwt(s).tobytes()


@dataclass(frozen=True)
class PairHistogram:
    """Counts of the overlapping adjacent-byte pairs of a byte string,
    indexed by first_byte * 256 + second_byte."""

    counts: np.ndarray
    total: int

    @classmethod
    def from_counts(cls, counts: np.ndarray) -> "PairHistogram":
        counts = np.asarray(counts, dtype=np.int64)
        if counts.shape != (65536,):
            raise ValueError("pair histogram must have 65536 bins")
        return cls(counts, int(counts.sum()))


def pair_histogram(data) -> PairHistogram:
    """Histogram the n-1 overlapping byte pairs of a byte string.

    The first byte of each pair is the high byte of the 16-bit bin index.
    Strings shorter than two bytes produce an empty histogram.
    """
    s = _as_byte_array(data)
    if s.size < 2:
        return PairHistogram(np.zeros(65536, np.int64), 0)
    counts = _kernels.pair_hist(s)
    return PairHistogram(counts, s.size - 1)


def entropy2d(hist: PairHistogram) -> float:
    """Shannon entropy of the pair distribution, in bits.

    Empty histograms score 0.  Only occupied bins contribute, so the
    result is always in [0, min(16, log2(total))].
    """
    if hist.total <= 0:
        return 0.0
    counts = hist.counts[hist.counts > 0]
    p = counts / float(hist.total)
    return float(-(p * np.log2(p)).sum())


def candidate_entropy(residual) -> float:
    """Score one symbol image: entropy2d(pair_histogram(approx_bwt(bytes)))
    of its packed high/low byte stream, evaluated in a single fused pass."""
    img = residual.samples if isinstance(residual, Frame) else np.ascontiguousarray(residual)
    if img.dtype != np.uint16 or img.ndim != 2:
        raise TypeError("expected a uint16 symbol image")
    counts = _kernels.residual_bwt_pair_hist(img, 0, 1, 1)
    return entropy2d(PairHistogram(counts, 2 * img.size - 1))


@dataclass(frozen=True)
class EntropyReport:
    """Per-candidate entropy scores and the winning predictor for one frame.

    Entries are ordered by encoded predictor byte; `selected` is the
    entry with minimal entropy, ties broken toward the smaller byte.
    """

    entries: tuple[tuple[PredictorSpec, float], ...]
    selected: PredictorSpec

    def entropy_for(self, spec: PredictorSpec) -> float:
        for s, e in self.entries:
            if s == spec:
                return e
        raise KeyError(f"{spec} was not evaluated")


def default_candidates(have_prev: bool, temporal: bool = True) -> tuple[PredictorSpec, ...]:
    """All intra predictors, doubled with the temporal flag when a
    previous frame is available (and temporal selection is enabled)."""
    specs = list(all_intra_specs())
    if have_prev and temporal:
        specs += [PredictorSpec(True, s.intra_id) for s in all_intra_specs()]
    return tuple(specs)


def select_predictor(frame: Frame, prev: Frame | None = None,
                     candidates=None, workers: int = 1) -> EntropyReport:
    """Evaluate candidate predictors on one frame and pick the argmin.

    Temporal candidates are scored on the modular delta against `prev`
    and are invalid without it.  The report is a pure function of
    (frame, prev, candidate set): evaluation order and worker count do
    not change it.
    """
    if candidates is None:
        specs = list(default_candidates(prev is not None))
    else:
        specs = list(candidates)
    if not specs:
        raise ValueError("candidate set must not be empty")
    if len(set(s.to_byte() for s in specs)) != len(specs):
        raise ValueError("candidate set contains duplicates")
    if any(s.temporal for s in specs) and prev is None:
        raise ValueError("temporal candidate given but no previous frame")

    specs.sort(key=lambda s: s.to_byte())
    geo = frame.geometry
    delta = temporal_delta(frame, prev).samples if any(s.temporal for s in specs) else None

    def score(spec: PredictorSpec) -> float:
        img = delta if spec.temporal else frame.samples
        counts = _kernels.residual_bwt_pair_hist(img, spec.intra_id, geo.pitch_x, geo.pitch_y)
        return entropy2d(PairHistogram(counts, 2 * img.size - 1))

    if workers > 1 and len(specs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(score, specs))
    else:
        scores = [score(s) for s in specs]

    entries = tuple(zip(specs, scores))
    best = min(range(len(specs)), key=lambda i: (scores[i], specs[i].to_byte()))
    return EntropyReport(entries=entries, selected=specs[best])
