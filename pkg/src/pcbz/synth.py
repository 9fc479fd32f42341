"""Synthetic lenslet-image generator for tests and benchmarks.

Two scene models:

  - smooth_lenslet: a band-limited random field over the full 4D index
    (lenslet_row, lenslet_col, intra_v, intra_u), low-pass filtered along
    all four axes before rendering, so pixel-adjacent neighbors AND
    same-offset pixels in adjacent lenslets both correlate.  This is the
    structured-specimen stand-in.
  - beads: sparse bright Gaussian spots on a dim background, the
    low-structure stand-in.

Sensor noise is photon (Poisson) noise at a configurable scale plus
Gaussian read noise, clamped to the 16-bit range.  For speed the Poisson
draw switches to its Gaussian approximation (variance = mean) above a
mean of 1000 counts; below that the draw is exact.

Everything is a pure function of the seed: the scene uses one derived
substream and every frame's noise another keyed by (seed, frame_index),
so generation parallelized over frames stays schedule-independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.ndimage import gaussian_filter

from .core import Frame, FrameStack, LensletGeometry

MODES = ("smooth_lenslet", "beads")

_SCENE_STREAM_TAG = 0x5CE9E
_POISSON_GAUSSIAN_CUTOVER = 1000.0


@dataclass(frozen=True)
class SynthParams:
    width: int
    height: int
    pitch_x: int = 1
    pitch_y: int = 1
    mode: str = "smooth_lenslet"
    signal_amplitude: float = 20000.0
    noise_sigma: float = 0.0
    photon_scale: float = 0.0
    frames: int = 1
    drift: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError(f"bad frame size {self.width}x{self.height}")
        if self.pitch_x < 1 or self.pitch_y < 1:
            raise ValueError(f"bad pitch {self.pitch_x}x{self.pitch_y}")
        if self.frames < 1:
            raise ValueError(f"frames must be >= 1, got {self.frames}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.signal_amplitude < 0 or self.noise_sigma < 0 or self.photon_scale < 0:
            raise ValueError("signal_amplitude, noise_sigma and photon_scale must be >= 0")
        if self.signal_amplitude + 4 * self.noise_sigma > 65535:
            raise ValueError("signal amplitude plus noise headroom exceeds 16 bits")

    @property
    def geometry(self) -> LensletGeometry:
        return LensletGeometry(self.pitch_x, self.pitch_y)


def _normalized(field: np.ndarray) -> np.ndarray:
    lo, hi = field.min(), field.max()
    return (field - lo) / (hi - lo) if hi > lo else np.zeros_like(field)


def _smooth_lenslet_scene(params: SynthParams, rng: np.random.Generator) -> np.ndarray:
    px, py = params.pitch_x, params.pitch_y
    n_lx = -(-params.width // px)
    n_ly = -(-params.height // py)
    field = rng.standard_normal((n_ly, n_lx, py, px))
    sigma = (2.0, 2.0, max(py / 3.0, 0.8), max(px / 3.0, 0.8))
    field = _normalized(gaussian_filter(field, sigma=sigma, mode="wrap"))
    # shared per-lenslet angular envelope (vignetting-like): repeats exactly
    # from lenslet to lenslet, so stride neighbors cancel it while adjacent
    # pixels see its gradient
    env = gaussian_filter(rng.standard_normal((py, px)),
                          sigma=max(min(px, py) / 4.0, 0.8), mode="wrap")
    env = 0.3 + 0.7 * _normalized(env)
    yy, xx = np.mgrid[0:params.height, 0:params.width]
    rendered = field[yy // py, xx // px, yy % py, xx % px]
    envelope = env[yy % py, xx % px]
    return rendered * (0.3 + 0.7 * envelope) * params.signal_amplitude


def _beads_scene(params: SynthParams, rng: np.random.Generator) -> np.ndarray:
    h, w = params.height, params.width
    scene = np.full((h, w), 100.0)
    n_beads = max(1, (h * w) // 500)
    centers_y = rng.uniform(0, h, n_beads)
    centers_x = rng.uniform(0, w, n_beads)
    radius = max(1.0, min(params.pitch_x, params.pitch_y) / 2.0)
    reach = int(np.ceil(3 * radius))
    for cy, cx in zip(centers_y, centers_x):
        y0, y1 = max(0, int(cy) - reach), min(h, int(cy) + reach + 1)
        x0, x1 = max(0, int(cx) - reach), min(w, int(cx) + reach + 1)
        yy, xx = np.mgrid[y0:y1, x0:x1]
        d2 = (yy - cy) ** 2 + (xx - cx) ** 2
        scene[y0:y1, x0:x1] += params.signal_amplitude * np.exp(-d2 / (2 * radius**2))
    return scene


def _apply_noise(scene: np.ndarray, params: SynthParams,
                 rng: np.random.Generator) -> np.ndarray:
    value = scene
    if params.photon_scale > 0:
        lam = scene * params.photon_scale
        small = lam <= _POISSON_GAUSSIAN_CUTOVER
        # fixed draw order keeps output independent of data content
        exact = rng.poisson(np.where(small, lam, 0.0))
        gauss = rng.standard_normal(lam.shape)
        counts = np.where(small, exact, lam + gauss * np.sqrt(lam))
        value = counts / params.photon_scale
    if params.noise_sigma > 0:
        value = value + rng.normal(0.0, params.noise_sigma, scene.shape)
    return np.clip(np.rint(value), 0, 65535).astype(np.uint16)


def generate(params: SynthParams) -> FrameStack:
    """Generate a deterministic synthetic stack for the given parameters."""
    scene_rng = np.random.default_rng([params.seed, _SCENE_STREAM_TAG])
    if params.mode == "smooth_lenslet":
        scene = _smooth_lenslet_scene(params, scene_rng)
    else:
        scene = _beads_scene(params, scene_rng)

    frames = []
    for t in range(params.frames):
        shift = int(round(params.drift * t))
        moved = np.roll(scene, shift, axis=1) if shift else scene
        noise_rng = np.random.default_rng([params.seed, t])
        frames.append(Frame(_apply_noise(moved, params, noise_rng), params.geometry))
    return FrameStack(tuple(frames))
