"""Brush-stroke patch selection and spectral stroke-orientation estimation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import NotSquare, WindowTooLarge
from .imaging import LabImage

N_BINS = 180
DOMINANCE_RATIO = 2.0


@dataclass(frozen=True)
class WindowScan:
    window_w: int
    window_h: int
    stride: int
    rows: np.ndarray
    cols: np.ndarray
    sd: np.ndarray  # shape (len(rows), len(cols))

    @property
    def entries(self) -> list[tuple[int, int, float]]:
        return [(int(r), int(c), float(self.sd[i, j]))
                for i, r in enumerate(self.rows) for j, c in enumerate(self.cols)]

    def __len__(self) -> int:
        return self.sd.size


@dataclass(frozen=True)
class BrushPatch:
    size: int
    L: np.ndarray
    origin: tuple[int, int]
    sd: float
    dominant_angle: Optional[float]


@dataclass(frozen=True)
class AngularPowerProfile:
    bins: np.ndarray
    counts: np.ndarray


def window_count(extent: int, window: int, stride: int) -> int:
    return (extent - window) // stride + 1


def scan_windows(L_plane: np.ndarray, window: int, stride: int) -> WindowScan:
    """Population SD of every ``window`` x ``window`` block on the stride grid."""
    plane = np.asarray(L_plane, dtype=np.float64)
    h, w = plane.shape
    if window < 1 or window > min(h, w):
        raise WindowTooLarge(f"window {window} does not fit a {h}x{w} image")
    if stride < 1:
        raise ValueError(f"stride must be >= 1, got {stride}")
    blocks = sliding_window_view(plane, (window, window))[::stride, ::stride]
    # shift by a sample of each window so flat windows give exactly 0
    sd = (blocks - blocks[:, :, :1, :1]).std(axis=(2, 3))
    rows = np.arange(blocks.shape[0]) * stride
    cols = np.arange(blocks.shape[1]) * stride
    return WindowScan(window, window, stride, rows, cols, sd)


def select_brush_patch(painting: LabImage, window: int, stride: int) -> BrushPatch:
    """Pick the lowest-SD window of the painting's L* plane as the brush patch.

    Ties go to the smallest (row, col); ``np.argmin`` on the row-major SD grid
    already returns the first occurrence.
    """
    scan = scan_windows(painting.L, window, stride)
    i, j = np.unravel_index(int(np.argmin(scan.sd)), scan.sd.shape)
    r, c = int(scan.rows[i]), int(scan.cols[j])
    L = np.array(painting.L[r:r + window, c:c + window])
    angle = dominant_angle(angular_power_profile(L)) if window >= 8 else None
    return BrushPatch(window, L, (r, c), float(scan.sd[i, j]), angle)


def frequency_orientation_bins(n: int) -> np.ndarray:
    """Nearest-degree orientation bin of every DFT sample, in FFT (unshifted) order.

    Orientation is atan2(v, u) mod 180 with u the column frequency and v the
    row frequency, both in signed (centered) form. DC gets bin -1.
    """
    k = np.fft.fftfreq(n) * n
    v, u = np.meshgrid(k, k, indexing="ij")
    theta = np.mod(np.degrees(np.arctan2(v, u)), 180.0)
    bins = np.mod(np.floor(theta + 0.5).astype(int), N_BINS)
    bins[0, 0] = -1
    return bins


def angular_power_profile(patch_L: np.ndarray) -> AngularPowerProfile:
    patch = np.asarray(patch_L, dtype=np.float64)
    if patch.ndim != 2 or patch.shape[0] != patch.shape[1]:
        raise NotSquare(f"patch must be square, got {patch.shape}")
    if patch.shape[0] < 8:
        raise ValueError("patch side must be >= 8")
    centered = patch - patch.flat[0]
    power = np.abs(np.fft.fft2(centered - centered.mean())) ** 2
    bins = frequency_orientation_bins(patch.shape[0]).ravel()
    keep = bins >= 0
    counts = np.bincount(bins[keep], minlength=N_BINS)
    sums = np.bincount(bins[keep], weights=power.ravel()[keep], minlength=N_BINS)
    means = np.divide(sums, counts, out=np.zeros(N_BINS), where=counts > 0)
    return AngularPowerProfile(means, counts)


def dominant_angle(profile: AngularPowerProfile) -> Optional[float]:
    """Image-space stroke orientation in degrees, or None without a dominant peak.

    Ridges running along theta put their spectral energy at theta + 90, so the
    peak frequency orientation is rotated back by 90 degrees. The dominance
    test compares the peak bin with the mean of the populated bins; it is
    calibrated for 128px patches, where white noise stays below 2x.
    """
    bins = profile.bins
    peak = float(bins.max())
    # empty bins (small patches have none near the axes) would deflate the mean
    populated = bins[profile.counts > 0]
    if peak <= 0 or peak < DOMINANCE_RATIO * float(populated.mean()):
        return None
    return float((int(np.argmax(bins)) + 90) % N_BINS)
