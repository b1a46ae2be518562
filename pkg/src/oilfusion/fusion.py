"""Fourier-domain fusion of a brush-stroke patch into the lightness plane.

The plane is cut into overlapping square tiles. Each tile's spectrum F gets
texture energy injected off-DC as ``G = F + alpha * |P| * F`` where ``|P|`` is
the unit-max modulus of the brush patch's spectrum, after the patch has been
rotated so its strokes run perpendicular to the tile's mean gradient. Tiles
are blended back with a positive Hann taper.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from .edges import OrientationField, UsmParams, smooth_orientations
from .errors import (DimensionMismatch, ImageSmallerThanPatch, InvalidParameter,
                     NotSquare, SizeMismatch)
from .imaging import LabImage
from .strokes import BrushPatch

OVERLAP_CHOICES = (Fraction(1, 8), Fraction(1, 4), Fraction(1, 2))


def parse_overlap(value) -> Fraction:
    try:
        frac = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InvalidParameter(f"bad overlap fraction {value!r}") from exc
    if frac not in OVERLAP_CHOICES:
        raise InvalidParameter(f"overlap must be one of 1/8, 1/4, 1/2, got {value}")
    return frac


@dataclass(frozen=True)
class FusionConfig:
    patch_size: int = 64
    overlap_fraction: Fraction = Fraction(1, 4)
    blend_alpha: float = 0.5
    usm: UsmParams = field(default_factory=UsmParams)
    orientation_window: int = 9

    def __post_init__(self):
        object.__setattr__(self, "overlap_fraction", parse_overlap(self.overlap_fraction))
        if self.patch_size < 8:
            raise InvalidParameter(f"patch_size must be >= 8, got {self.patch_size}")
        if self.step < 1:
            raise InvalidParameter("tile step rounds to zero")
        if not 0.0 <= self.blend_alpha <= 1.0:
            raise InvalidParameter(f"blend_alpha must lie in [0, 1], got {self.blend_alpha}")

    @property
    def step(self) -> int:
        return int(self.overlap_fraction * self.patch_size)


@dataclass(frozen=True)
class TileGrid:
    tiles: list
    weight_window: np.ndarray
    row_anchors: list
    col_anchors: list


@dataclass(frozen=True)
class StrokeFilter:
    base_spectrum: np.ndarray
    magnitude: np.ndarray
    stroke_angle: Optional[float]


# ---------------------------------------------------------------- FFT

def _check_square(plane):
    if plane.ndim != 2 or plane.shape[0] != plane.shape[1]:
        raise NotSquare(f"expected a square plane, got {plane.shape}")
    if plane.shape[0] < 8:
        raise NotSquare(f"square side must be >= 8, got {plane.shape[0]}")


def fft2(plane: np.ndarray) -> np.ndarray:
    """Unnormalized forward 2-D DFT of a square plane."""
    plane = np.asarray(plane)
    _check_square(plane)
    return np.fft.fft2(plane)


def ifft2(spectrum: np.ndarray) -> np.ndarray:
    spectrum = np.asarray(spectrum)
    _check_square(spectrum)
    return np.fft.ifft2(spectrum)


# ---------------------------------------------------------------- filter / rotation

def _unit_modulus(spectrum: np.ndarray) -> np.ndarray:
    mag = np.abs(spectrum)
    mag[0, 0] = 0.0
    top = mag.max()
    return mag / top if top > 0 else np.zeros_like(mag)


def make_stroke_filter(patch: BrushPatch, size: Optional[int] = None) -> StrokeFilter:
    if size is not None and patch.size != size:
        raise SizeMismatch(f"patch is {patch.size}px, fusion expects {size}px")
    L = np.asarray(patch.L, dtype=np.float64)
    spectrum = fft2(L - L.mean())
    spectrum[0, 0] = 0.0
    return StrokeFilter(spectrum, _unit_modulus(spectrum), patch.dominant_angle)


def rotate_patch(patch_L: np.ndarray, by: float) -> np.ndarray:
    """Rotate a square patch by ``by`` degrees about its center.

    Angles grow from +x (columns) toward +y (rows), the same convention as the
    orientation field. Sampling is bilinear on the periodic extension of the
    patch.
    """
    patch = np.asarray(patch_L, dtype=np.float64)
    n = patch.shape[0]
    c = (n - 1) / 2.0
    t = np.radians(by)
    cos_t, sin_t = np.cos(t), np.sin(t)
    y, x = np.mgrid[0:n, 0:n].astype(np.float64)
    dx, dy = x - c, y - c
    # inverse map: output pixel p samples the input at R(-by)(p - c) + c
    sx = cos_t * dx + sin_t * dy + c
    sy = -sin_t * dx + cos_t * dy + c
    x0 = np.floor(sx)
    y0 = np.floor(sy)
    fx, fy = sx - x0, sy - y0
    x0 = x0.astype(int) % n
    y0 = y0.astype(int) % n
    x1 = (x0 + 1) % n
    y1 = (y0 + 1) % n
    return ((1 - fy) * ((1 - fx) * patch[y0, x0] + fx * patch[y0, x1])
            + fy * ((1 - fx) * patch[y1, x0] + fx * patch[y1, x1]))


# ---------------------------------------------------------------- tiling

def _anchors(extent: int, size: int, step: int) -> list:
    out = list(range(0, extent - size + 1, step))
    if out[-1] + size < extent:
        out.append(extent - size)
    return out


def tile_count(extent: int, size: int, step: int) -> int:
    """Number of anchors along one axis: ceil((extent - size) / step) + 1."""
    return -(-(extent - size) // step) + 1


def hann_window(n: int) -> np.ndarray:
    """2-D separable sin^2 taper sampled at half-integer offsets (never zero)."""
    w = np.sin(np.pi * (np.arange(n) + 0.5) / n) ** 2
    return np.outer(w, w)


def tile_grid(shape: tuple, cfg: FusionConfig) -> TileGrid:
    h, w = shape
    p = cfg.patch_size
    if h < p or w < p:
        raise ImageSmallerThanPatch(f"image {h}x{w} is smaller than patch {p}")
    rows = _anchors(h, p, cfg.step)
    cols = _anchors(w, p, cfg.step)
    tiles = [(r, c) for r in rows for c in cols]
    return TileGrid(tiles, hann_window(p), rows, cols)


def tile_target_angle(field: OrientationField, r: int, c: int, size: int) -> Optional[float]:
    """Stroke angle for a tile: perpendicular to its weighted mean gradient.

    Returns None for tiles whose weighted doubled-angle resultant vanishes.
    """
    m = field.magnitude[r:r + size, c:c + size]
    t = np.radians(2.0 * field.angle[r:r + size, c:c + size])
    cs, sn = float((m * np.cos(t)).sum()), float((m * np.sin(t)).sum())
    if np.hypot(cs, sn) <= 1e-12 * max(float(m.sum()), 1.0):
        return None
    gradient = np.degrees(0.5 * np.arctan2(sn, cs)) % 180.0
    return (gradient + 90.0) % 180.0


def fuse_spectrum(F: np.ndarray, filt_magnitude: np.ndarray, alpha: float) -> np.ndarray:
    G = F + alpha * filt_magnitude * F
    G[0, 0] = F[0, 0]
    return G


TileHook = Callable[[int, tuple, np.ndarray, np.ndarray, np.ndarray, np.ndarray], None]


def _process_tile(plane, field, patch, cfg, anchor, cache):
    r, c = anchor
    p = cfg.patch_size
    tile = plane[r:r + p, c:c + p]
    target = tile_target_angle(field, r, c, p)
    rotation = 0.0
    if patch.dominant_angle is not None and target is not None:
        rotation = (target - patch.dominant_angle) % 180.0
    mag = cache.get(rotation)
    if mag is None:
        rotated = rotate_patch(patch.L, rotation) if rotation else np.asarray(patch.L, dtype=np.float64)
        mag = _unit_modulus(fft2(rotated - rotated.mean()))
        cache[rotation] = mag
    F = fft2(tile)
    G = fuse_spectrum(F, mag, cfg.blend_alpha)
    return F, G, np.real(ifft2(G))


def fuse_L(enhanced_L: np.ndarray, orientation: OrientationField, patch: BrushPatch,
           cfg: FusionConfig, workers: int = 1,
           tile_hook: Optional[TileHook] = None) -> np.ndarray:
    """Inject brush texture into ``enhanced_L`` tile by tile.

    ``orientation`` is the raw gradient field; it is smoothed here with
    ``cfg.orientation_window``. Tiles are computed independently (optionally on
    ``workers`` threads) and accumulated in a fixed order, so the output does
    not depend on the worker count. ``tile_hook(index, anchor, tile, F, G,
    tile_out)`` is called for every tile in grid order.
    """
    plane = np.asarray(enhanced_L, dtype=np.float64)
    if patch.size != cfg.patch_size:
        raise SizeMismatch(f"patch is {patch.size}px, config expects {cfg.patch_size}px")
    if orientation.angle.shape != plane.shape:
        raise DimensionMismatch("orientation field does not match the plane")
    grid = tile_grid(plane.shape, cfg)
    field = smooth_orientations(orientation, cfg.orientation_window)
    p = cfg.patch_size

    def run(chunk):
        cache = {}
        return [_process_tile(plane, field, patch, cfg, a, cache) for a in chunk]

    workers = max(1, int(workers))
    if workers == 1:
        results = run(grid.tiles)
    else:
        size = -(-len(grid.tiles) // workers)
        chunks = [grid.tiles[i:i + size] for i in range(0, len(grid.tiles), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = [res for part in pool.map(run, chunks) for res in part]

    acc = np.zeros_like(plane)
    wsum = np.zeros_like(plane)
    win = grid.weight_window
    for idx, ((r, c), (F, G, out)) in enumerate(zip(grid.tiles, results)):
        if tile_hook is not None:
            tile_hook(idx, (r, c), plane[r:r + p, c:c + p], F, G, out)
        acc[r:r + p, c:c + p] += win * out
        wsum[r:r + p, c:c + p] += win
    return acc / wsum


def recombine(fused_L: np.ndarray, original: LabImage) -> LabImage:
    """Attach the fused lightness to the untouched chroma planes of ``original``."""
    fused_L = np.asarray(fused_L, dtype=np.float64)
    if fused_L.shape != original.shape:
        raise DimensionMismatch(f"L plane {fused_L.shape} vs image {original.shape}")
    return LabImage(fused_L, original.a, original.b)
