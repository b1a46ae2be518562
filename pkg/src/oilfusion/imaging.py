"""Image containers, sRGB <-> CIE L*a*b* conversion, Gaussian blur and PNG I/O."""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, ImageNotFound, InvalidSigma, IoError, UnsupportedFormat

# sRGB primaries, D65 (IEC 61966-2-1, high-precision form)
RGB_TO_XYZ = np.array([
    [0.4124564, 0.3575761, 0.1804375],
    [0.2126729, 0.7151522, 0.0721750],
    [0.0193339, 0.1191920, 0.9503041],
])
XYZ_TO_RGB = np.linalg.inv(RGB_TO_XYZ)
# white taken from the matrix itself so that (255,255,255) lands exactly on a=b=0
WHITE = RGB_TO_XYZ.sum(axis=1)

_EPS = 216 / 24389
_KAPPA = 24389 / 27

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"
_JPEG_MAGIC = b"\xff\xd8\xff"


@dataclass(frozen=True, eq=False)
class RgbImage:
    """8-bit sRGB raster stored as an ``(height, width, 3)`` uint8 array."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"expected (H, W, 3) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if data.dtype != np.uint8:
            if np.any(data < 0) or np.any(data > 255):
                raise ValueError("samples must lie in [0, 255]")
            data = data.astype(np.uint8)
        data = np.ascontiguousarray(data)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other):
        return isinstance(other, RgbImage) and np.array_equal(self.data, other.data)


@dataclass(frozen=True, eq=False)
class LabImage:
    """Three float64 planes of CIE L*a*b*. Values may leave the nominal gamut."""

    L: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        planes = []
        for name in ("L", "a", "b"):
            p = np.array(getattr(self, name), dtype=np.float64)
            if p.ndim != 2 or p.size == 0:
                raise ValueError(f"plane {name} must be a non-empty 2-D array")
            p.setflags(write=False)
            object.__setattr__(self, name, p)
            planes.append(p)
        if not planes[0].shape == planes[1].shape == planes[2].shape:
            raise ValueError("L, a, b planes must share a shape")

    @property
    def height(self) -> int:
        return self.L.shape[0]

    @property
    def width(self) -> int:
        return self.L.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.L.shape

    def planes(self):
        return self.L, self.a, self.b


@dataclass(frozen=True)
class BlurParams:
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise InvalidSigma(f"sigma must be > 0, got {self.sigma}")

    @property
    def radius(self) -> int:
        return math.ceil(3 * self.sigma)

    def kernel(self) -> np.ndarray:
        r = self.radius
        x = np.arange(-r, r + 1, dtype=np.float64)
        k = np.exp(-0.5 * (x / self.sigma) ** 2)
        return k / k.sum()


# ---------------------------------------------------------------- I/O

def load_image(path) -> RgbImage:
    """Decode a PNG or JPEG file into an 8-bit sRGB raster.

    Grayscale is expanded to three equal channels and alpha is dropped.
    """
    path = os.fspath(path)
    if not os.path.isfile(path):
        raise ImageNotFound(f"no such file: {path}")
    with open(path, "rb") as fh:
        head = fh.read(8)
    try:
        with Image.open(path) as im:
            if im.format not in ("PNG", "JPEG"):
                raise UnsupportedFormat(f"{path}: unsupported format {im.format}")
            im.load()
            rgb = im.convert("RGB")
    except UnidentifiedImageError as exc:
        if head.startswith(_PNG_MAGIC) or head.startswith(_JPEG_MAGIC):
            raise DecodeError(f"{path}: cannot decode ({exc})") from exc
        raise UnsupportedFormat(f"{path}: not a PNG or JPEG file") from exc
    except (OSError, SyntaxError, ValueError) as exc:
        raise DecodeError(f"{path}: cannot decode ({exc})") from exc
    return RgbImage(np.asarray(rgb, dtype=np.uint8))


def save_image(img: RgbImage, path) -> None:
    try:
        Image.fromarray(np.asarray(img.data), mode="RGB").save(os.fspath(path), format="PNG")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def save_gray(plane: np.ndarray, path, lo: float = 0.0, hi: float = 100.0) -> None:
    """Write a float plane as an 8-bit grayscale PNG, mapping [lo, hi] to [0, 255]."""
    scaled = np.clip((np.asarray(plane) - lo) / (hi - lo), 0.0, 1.0) * 255.0
    try:
        Image.fromarray(np.floor(scaled + 0.5).astype(np.uint8), mode="L").save(os.fspath(path), format="PNG")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------- color

def _srgb_decode(v):
    return np.where(v <= 0.04045, v / 12.92, ((v + 0.055) / 1.055) ** 2.4)


def _srgb_encode(v):
    return np.where(v <= 0.0031308, 12.92 * v, 1.055 * np.power(v, 1 / 2.4) - 0.055)


def _f(t):
    return np.where(t > _EPS, np.cbrt(t), (_KAPPA * t + 16) / 116)


def _f_inv(t):
    t3 = t ** 3
    return np.where(t3 > _EPS, t3, (116 * t - 16) / _KAPPA)


def rgb_to_lab(img: RgbImage) -> LabImage:
    rgb = _srgb_decode(img.data.astype(np.float64) / 255.0)
    xyz = rgb @ RGB_TO_XYZ.T / WHITE
    fx, fy, fz = (_f(xyz[..., i]) for i in range(3))
    L = 116 * fy - 16
    return LabImage(L, 500 * (fx - fy), 200 * (fy - fz))


def lab_to_rgb(img: LabImage) -> RgbImage:
    """Inverse of :func:`rgb_to_lab`; clamps to the sRGB cube and rounds half up."""
    fy = (img.L + 16) / 116
    fx = fy + img.a / 500
    fz = fy - img.b / 200
    xyz = np.stack([_f_inv(fx), _f_inv(fy), _f_inv(fz)], axis=-1) * WHITE
    lin = np.clip(xyz @ XYZ_TO_RGB.T, 0.0, 1.0)
    enc = np.clip(_srgb_encode(lin) * 255.0, 0.0, 255.0)
    return RgbImage(np.floor(enc + 0.5).astype(np.uint8))


# ---------------------------------------------------------------- blur

def _convolve_axis(plane: np.ndarray, kernel: np.ndarray, axis: int) -> np.ndarray:
    r = len(kernel) // 2
    pad = [(0, 0), (0, 0)]
    pad[axis] = (r, r)
    padded = np.pad(plane, pad, mode="symmetric")
    n = plane.shape[axis]
    out = np.zeros_like(plane)
    for i, w in enumerate(kernel):
        out += w * np.take(padded, np.arange(i, i + n), axis=axis)
    return out


def gaussian_blur(plane: np.ndarray, params: BlurParams) -> np.ndarray:
    """Separable Gaussian blur with mirrored borders.

    The mirror repeats the edge sample first (``x[-1] = x[0]``), so borders
    behave like edge replication for smooth content while the blur matrix
    stays symmetric and the plane mean is conserved exactly.
    """
    plane = np.asarray(plane, dtype=np.float64)
    k = params.kernel()
    return _convolve_axis(_convolve_axis(plane, k, 0), k, 1)
