"""Unsharp masking and gradient orientation fields."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.ndimage import uniform_filter

from .errors import InvalidParameter, TooSmall
from .imaging import BlurParams, gaussian_blur

DEFAULT_USM_WEIGHT = 0.6
DEFAULT_USM_SIGMA = 2.0


@dataclass(frozen=True)
class UsmParams:
    w: float = DEFAULT_USM_WEIGHT
    blur: BlurParams = field(default_factory=lambda: BlurParams(DEFAULT_USM_SIGMA))

    def __post_init__(self):
        if not 0.1 <= self.w <= 0.9:
            raise InvalidParameter(f"USM weight must lie in [0.1, 0.9], got {self.w}")


@dataclass(frozen=True)
class OrientationField:
    """Per-pixel gradient magnitude and direction in degrees, modulo 180."""

    magnitude: np.ndarray
    angle: np.ndarray

    @property
    def height(self) -> int:
        return self.angle.shape[0]

    @property
    def width(self) -> int:
        return self.angle.shape[1]


def usm_sharpen(plane: np.ndarray, params: UsmParams) -> np.ndarray:
    """(D1 - w * blur(D1)) / (1 - w), unclamped."""
    d1 = np.asarray(plane, dtype=np.float64)
    d2 = gaussian_blur(d1, params.blur)
    return (d1 - params.w * d2) / (1 - params.w)


def _wrap_degrees(theta: np.ndarray) -> np.ndarray:
    theta = np.mod(theta, 180.0)
    # fmod of tiny negatives can round to exactly 180
    theta[theta >= 180.0] -= 180.0
    return theta


def sobel(plane: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """3x3 Sobel derivatives along x (columns) and y (rows), edge-replicated."""
    p = np.pad(np.asarray(plane, dtype=np.float64), 1, mode="edge")
    h, w = plane.shape
    s = lambda dy, dx: p[1 + dy:1 + dy + h, 1 + dx:1 + dx + w]
    gx = (s(-1, 1) + 2 * s(0, 1) + s(1, 1)) - (s(-1, -1) + 2 * s(0, -1) + s(1, -1))
    gy = (s(1, -1) + 2 * s(1, 0) + s(1, 1)) - (s(-1, -1) + 2 * s(-1, 0) + s(-1, 1))
    return gx, gy


def gradient_field(plane: np.ndarray) -> OrientationField:
    plane = np.asarray(plane, dtype=np.float64)
    if plane.ndim != 2 or min(plane.shape) < 3:
        raise TooSmall(f"gradient_field needs at least 3x3, got {plane.shape}")
    gx, gy = sobel(plane)
    mag = np.hypot(gx, gy)
    ang = _wrap_degrees(np.degrees(np.arctan2(gy, gx)))
    return OrientationField(mag, ang)


def doubled_angle_vectors(field: OrientationField) -> tuple[np.ndarray, np.ndarray]:
    t = np.radians(2.0 * field.angle)
    return field.magnitude * np.cos(t), field.magnitude * np.sin(t)


def smooth_orientations(field: OrientationField, window: int) -> OrientationField:
    """Magnitude-weighted doubled-angle average over a ``window`` x ``window`` box.

    The returned magnitude is the window coherence |sum m e^{2i theta}| / sum m,
    0 where the window holds no gradient at all.
    """
    if window < 1 or window % 2 == 0:
        raise InvalidParameter(f"window must be odd and >= 1, got {window}")
    c, s = doubled_angle_vectors(field)
    if window > 1:
        c = uniform_filter(c, window, mode="nearest")
        s = uniform_filter(s, window, mode="nearest")
        m = uniform_filter(field.magnitude, window, mode="nearest")
    else:
        m = field.magnitude
    resultant = np.hypot(c, s)
    with np.errstate(invalid="ignore", divide="ignore"):
        coherence = np.where(m > 0, resultant / np.where(m > 0, m, 1.0), 0.0)
    coherence = np.clip(coherence, 0.0, 1.0)
    ang = _wrap_degrees(np.degrees(0.5 * np.arctan2(s, c)))
    return OrientationField(coherence, ang)
