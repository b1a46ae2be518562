"""Global color-statistics transfer in L*a*b* (Reinhard-style mean/SD matching)."""
from __future__ import annotations

from dataclasses import dataclass, asdict

import numpy as np

from .imaging import LabImage

DEGENERATE_SD = 1e-6

CHANNELS = ("L", "a", "b")


@dataclass(frozen=True)
class ChannelStats:
    mean_L: float
    mean_a: float
    mean_b: float
    sd_L: float
    sd_a: float
    sd_b: float

    def mean(self, c: str) -> float:
        return getattr(self, f"mean_{c}")

    def sd(self, c: str) -> float:
        return getattr(self, f"sd_{c}")

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ColorTransferTrace:
    centered: LabImage
    scaled: LabImage
    ratios: tuple[float, float, float]
    degenerate: tuple[bool, bool, bool]


def channel_stats(img: LabImage) -> ChannelStats:
    """Per-channel mean and population (divide-by-N) standard deviation."""
    means = [float(p.mean()) for p in img.planes()]
    sds = [float(p.std()) for p in img.planes()]
    return ChannelStats(*means, *sds)


def transfer_color(content: LabImage, style_stats: ChannelStats,
                   content_stats: ChannelStats) -> tuple[LabImage, ColorTransferTrace]:
    """Re-center each content channel, scale by sd_style/sd_content, shift to the style mean.

    A content channel whose SD is below ``DEGENERATE_SD`` gets ratio 1 and
    becomes the constant style mean. No clamping happens here.
    """
    centered, scaled, out, ratios, degenerate = [], [], [], [], []
    for c, plane in zip(CHANNELS, content.planes()):
        sd_c = content_stats.sd(c)
        is_flat = sd_c < DEGENERATE_SD
        ratio = 1.0 if is_flat else style_stats.sd(c) / sd_c
        cen = plane - content_stats.mean(c)
        if is_flat:
            cen = np.zeros_like(plane)
        sc = cen * ratio
        centered.append(cen)
        scaled.append(sc)
        out.append(sc + style_stats.mean(c))
        ratios.append(ratio)
        degenerate.append(is_flat)
    trace = ColorTransferTrace(LabImage(*centered), LabImage(*scaled),
                               tuple(ratios), tuple(degenerate))
    return LabImage(*out), trace
