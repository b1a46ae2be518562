"""Impressionist oil-painting style rendering.

Color statistics of a reference painting are matched in L*a*b*, then an
automatically selected brush-stroke patch is fused into the photo's
lightness plane in the Fourier domain.
"""
from .color_transfer import ChannelStats, ColorTransferTrace, channel_stats, transfer_color
from .edges import OrientationField, UsmParams, gradient_field, smooth_orientations, usm_sharpen
from .fusion import (FusionConfig, StrokeFilter, TileGrid, fft2, fuse_L, ifft2, make_stroke_filter,
                     recombine, rotate_patch, tile_grid)
from .imaging import (BlurParams, LabImage, RgbImage, gaussian_blur, lab_to_rgb, load_image,
                      rgb_to_lab, save_image)
from .pipeline import AnalyzeConfig, RunConfig, analyze, stylize
from .strokes import (AngularPowerProfile, BrushPatch, WindowScan, angular_power_profile,
                      dominant_angle, scan_windows, select_brush_patch)

__version__ = "0.1.0"
