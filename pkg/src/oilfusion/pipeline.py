"""End-to-end stylization and stroke analysis."""
from __future__ import annotations

import csv
import json
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .color_transfer import channel_stats, transfer_color
from .edges import gradient_field, usm_sharpen
from .errors import IoError
from .fusion import FusionConfig, fuse_L, recombine
from .imaging import (LabImage, RgbImage, gaussian_blur, lab_to_rgb, load_image,
                      rgb_to_lab, save_gray, save_image)
from .strokes import angular_power_profile, dominant_angle, scan_windows, select_brush_patch

log = logging.getLogger(__name__)

DEFAULT_STRIDE = 64


@dataclass
class RunConfig:
    content_path: str
    style_path: str
    output_path: str
    fusion: FusionConfig = field(default_factory=FusionConfig)
    stride: int = DEFAULT_STRIDE
    skip_color_transfer: bool = False
    sharpen: bool = True
    seed: int = 0
    emit_trace: bool = False
    trace_dir: Optional[str] = None
    summary_path: Optional[str] = None
    dump_tiles: Optional[str] = None
    workers: int = 1

    def __post_init__(self):
        for name in ("content_path", "style_path", "output_path"):
            if not getattr(self, name):
                raise ValueError(f"{name} must be non-empty")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")


@dataclass
class AnalyzeConfig:
    style_path: str
    out_dir: str
    window: int = 64
    stride: int = DEFAULT_STRIDE
    orientation_map: bool = False


def _ensure_dir(path) -> Path:
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoError(f"cannot create {path}: {exc}") from exc
    return path


def _save_lab(img: LabImage, path: Path):
    np.savez(path, L=img.L, a=img.a, b=img.b)


def _write_json(obj, path):
    try:
        with open(path, "w") as fh:
            json.dump(obj, fh, indent=2)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def stylize_lab(content: LabImage, style: LabImage, cfg: RunConfig, tile_hook=None):
    """Run the in-memory pipeline. Returns ``(result_lab, info)``."""
    fcfg = cfg.fusion
    content_stats = channel_stats(content)
    style_stats = channel_stats(style)
    if cfg.skip_color_transfer:
        matched, trace = content, None
    else:
        matched, trace = transfer_color(content, style_stats, content_stats)
    matched_stats = channel_stats(matched)

    L = matched.L
    enhanced = usm_sharpen(L, fcfg.usm) if cfg.sharpen else L
    # orientation comes from the blurred-then-enhanced photo
    guide = usm_sharpen(gaussian_blur(L, fcfg.usm.blur), fcfg.usm)
    orientation = gradient_field(guide)

    patch = select_brush_patch(style, fcfg.patch_size, cfg.stride)
    fused = fuse_L(enhanced, orientation, patch, fcfg, workers=cfg.workers, tile_hook=tile_hook)
    result = recombine(fused, matched)
    info = {
        "content_stats": content_stats.as_dict(),
        "style_stats": style_stats.as_dict(),
        "matched_stats": matched_stats.as_dict(),
        "ratios": list(trace.ratios) if trace else None,
        "degenerate_channels": list(trace.degenerate) if trace else None,
        "patch_origin": list(patch.origin),
        "patch_sd": patch.sd,
        "dominant_angle": patch.dominant_angle,
        "_matched": matched,
        "_trace": trace,
        "_patch": patch,
        "_enhanced": enhanced,
    }
    return result, info


def _config_echo(cfg: RunConfig) -> dict:
    f = cfg.fusion
    return {
        "content_path": cfg.content_path,
        "style_path": cfg.style_path,
        "output_path": cfg.output_path,
        "patch_size": f.patch_size,
        "stride": cfg.stride,
        "overlap_fraction": str(f.overlap_fraction),
        "blend_alpha": f.blend_alpha,
        "usm_weight": f.usm.w,
        "usm_sigma": f.usm.blur.sigma,
        "orientation_window": f.orientation_window,
        "skip_color_transfer": cfg.skip_color_transfer,
        "sharpen": cfg.sharpen,
        "seed": cfg.seed,
        "workers": cfg.workers,
    }


def stylize(cfg: RunConfig) -> RgbImage:
    content_rgb = load_image(cfg.content_path)
    style_rgb = load_image(cfg.style_path)

    hook = None
    if cfg.dump_tiles:
        tile_dir = _ensure_dir(cfg.dump_tiles)

        def hook(idx, anchor, tile, F, G, out):
            save_gray(tile, tile_dir / f"tile_{idx:05d}_before.png")
            save_gray(out, tile_dir / f"tile_{idx:05d}_after.png")

    result_lab, info = stylize_lab(rgb_to_lab(content_rgb), rgb_to_lab(style_rgb), cfg, tile_hook=hook)
    out = lab_to_rgb(result_lab)
    save_image(out, cfg.output_path)
    log.info("wrote %s (patch origin %s, angle %s)", cfg.output_path,
             info["patch_origin"], info["dominant_angle"])

    summary = {"config": _config_echo(cfg)}
    summary.update({k: v for k, v in info.items() if not k.startswith("_")})
    if cfg.emit_trace:
        tdir = _ensure_dir(cfg.trace_dir or os.path.splitext(cfg.output_path)[0] + "_trace")
        matched = info["_matched"]
        _save_lab(matched, tdir / "matched_lab.npz")
        save_image(lab_to_rgb(matched), tdir / "matched.png")
        save_gray(info["_enhanced"], tdir / "enhanced_L.png")
        save_gray(info["_patch"].L, tdir / "patch_L.png")
        trace = info["_trace"]
        if trace is not None:
            _save_lab(trace.centered, tdir / "centered_lab.npz")
            _save_lab(trace.scaled, tdir / "scaled_lab.npz")
        _write_json(summary, tdir / "summary.json")
    if cfg.summary_path:
        _write_json(summary, cfg.summary_path)
    return out


def analyze(cfg: AnalyzeConfig) -> dict:
    """Select the brush patch of a painting and write the supporting data.

    Files: ``patch.png`` (RGB crop), ``scan.csv`` (row,col,sd),
    ``profile.csv`` (degree,power,count), ``summary.txt`` and optionally
    ``orientation.png`` (gradient angle scaled 0..180 -> 0..255).
    """
    style_rgb = load_image(cfg.style_path)
    style = rgb_to_lab(style_rgb)
    scan = scan_windows(style.L, cfg.window, cfg.stride)
    patch = select_brush_patch(style, cfg.window, cfg.stride)
    out = _ensure_dir(cfg.out_dir)

    r, c = patch.origin
    crop = style_rgb.data[r:r + cfg.window, c:c + cfg.window]
    save_image(RgbImage(crop), out / "patch.png")
    try:
        with open(out / "scan.csv", "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["row", "col", "sd"])
            for row, col, sd in scan.entries:
                w.writerow([row, col, repr(sd)])
        profile = None
        if cfg.window >= 8:
            profile = angular_power_profile(patch.L)
            with open(out / "profile.csv", "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["degree", "power", "count"])
                for deg, (pw, n) in enumerate(zip(profile.bins, profile.counts)):
                    w.writerow([deg, repr(float(pw)), int(n)])
        angle = dominant_angle(profile) if profile is not None else None
        angle_txt = "none" if angle is None else f"{angle:g}"
        line = f"origin=({r},{c}) sd={patch.sd:.6g} dominant_angle={angle_txt}"
        with open(out / "summary.txt", "w") as fh:
            fh.write(line + "\n")
    except OSError as exc:
        raise IoError(f"cannot write analysis files: {exc}") from exc

    if cfg.orientation_map:
        field = gradient_field(style.L)
        save_gray(field.angle, out / "orientation.png", 0.0, 180.0)

    return {"origin": (r, c), "sd": patch.sd, "dominant_angle": angle,
            "windows": len(scan), "stride": cfg.stride, "summary": line}
