"""Regenerate the bundled 512x512 sample images.

Photos are smooth procedural scenes with mild sensor-like noise; the
"paintings" are built from thousands of rotated brush dabs so they carry the
kind of directional stroke texture the brush-patch selector looks for.

    python scripts/make_samples.py [--out src/oilfusion/samples]
"""
import argparse
import math
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw, ImageFilter

SIZE = 512


def _lerp(c0, c1, t):
    return (1 - t)[..., None] * np.asarray(c0, float) + t[..., None] * np.asarray(c1, float)


def landscape(rng):
    y, x = np.mgrid[0:SIZE, 0:SIZE] / SIZE
    img = _lerp((90, 140, 215), (200, 220, 240), y / 0.55)
    sun = np.exp(-((x - 0.72) ** 2 + (y - 0.2) ** 2) / 0.004)
    img += sun[..., None] * np.array([60, 45, 10])
    far = 0.5 + 0.05 * np.sin(9 * x + 1.0) + 0.02 * np.sin(23 * x)
    near = 0.62 + 0.06 * np.sin(5 * x + 2.0) + 0.015 * np.sin(31 * x + 0.3)
    img = np.where((y > far)[..., None], _lerp((95, 110, 140), (70, 100, 90), np.clip((y - far) * 5, 0, 1)), img)
    grass = _lerp((70, 130, 50), (40, 90, 30), np.clip((y - near) * 2.5, 0, 1))
    img = np.where((y > near)[..., None], grass, img)
    for cx in rng.uniform(0.05, 0.95, 6):
        base = 0.6 + 0.05 * rng.random()
        trunk = (np.abs(x - cx) < 0.006) & (y > base) & (y < base + 0.08)
        crown = ((x - cx) ** 2 / 0.0015 + (y - base + 0.03) ** 2 / 0.003) < 1
        img[trunk] = (80, 55, 35)
        img[crown] = (35, 85, 40) + rng.normal(0, 6, 3)
    img += rng.normal(0, 3.0, img.shape)
    return np.clip(img, 0, 255).astype(np.uint8)


def harbor(rng):
    y, x = np.mgrid[0:SIZE, 0:SIZE] / SIZE
    img = _lerp((240, 190, 140), (120, 150, 200), y / 0.5)
    horizon = 0.55
    for left in np.arange(0.02, 0.98, 0.09):
        h = rng.uniform(0.12, 0.3)
        col = rng.uniform(110, 220, 3)
        block = (x > left) & (x < left + 0.07) & (y > horizon - h) & (y < horizon)
        img[block] = col
        win = block & (np.mod(x * 60, 1) < 0.35) & (np.mod(y * 60, 1) < 0.4)
        img[win] = col * 0.6
    water = y > horizon
    ripple = 0.5 + 0.5 * np.sin(140 * y + 8 * np.sin(11 * x))
    mirror = np.clip(2 * horizon - y, 0, 1)
    src = img[(mirror * (SIZE - 1)).astype(int), (x * (SIZE - 1)).astype(int)]
    refl = 0.55 * src + 0.45 * np.array([40, 70, 110]) + 12 * ripple[..., None]
    img = np.where(water[..., None], refl, img)
    img += rng.normal(0, 3.0, img.shape)
    return np.clip(img, 0, 255).astype(np.uint8)


def _dab_canvas(rng, palette_fn, n, length, width, angle_fn, blur=0.6):
    palette = palette_fn(np.mgrid[0:SIZE, 0:SIZE] / SIZE)
    base = Image.fromarray(palette)
    draw = ImageDraw.Draw(base)
    for _ in range(n):
        cx, cy = rng.uniform(-10, SIZE + 10, 2)
        theta = angle_fn(cx / SIZE, cy / SIZE, rng)
        col = palette[int(np.clip(cy, 0, SIZE - 1)), int(np.clip(cx, 0, SIZE - 1))].astype(float)
        # mostly a lightness jitter, a little hue drift
        col = col * rng.normal(1.0, 0.12) + rng.normal(0, 6, 3)
        col = tuple(int(v) for v in np.clip(col, 0, 255))
        L = length * rng.uniform(0.7, 1.3)
        W = width * rng.uniform(0.7, 1.3)
        ux, uy = math.cos(theta), math.sin(theta)
        vx, vy = -uy, ux
        pts = [(cx + sx * ux * L / 2 + sy * vx * W / 2, cy + sx * uy * L / 2 + sy * vy * W / 2)
               for sx, sy in ((-1, -1), (1, -1), (1, 1), (-1, 1))]
        draw.polygon(pts, fill=col)
    return np.asarray(base.filter(ImageFilter.GaussianBlur(blur)))


def painting_strokes(rng):
    def palette(g):
        y, x = g
        img = _lerp((120, 160, 190), (230, 200, 150), y)
        img[y > 0.6] = _lerp((70, 120, 80), (150, 150, 70), x)[y > 0.6]
        return np.clip(img, 0, 255).astype(np.uint8)
    return _dab_canvas(rng, palette, 14000, 22, 5,
                       lambda x, y, r: math.radians(20 + r.normal(0, 6)))


def painting_dots(rng):
    def palette(g):
        y, x = g
        img = _lerp((200, 180, 120), (90, 130, 170), np.clip(y * 1.4 - 0.2, 0, 1))
        return np.clip(img, 0, 255).astype(np.uint8)
    return _dab_canvas(rng, palette, 30000, 5, 4, lambda x, y, r: r.uniform(0, math.pi), blur=0.4)


def painting_swirl(rng):
    def palette(g):
        y, x = g
        img = _lerp((30, 60, 140), (90, 120, 200), y)
        img[(x - 0.75) ** 2 + (y - 0.2) ** 2 < 0.01] = (235, 210, 90)
        img[y > 0.7] = (30, 50, 40)
        return np.clip(img, 0, 255).astype(np.uint8)

    def swirl(x, y, r):
        return math.atan2(y - 0.4, x - 0.4) + math.pi / 2 + r.normal(0, 0.15)
    return _dab_canvas(rng, palette, 16000, 26, 5, swirl)


SAMPLES = {
    "photo_landscape.png": landscape,
    "photo_harbor.png": harbor,
    "painting_strokes.png": painting_strokes,
    "painting_dots.png": painting_dots,
    "painting_swirl.png": painting_swirl,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src/oilfusion/samples"))
    ap.add_argument("--seed", type=int, default=1874)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for i, (name, fn) in enumerate(SAMPLES.items()):
        rng = np.random.default_rng(args.seed + i)
        Image.fromarray(fn(rng), mode="RGB").save(out / name)
        print("wrote", out / name)


if __name__ == "__main__":
    main()
