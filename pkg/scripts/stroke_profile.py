"""Plot the brush patch a painting yields and its angular power profile.

    python scripts/stroke_profile.py painting.png [--window 64] [--out profile.png]
"""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from oilfusion.imaging import load_image, rgb_to_lab
from oilfusion.strokes import angular_power_profile, dominant_angle, select_brush_patch


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("painting")
    ap.add_argument("--window", type=int, default=64)
    ap.add_argument("--stride", type=int, default=64)
    ap.add_argument("--out", default="profile.png")
    args = ap.parse_args()

    lab = rgb_to_lab(load_image(args.painting))
    patch = select_brush_patch(lab, args.window, args.stride)
    prof = angular_power_profile(patch.L)
    angle = dominant_angle(prof)

    fig, (a0, a1) = plt.subplots(1, 2, figsize=(10, 4))
    a0.imshow(patch.L, cmap="gray")
    a0.set_title(f"patch at {patch.origin}, sd={patch.sd:.2f}")
    a0.axis("off")
    a1.plot(np.arange(180), prof.bins)
    a1.set_xlabel("frequency orientation (deg)")
    a1.set_ylabel("mean |F|^2")
    label = "none" if angle is None else f"{angle:g} deg"
    a1.set_title(f"stroke orientation: {label}")
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    print(f"wrote {args.out} (stroke orientation {label})")


if __name__ == "__main__":
    main()
