"""Command line entry point: ``oilfusion stylize`` and ``oilfusion analyze``."""
from __future__ import annotations

import argparse
import logging
import sys

from .edges import DEFAULT_USM_SIGMA, DEFAULT_USM_WEIGHT, UsmParams
from .errors import OilFusionError, UsageError
from .fusion import FusionConfig, parse_overlap
from .imaging import BlurParams
from .pipeline import DEFAULT_STRIDE, AnalyzeConfig, RunConfig, analyze, stylize


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _overlap(text):
    try:
        return parse_overlap(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentDefaultsHelpFormatter
    parser = _Parser(prog="oilfusion", formatter_class=fmt,
                     description="Render a photo in the style of an impressionist oil painting.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    st = sub.add_parser("stylize", formatter_class=fmt, help="stylize a photo")
    st.add_argument("-c", "--content", required=True, help="photo to render (PNG/JPEG)")
    st.add_argument("-s", "--style", required=True, help="reference oil painting (PNG/JPEG)")
    st.add_argument("-o", "--output", required=True, help="output PNG")
    st.add_argument("--patch-size", type=int, default=64, help="brush patch / tile side in pixels")
    st.add_argument("--stride", type=int, default=DEFAULT_STRIDE, help="patch-selection scan stride")
    st.add_argument("--overlap", type=_overlap, default="1/4",
                    help="tile step as a fraction of the patch size: 1/8, 1/4 or 1/2")
    st.add_argument("--alpha", type=float, default=0.5, help="texture injection strength in [0, 1]")
    st.add_argument("--usm-weight", type=float, default=DEFAULT_USM_WEIGHT,
                    help="unsharp-mask weight w in [0.1, 0.9]")
    st.add_argument("--usm-sigma", type=float, default=DEFAULT_USM_SIGMA, help="Gaussian blur sigma (px)")
    st.add_argument("--orientation-window", type=int, default=9,
                    help="odd box size for orientation smoothing")
    st.add_argument("--skip-color-transfer", action="store_true", help="bypass color matching")
    st.add_argument("--no-sharpen", action="store_true",
                    help="fuse into the color-matched L* instead of the sharpened one")
    st.add_argument("--seed", type=int, default=0, help="recorded in the run summary")
    st.add_argument("--trace", metavar="DIR", default=None,
                    help="write intermediate images and the color-transfer trace to DIR")
    st.add_argument("--summary", metavar="PATH", default=None, help="write a JSON run summary")
    st.add_argument("--dump-tiles", metavar="DIR", default=None, help="write per-tile before/after PNGs")
    st.add_argument("--workers", type=int, default=1, help="tile worker threads")

    an = sub.add_parser("analyze", formatter_class=fmt, help="extract the brush patch of a painting")
    an.add_argument("-s", "--style", required=True, help="oil painting (PNG/JPEG)")
    an.add_argument("-o", "--out-dir", default="analysis", help="output directory")
    an.add_argument("--window", type=int, default=64, help="window side in pixels")
    an.add_argument("--stride", type=int, default=DEFAULT_STRIDE, help="scan stride in pixels")
    an.add_argument("--orientation-map", action="store_true",
                    help="also write the gradient angle map as orientation.png")
    return parser


def parse_cli(argv=None):
    """Parse ``argv`` into a RunConfig (stylize) or AnalyzeConfig (analyze)."""
    args = build_parser().parse_args(argv)
    try:
        if args.command == "stylize":
            fusion = FusionConfig(
                patch_size=args.patch_size,
                overlap_fraction=args.overlap,
                blend_alpha=args.alpha,
                usm=UsmParams(args.usm_weight, BlurParams(args.usm_sigma)),
                orientation_window=args.orientation_window,
            )
            return RunConfig(
                content_path=args.content, style_path=args.style, output_path=args.output,
                fusion=fusion, stride=args.stride,
                skip_color_transfer=args.skip_color_transfer, sharpen=not args.no_sharpen,
                seed=args.seed, emit_trace=args.trace is not None, trace_dir=args.trace,
                summary_path=args.summary, dump_tiles=args.dump_tiles, workers=args.workers,
            )
        if args.stride < 1 or args.window < 1:
            raise ValueError("window and stride must be >= 1")
        return AnalyzeConfig(style_path=args.style, out_dir=args.out_dir, window=args.window,
                             stride=args.stride, orientation_map=args.orientation_map)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    logging.basicConfig(level=logging.INFO if "-v" in argv or "--verbose" in argv else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = parse_cli(argv)
        if isinstance(cfg, RunConfig):
            stylize(cfg)
            print(f"wrote {cfg.output_path}")
        else:
            print(analyze(cfg)["summary"])
    except OilFusionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
