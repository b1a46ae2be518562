from fractions import Fraction

import numpy as np
import pytest

from oilfusion.edges import OrientationField, gradient_field, smooth_orientations
from oilfusion.errors import (DimensionMismatch, ImageSmallerThanPatch, InvalidParameter, NotSquare,
                              SizeMismatch)
from oilfusion.fusion import (FusionConfig, fft2, fuse_L, hann_window, ifft2, make_stroke_filter,
                              recombine, rotate_patch, tile_count, tile_grid)
from oilfusion.imaging import LabImage
from oilfusion.strokes import BrushPatch, angular_power_profile, dominant_angle

from oracles import (angle_diff, grating, matrix_dft2, matrix_idft2, naive_dft2,
                     rotate_bilinear_loop)


def make_patch(L):
    L = np.asarray(L, dtype=float)
    angle = dominant_angle(angular_power_profile(L))
    return BrushPatch(L.shape[0], L, (0, 0), float(L.std()), angle)


# ---------------------------------------------------------------- config / grid

def test_config_validation():
    cfg = FusionConfig()
    assert cfg.patch_size == 64 and cfg.overlap_fraction == Fraction(1, 4) and cfg.blend_alpha == 0.5
    assert cfg.step == 16
    assert FusionConfig(overlap_fraction="1/8").step == 8
    with pytest.raises(InvalidParameter):
        FusionConfig(overlap_fraction="1/3")
    with pytest.raises(InvalidParameter):
        FusionConfig(patch_size=4)
    with pytest.raises(InvalidParameter):
        FusionConfig(blend_alpha=1.5)


@pytest.mark.parametrize("shape", [(64, 64), (100, 77), (512, 512), (130, 64)])
@pytest.mark.parametrize("frac", ["1/8", "1/4", "1/2"])
def test_grid_covers_image(shape, frac):
    cfg = FusionConfig(overlap_fraction=frac)
    grid = tile_grid(shape, cfg)
    cover = np.zeros(shape)
    for r, c in grid.tiles:
        assert 0 <= r <= shape[0] - 64 and 0 <= c <= shape[1] - 64
        cover[r:r + 64, c:c + 64] += 1
    assert cover.min() >= 1
    assert len(grid.tiles) == tile_count(shape[0], 64, cfg.step) * tile_count(shape[1], 64, cfg.step)


def test_hann_window_positive():
    w = hann_window(64)
    assert w.min() > 0 and w.max() <= 1
    assert np.allclose(w, w.T)


def test_image_smaller_than_patch():
    with pytest.raises(ImageSmallerThanPatch):
        tile_grid((63, 200), FusionConfig())


# ---------------------------------------------------------------- FFT

def test_fft_constant():
    spectrum = fft2(np.full((16, 16), 3.0))
    assert spectrum[0, 0] == pytest.approx(3.0 * 256)
    spectrum[0, 0] = 0
    assert np.abs(spectrum).max() < 1e-9


def test_fft_roundtrip(rng):
    x = rng.normal(size=(32, 32))
    assert np.abs(ifft2(fft2(x)) - x).max() <= 1e-9 * np.abs(x).max()


def test_fft_against_naive(rng):
    x = rng.normal(size=(8, 8))
    assert np.abs(fft2(x) - naive_dft2(x)).max() < 1e-6


def test_fft_not_square():
    with pytest.raises(NotSquare):
        fft2(np.zeros((8, 16)))
    with pytest.raises(NotSquare):
        fft2(np.zeros((4, 4)))


# ---------------------------------------------------------------- filter

def test_filter_constant_patch():
    f = make_stroke_filter(make_patch(np.full((16, 16), 5.0)))
    assert np.all(f.magnitude == 0)
    assert f.stroke_angle is None


def test_filter_grating_impulses():
    n = 32
    x = np.arange(n)
    patch = make_patch(np.tile(np.cos(2 * np.pi * 3 * x / n), (n, 1)))
    f = make_stroke_filter(patch)
    assert f.magnitude[0, 3] == 1.0 and f.magnitude[0, n - 3] == 1.0
    rest = f.magnitude.copy()
    rest[0, 3] = rest[0, n - 3] = 0
    assert rest.max() < 1e-12
    assert f.stroke_angle == 90.0


def test_filter_dc_zero_and_range(rng):
    f = make_stroke_filter(make_patch(rng.normal(size=(16, 16))))
    assert f.magnitude[0, 0] == 0 and f.magnitude.max() == pytest.approx(1.0)
    assert f.magnitude.min() >= 0


def test_filter_size_mismatch(rng):
    with pytest.raises(SizeMismatch):
        make_stroke_filter(make_patch(rng.normal(size=(16, 16))), size=64)


# ---------------------------------------------------------------- rotation

def test_rotate_zero_identity(rng):
    x = rng.normal(size=(32, 32))
    assert np.abs(rotate_patch(x, 0) - x).max() < 1e-12


def test_rotate_90_turns_stripes():
    vertical = grating(64, 90)
    horizontal = grating(64, 0)
    out = rotate_patch(vertical, 90)
    assert np.sqrt(np.mean((out - horizontal) ** 2)) < 1e-2


@pytest.mark.parametrize("delta", [0, 15, 30, 45, 60, 75, 90, 105, 120, 135, 150, 165])
def test_rotate_shifts_dominant_angle(delta):
    g = grating(128, 20)
    base = dominant_angle(angular_power_profile(g))
    got = dominant_angle(angular_power_profile(rotate_patch(g, delta)))
    assert abs(angle_diff(got, base + delta)) <= 3


def test_rotate_matches_loop_oracle(rng):
    x = rng.normal(size=(16, 16))
    for deg in (7.5, 33.0, 90.0, 151.2):
        assert np.abs(rotate_patch(x, deg) - rotate_bilinear_loop(x, deg)).max() < 1e-12


# ---------------------------------------------------------------- fusion

def _edge_plane():
    plane = np.full((128, 128), 30.0)
    plane[:, 70:] = 70.0
    return plane


def test_alpha_zero_identity(rng):
    plane = rng.uniform(0, 100, (100, 90))
    patch = make_patch(grating(64, 30))
    out = fuse_L(plane, gradient_field(plane), patch, FusionConfig(blend_alpha=0.0))
    assert np.abs(out - plane).max() < 1e-6


def test_constant_plane_stays_constant():
    plane = np.full((96, 96), 55.0)
    patch = make_patch(grating(64, 30))
    out = fuse_L(plane, gradient_field(plane), patch, FusionConfig(blend_alpha=1.0))
    assert np.abs(out - 55.0).max() < 1e-6


def test_per_tile_spectra_match_oracle():
    """Recompute every tile's fused spectrum from oracle DFT + loop rotation."""
    plane = _edge_plane()
    g = grating(64, 90)
    patch = make_patch(g)
    cfg = FusionConfig(blend_alpha=0.8)
    field = gradient_field(plane)
    smooth = smooth_orientations(field, cfg.orientation_window)
    seen = []

    def hook(idx, anchor, tile, F, G, out):
        seen.append((anchor, tile.copy(), F, G, out))

    fuse_L(plane, field, patch, cfg, tile_hook=hook)
    assert len(seen) == 25
    rotations = set()
    for (r, c), tile, F, G, out in seen:
        m = smooth.magnitude[r:r + 64, c:c + 64]
        t = np.radians(2 * smooth.angle[r:r + 64, c:c + 64])
        cs, sn = (m * np.cos(t)).sum(), (m * np.sin(t)).sum()
        if np.hypot(cs, sn) > 1e-9:
            target = (np.degrees(0.5 * np.arctan2(sn, cs)) + 90) % 180
            rot = (target - patch.dominant_angle) % 180
        else:
            rot = 0.0
        rotations.add(round(rot, 6))
        rp = rotate_bilinear_loop(g, rot) if rot else g
        P = matrix_dft2(rp - rp.mean())
        mag = np.abs(P)
        mag[0, 0] = 0
        mag /= mag.max()
        F_ref = matrix_dft2(tile)
        G_ref = F_ref + 0.8 * mag * F_ref
        G_ref[0, 0] = F_ref[0, 0]
        scale = np.abs(F_ref).max()
        assert np.abs(F - F_ref).max() < 1e-9 * scale
        assert np.abs(G - G_ref).max() < 1e-9 * scale
        assert np.abs(out - matrix_idft2(G_ref).real).max() < 1e-9 * np.abs(tile).max()
    # the vertical edge pulls the stroke vertical (perpendicular to an x-gradient)
    assert 0.0 in rotations


def test_parseval_per_tile(rng):
    plane = rng.uniform(0, 100, (128, 128))
    patch = make_patch(grating(64, 45))

    def hook(idx, anchor, tile, F, G, out):
        n2 = tile.size
        assert abs((tile ** 2).sum() - (np.abs(F) ** 2).sum() / n2) <= 1e-6 * (tile ** 2).sum()
        assert abs((out ** 2).sum() - (np.abs(G) ** 2).sum() / n2) <= 1e-6 * (out ** 2).sum()

    fuse_L(plane, gradient_field(plane), patch, FusionConfig(), tile_hook=hook)


def test_alpha_monotone(rng):
    plane = rng.uniform(20, 80, (128, 128))
    field = gradient_field(plane)
    patch = make_patch(grating(64, 60))
    rms = [np.sqrt(np.mean((fuse_L(plane, field, patch, FusionConfig(blend_alpha=a)) - plane) ** 2))
           for a in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)]
    assert rms[0] == pytest.approx(0, abs=1e-9)
    assert all(b >= a for a, b in zip(rms, rms[1:]))


def test_mean_preserved(rng):
    plane = rng.uniform(20, 80, (160, 144))
    out = fuse_L(plane, gradient_field(plane), make_patch(grating(64, 10)), FusionConfig())
    assert abs(out.mean() - plane.mean()) <= 0.005 * plane.mean()


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_worker_count_bit_identical(rng, workers):
    plane = rng.uniform(0, 100, (150, 170))
    field = gradient_field(plane)
    patch = make_patch(grating(64, 25))
    one = fuse_L(plane, field, patch, FusionConfig(), workers=1)
    many = fuse_L(plane, field, patch, FusionConfig(), workers=workers)
    assert np.array_equal(one, many)


def test_absent_angle_uses_unrotated_patch(rng):
    plane = rng.uniform(0, 100, (64, 64))
    noise = rng.normal(size=(64, 64))
    patch = BrushPatch(64, noise, (0, 0), float(noise.std()), None)
    seen = []
    fuse_L(plane, gradient_field(plane), patch, FusionConfig(blend_alpha=1.0),
           tile_hook=lambda i, a, t, F, G, o: seen.append((F, G)))
    mag = make_stroke_filter(patch).magnitude
    F, G = seen[0]
    assert np.allclose(G, F + mag * F)


def test_fuse_errors(rng):
    patch = make_patch(grating(64, 0))
    with pytest.raises(ImageSmallerThanPatch):
        fuse_L(np.zeros((32, 128)), gradient_field(np.zeros((32, 128))), patch, FusionConfig())
    with pytest.raises(SizeMismatch):
        fuse_L(np.zeros((64, 64)), gradient_field(np.zeros((64, 64))), patch, FusionConfig(patch_size=32))
    with pytest.raises(DimensionMismatch):
        fuse_L(np.zeros((64, 64)), gradient_field(np.zeros((65, 64))), patch, FusionConfig())


# ---------------------------------------------------------------- recombine

def test_recombine(rng):
    img = LabImage(rng.uniform(0, 100, (8, 9)), rng.normal(size=(8, 9)), rng.normal(size=(8, 9)))
    same = recombine(img.L, img)
    assert np.array_equal(same.L, img.L) and np.array_equal(same.a, img.a) and np.array_equal(same.b, img.b)
    zeros = recombine(np.zeros((8, 9)), img)
    assert np.all(zeros.L == 0) and np.array_equal(zeros.a, img.a) and np.array_equal(zeros.b, img.b)
    with pytest.raises(DimensionMismatch):
        recombine(np.zeros((8, 8)), img)
