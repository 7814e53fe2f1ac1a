import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scis.descriptor import CSV_HEADER, describe_all, descriptors_to_csv
from scis.oversegment import FhParams, SuperpixelMap, felzenszwalb_segment
from scis.raster import DimensionMismatchError, RasterImage


def test_uniform_white_single_superpixel():
    img = RasterImage(np.full((5, 5, 3), 255, dtype=np.uint8))
    sp = SuperpixelMap(np.zeros((5, 5), dtype=np.int32), 1)
    d = describe_all(sp, img)
    assert d.shape == (1, 5)
    np.testing.assert_allclose(d[0], [1, 1, 1, 0.5, 0.5])


def test_two_pixel_superpixel_on_3x1():
    # superpixel 0 = pixels (0,0) black and (2,0) white; superpixel 1 = middle
    px = np.array([[[0, 0, 0], [10, 20, 30], [255, 255, 255]]], dtype=np.uint8)
    img = RasterImage(px)
    sp = SuperpixelMap(np.array([[0, 1, 0]], dtype=np.int32), 2)
    d = describe_all(sp, img)
    # hand-computed: means (0+255)/2/255 = 0.5, cx = (0+2)/2 / (3-1) = 0.5, cy = 0
    np.testing.assert_allclose(d[0], [0.5, 0.5, 0.5, 0.5, 0.0])


def test_descriptor_count_equals_s():
    rng = np.random.default_rng(0)
    img = RasterImage(rng.integers(0, 256, (20, 30, 3)).astype(np.uint8))
    sp = felzenszwalb_segment(img, FhParams(min_size=5))
    d = describe_all(sp, img)
    assert d.shape == (sp.num_superpixels, 5)
    assert np.all(d >= 0) and np.all(d <= 1)


def test_dimension_mismatch():
    img = RasterImage(np.zeros((4, 4, 3), dtype=np.uint8))
    sp = SuperpixelMap(np.zeros((3, 3), dtype=np.int32), 1)
    with pytest.raises(DimensionMismatchError):
        describe_all(sp, img)


def test_degenerate_axis_normalizes_to_zero():
    img = RasterImage(np.zeros((1, 4, 3), dtype=np.uint8))
    sp = SuperpixelMap(np.zeros((1, 4), dtype=np.int32), 1)
    d = describe_all(sp, img)
    assert d[0, 4] == 0.0  # height 1 -> cy is 0


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_permuting_ids_permutes_descriptors(seed):
    rng = np.random.default_rng(seed)
    img = RasterImage(rng.integers(0, 256, (8, 8, 3)).astype(np.uint8))
    assign = rng.integers(0, 4, (8, 8)).astype(np.int32)
    _, inv = np.unique(assign, return_inverse=True)
    assign = inv.reshape(8, 8).astype(np.int32)
    s = int(assign.max()) + 1
    d = describe_all(SuperpixelMap(assign, s), img)

    perm = rng.permutation(s)
    d_perm = describe_all(SuperpixelMap(perm[assign].astype(np.int32), s), img)
    np.testing.assert_allclose(d_perm[perm], d)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_mean_color_within_channel_hull(seed):
    rng = np.random.default_rng(seed)
    img = RasterImage(rng.integers(0, 256, (10, 10, 3)).astype(np.uint8))
    assign = rng.integers(0, 3, (10, 10)).astype(np.int32)
    _, inv = np.unique(assign, return_inverse=True)
    assign = inv.reshape(10, 10).astype(np.int32)
    sp = SuperpixelMap(assign, int(assign.max()) + 1)
    d = describe_all(sp, img)
    flat = img.pixels.reshape(-1, 3) / 255.0
    for sp_id, pixels in enumerate(sp.pixel_lists):
        colors = flat[pixels]
        for ch in range(3):
            assert colors[:, ch].min() - 1e-12 <= d[sp_id, ch] <= colors[:, ch].max() + 1e-12


def test_translation_shifts_cx():
    rng = np.random.default_rng(4)
    patch = rng.integers(0, 256, (5, 5, 3)).astype(np.uint8)
    w, h = 20, 11
    for dx in (0, 3):
        px = np.full((h, w, 3), 200, dtype=np.uint8)
        px[3:8, 2 + dx:7 + dx] = patch
        assign = np.zeros((h, w), dtype=np.int32)
        assign[3:8, 2 + dx:7 + dx] = 1
        d = describe_all(SuperpixelMap(assign, 2), RasterImage(px))
        if dx == 0:
            cx0 = d[1, 3]
        else:
            assert d[1, 3] == pytest.approx(cx0 + dx / (w - 1), abs=1e-9)


def test_csv_dump():
    img = RasterImage(np.full((2, 2, 3), 255, dtype=np.uint8))
    sp = SuperpixelMap(np.zeros((2, 2), dtype=np.int32), 1)
    text = descriptors_to_csv(describe_all(sp, img))
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER
    assert lines[1].startswith("0,1.000000000,1.000000000,1.000000000,")
