import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import three_region_gt
from oracles import disc_pixels, pixel_agreement_pct
from scis.oversegment import FhParams
from scis.raster import LabelMap, RasterImage
from scis.session import (
    SeedingError,
    Stroke,
    apply_seed_mask,
    apply_stroke,
    build_training_sets,
    create_session,
    segment,
    update,
)
from scis.svm import SvmParams

FLAT_FH = FhParams(k=24, min_size=20, smoothing_sigma=0)


def test_create_session_uniform():
    img = RasterImage(np.full((100, 100, 3), 50, dtype=np.uint8))
    s = create_session(img, FLAT_FH)
    assert s.sp.num_superpixels == 1
    assert s.seeds.seed_labels.max() == 0
    assert s.model is None and s.segmentation is None


def test_create_session_halves(halves_image):
    s = create_session(halves_image, FLAT_FH)
    assert s.sp.num_superpixels == 2


def test_create_session_idempotent(three_region_image):
    a = create_session(three_region_image, FLAT_FH)
    b = create_session(three_region_image, FLAT_FH)
    assert np.array_equal(a.sp.assignment, b.sp.assignment)
    np.testing.assert_array_equal(a.descriptors, b.descriptors)


class TestStrokes:
    def test_radius_zero_single_pixel(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)], brush_radius=0))
        assert s.seeds.seed_labels[5, 5] == 1
        assert (s.seeds.seed_labels > 0).sum() == 1

    def test_erase_everything(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)], brush_radius=3))
        apply_stroke(s, Stroke(0, [(5, 5)], brush_radius=5, erase=True))
        assert s.seeds.seed_labels.max() == 0
        assert s.seeds.num_classes == 0

    def test_corner_disc_clipped(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(2, [(0, 0)], brush_radius=2))
        expected = disc_pixels(0, 0, 2, 50, 50)
        got = {(x, y) for y, x in zip(*np.nonzero(s.seeds.seed_labels))}
        assert got == expected

    def test_out_of_bounds_rejected(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        with pytest.raises(ValueError, match="out of bounds"):
            apply_stroke(s, Stroke(1, [(50, 5)]))

    def test_later_strokes_overwrite(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)], brush_radius=2))
        apply_stroke(s, Stroke(2, [(5, 5)], brush_radius=1))
        assert s.seeds.seed_labels[5, 5] == 2
        assert s.seeds.seed_labels[5, 3] == 1


class TestTrainingSets:
    def test_single_class_single_superpixel(self):
        img = RasterImage(np.full((30, 30, 3), 10, dtype=np.uint8))
        s = create_session(img, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)]))
        assert build_training_sets(s) == {1: [0]}

    def test_conflicting_seeds_excluded(self):
        img = RasterImage(np.full((30, 30, 3), 10, dtype=np.uint8))
        s = create_session(img, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)]))
        apply_stroke(s, Stroke(2, [(20, 20)]))
        assert build_training_sets(s) == {}

    def test_unseeded_superpixel_excluded(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)]))
        sets = build_training_sets(s)
        assert sum(len(v) for v in sets.values()) == 1


class TestSegment:
    def test_fully_seeded_no_prediction(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 25)], brush_radius=2))
        apply_stroke(s, Stroke(2, [(40, 25)], brush_radius=2))
        out = segment(s)
        left = int(s.sp.assignment[25, 5])
        right = int(s.sp.assignment[25, 40])
        assert out.labels[25, 5] == 1 and out.labels[25, 40] == 2
        assert np.all(out.labels[s.sp.assignment == left] == 1)
        assert np.all(out.labels[s.sp.assignment == right] == 2)

    def test_two_region_perfect(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        out = update(s, [Stroke(1, [(10, 25)], 2), Stroke(2, [(40, 25)], 2)])
        expected = np.ones((50, 50), dtype=np.int32)
        expected[:, 25:] = 2
        assert pixel_agreement_pct(out.labels, expected) == 100.0

    def test_single_class_errors(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 5)]))
        with pytest.raises(SeedingError, match="<2 classes"):
            segment(s)

    def test_conflicted_class_reported(self, three_region_image):
        s = create_session(three_region_image, FLAT_FH)
        apply_stroke(s, Stroke(1, [(5, 30)]))
        apply_stroke(s, Stroke(2, [(30, 30)]))
        # class 3 seeds land in the superpixel already seeded by class 2
        apply_stroke(s, Stroke(3, [(35, 30)]))
        with pytest.raises(SeedingError) as exc_info:
            segment(s)
        assert exc_info.value.missing_classes == (2, 3)

    def test_output_total_and_constant_per_superpixel(self, three_region_image):
        s = create_session(three_region_image, FLAT_FH)
        out = update(s, [Stroke(1, [(5, 30)], 2), Stroke(2, [(30, 30)], 2),
                         Stroke(3, [(50, 30)], 2)])
        assert out.is_total
        for pixels in s.sp.pixel_lists:
            assert len(np.unique(out.labels.ravel()[pixels])) == 1


class TestUpdate:
    def test_empty_update_idempotent(self, halves_image):
        s = create_session(halves_image, FLAT_FH)
        first = update(s, [Stroke(1, [(10, 25)], 2), Stroke(2, [(40, 25)], 2)])
        again = update(s, [])
        assert again == first

    def test_batch_vs_incremental_replay(self, three_region_image):
        strokes = [Stroke(1, [(5, 10)], 2), Stroke(2, [(30, 30)], 2),
                   Stroke(3, [(50, 50)], 2), Stroke(1, [(8, 55)], 1)]
        s1 = create_session(three_region_image, FLAT_FH)
        batch = update(s1, strokes)
        s2 = create_session(three_region_image, FLAT_FH)
        for stroke in strokes[:-1]:
            apply_stroke(s2, stroke)
        segment(s2)
        incremental = update(s2, [strokes[-1]])
        assert batch == incremental

    def test_corrective_stroke_wins(self):
        # 3 flat regions; mislead region 3 with a bad model, then correct it
        px = np.zeros((30, 90, 3), dtype=np.uint8)
        px[:, 30:60] = (0, 120, 0)
        px[:, 60:] = (0, 124, 0)  # nearly identical to region 2
        s = create_session(RasterImage(px), FhParams(k=1, min_size=20, smoothing_sigma=0))
        assert s.sp.num_superpixels == 3
        out = update(s, [Stroke(1, [(10, 15)], 2), Stroke(2, [(45, 15)], 2)])
        right_sp = int(s.sp.assignment[15, 75])
        assert out.labels[15, 75] == 2  # region 3 follows its color twin
        out2 = update(s, [Stroke(3, [(75, 15)], 2)])
        assert np.all(out2.labels[s.sp.assignment == right_sp] == 3)


def test_apply_seed_mask(halves_image):
    s = create_session(halves_image, FLAT_FH)
    mask = np.zeros((50, 50), dtype=np.int32)
    mask[25, 10] = 1
    mask[25, 40] = 2
    apply_seed_mask(s, LabelMap(mask))
    out = segment(s)
    assert out.labels[0, 0] == 1 and out.labels[0, 49] == 2


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_replay_determinism_and_seed_fidelity(seed):
    rng = np.random.default_rng(seed)
    px = np.zeros((40, 40, 3), dtype=np.uint8)
    px[:, 20:] = (255, 255, 255)
    px = np.clip(px.astype(int) + rng.integers(-2, 3, px.shape), 0, 255).astype(np.uint8)
    img = RasterImage(px)

    strokes = []
    for cls, x in ((1, 5), (2, 35)):
        strokes.append(Stroke(cls, [(x, int(rng.integers(0, 40)))], brush_radius=2))
    for _ in range(rng.integers(0, 4)):
        cls = int(rng.integers(1, 3))
        x = int(rng.integers(0, 18)) if cls == 1 else int(rng.integers(22, 40))
        strokes.append(Stroke(cls, [(x, int(rng.integers(0, 40)))], brush_radius=1))

    s1 = create_session(img, FLAT_FH, SvmParams())
    out1 = update(s1, strokes)
    s2 = create_session(img, FLAT_FH, SvmParams())
    out2 = update(s2, strokes)
    assert out1 == out2

    # every unambiguously seeded superpixel keeps its seeded class
    training = build_training_sets(s1)
    for cls, sp_ids in training.items():
        for sp_id in sp_ids:
            assert np.all(out1.labels[s1.sp.assignment == sp_id] == cls)
