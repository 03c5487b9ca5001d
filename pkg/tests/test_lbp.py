import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_image
from rtlnp import GrayImage, lbp_code, lbp_feature_image, lbp_histogram, synth_image
from rtlnp.reference import reference_lbp_codes


def test_constant_is_all_ones():
    assert lbp_code(synth_image("constant", 3, 3, value=9), (1, 1)) == 255


def test_strict_maximum_is_zero():
    px = np.full((3, 3), 10)
    px[1, 1] = 11
    assert lbp_code(GrayImage(px), (1, 1)) == 0


def test_bit_order():
    px = np.zeros((3, 3))
    px[1, 1] = 5
    px[1, 2] = 5   # (1, 0) -> bit 0
    px[0, 2] = 9   # (1, -1) -> bit 1
    assert lbp_code(GrayImage(px), (1, 1)) == 0b11


def test_random_5x5_matches_oracle(rng):
    img = random_image(rng, 5, 5)
    assert lbp_code(img, (2, 2)) == reference_lbp_codes(img.pixels)[2, 2]


def test_feature_image_matches_oracle(rng):
    img = random_image(rng, 16, 16, 0, 8)  # few levels, many ties
    assert np.array_equal(lbp_feature_image(img).codes, reference_lbp_codes(img.pixels))


def test_histogram_constant():
    h = lbp_histogram(synth_image("constant", 10, 10, value=1))
    assert len(h) == 256 and h.bins[255] == 64 and h.total == 64


def test_histogram_matches_oracle(rng):
    img = random_image(rng, 16, 16)
    ref = np.bincount(reference_lbp_codes(img.pixels)[1:-1, 1:-1].ravel(), minlength=256)
    assert np.array_equal(lbp_histogram(img).bins, ref)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(3, 30), st.integers(3, 30), st.integers(-50, 50))
def test_mass_and_shift(seed, h, w, b):
    px = np.random.default_rng(seed).integers(50, 206, size=(h, w))
    hist = lbp_histogram(GrayImage(px))
    assert len(hist) == 256 and hist.total == (h - 2) * (w - 2)
    assert lbp_feature_image(GrayImage(px)) == lbp_feature_image(GrayImage(px + b))


def test_errors():
    with pytest.raises(ValueError):
        lbp_histogram(synth_image("constant", 2, 5))
    with pytest.raises(ValueError):
        lbp_code(synth_image("constant", 5, 5), (0, 2))
