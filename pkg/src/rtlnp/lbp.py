"""Classic 3x3 local binary pattern, kept as the comparison baseline."""

from __future__ import annotations

from typing import Tuple

import numpy as np

from .descriptor import FeatureImage, Histogram, histogram
from .geometry import ring_offsets
from .imaging import GrayImage


def lbp_code(image: GrayImage, center: Tuple[int, int]) -> int:
    """8-bit LBP code at ``(column, row)``; bit ``p`` is set when neighbor
    ``p`` (ring-1 order) is >= the center."""
    c, r = center
    if not (1 <= c < image.width - 1 and 1 <= r < image.height - 1):
        raise ValueError(f"center {center} lies on the image border")
    px = image.pixels
    ref = px[r, c]
    code = 0
    for p, o in enumerate(ring_offsets(1)):
        if px[r + o.dr, c + o.dc] >= ref:
            code |= 1 << p
    return code


def lbp_feature_image(image: GrayImage) -> FeatureImage:
    if image.width < 3 or image.height < 3:
        raise ValueError(f"image {image.width}x{image.height} too small for LBP (need 3x3)")
    px = image.pixels
    h, w = px.shape
    center = px[1:h - 1, 1:w - 1]
    codes = np.zeros((h, w), dtype=np.int64)
    inner = codes[1:h - 1, 1:w - 1]
    for p, o in enumerate(ring_offsets(1)):
        neighbor = px[1 + o.dr:h - 1 + o.dr, 1 + o.dc:w - 1 + o.dc]
        inner |= (neighbor >= center).astype(np.int64) << p
    return FeatureImage(codes, 1, 8)


def lbp_histogram(image: GrayImage) -> Histogram:
    """256-bin histogram over the interior (1-pixel margin) codes."""
    return histogram(lbp_feature_image(image))
