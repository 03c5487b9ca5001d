"""RTLNP encoding: subsector averages, per-pixel codes, feature images, histograms."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from .geometry import RingOffset, RtlnpParams, SectorGeometry, build_geometry
from .imaging import GrayImage

#: codes are stored as int64
MAX_CODE_BITS = 62
#: 2**24 bins is already 128 MiB of int64 counts
MAX_HISTOGRAM_BITS = 24
_BAND_PIXELS = 1 << 15


@dataclass(frozen=True, eq=False)
class FeatureImage:
    """Per-pixel codes. The ``margin``-wide border is not encoded and holds 0."""

    codes: np.ndarray
    margin: int
    n_bits: int

    @property
    def width(self) -> int:
        return self.codes.shape[1]

    @property
    def height(self) -> int:
        return self.codes.shape[0]

    @property
    def interior(self) -> np.ndarray:
        m = self.margin
        return self.codes[m:self.height - m, m:self.width - m]

    def __eq__(self, other):
        if not isinstance(other, FeatureImage):
            return NotImplemented
        return (self.margin == other.margin and self.n_bits == other.n_bits
                and np.array_equal(self.codes, other.codes))

    def to_gray(self) -> GrayImage:
        """Scale codes to [0, 255] with ``floor(code * 255 / (2**n_bits - 1))``."""
        top = (1 << self.n_bits) - 1
        if self.n_bits <= 55:
            scaled = self.codes * 255 // top
        else:
            scaled = np.array([int(c) * 255 // top for c in self.codes.ravel()],
                              dtype=np.int64).reshape(self.codes.shape)
        return GrayImage(scaled.astype(np.uint8))


@dataclass(frozen=True, eq=False)
class Histogram:
    bins: np.ndarray

    @property
    def total(self) -> int:
        return int(self.bins.sum())

    def __len__(self):
        return len(self.bins)

    def __eq__(self, other):
        if not isinstance(other, Histogram):
            return NotImplemented
        return np.array_equal(self.bins, other.bins)

    def normalized(self) -> np.ndarray:
        """L1-normalized float64 copy; all zeros when the histogram is empty."""
        total = self.bins.sum()
        if total == 0:
            return np.zeros(len(self.bins), dtype=np.float64)
        return self.bins.astype(np.float64) / total


def subsector_average(image: GrayImage, center: Tuple[int, int],
                      offsets: Sequence[RingOffset], include_reference: bool) -> int:
    """Floored mean intensity of the pixels at ``center + offsets``.

    Inner subsectors pass ``include_reference=True`` so the reference pixel
    contributes one extra term to both the sum and the count.
    """
    c, r = center
    h, w = image.shape
    total = 0
    count = 0
    for o in offsets:
        cc, rr = c + o.dc, r + o.dr
        if not (0 <= cc < w and 0 <= rr < h):
            raise IndexError(f"offset ({o.dc}, {o.dr}) from {center} leaves the image")
        total += int(image.pixels[rr, cc])
        count += 1
    if include_reference:
        total += int(image.pixels[r, c])
        count += 1
    if count == 0:
        raise ValueError("empty subsector")
    return total // count


def encode_bit(a_in: int, a_out: int) -> int:
    return 0 if a_in <= a_out else 1


def encode_pixel(image: GrayImage, center: Tuple[int, int], geometry: SectorGeometry) -> int:
    """RTLNP code of one pixel; ``center`` is ``(column, row)``."""
    c, r = center
    m = geometry.margin
    if not (m <= c < image.width - m and m <= r < image.height - m):
        raise ValueError(f"center {center} is closer than {m} pixels to the border")
    code = 0
    for j, sector in enumerate(geometry.sectors):
        a_in = subsector_average(image, center, sector.inner, include_reference=True)
        a_out = subsector_average(image, center, sector.outer, include_reference=False)
        code |= encode_bit(a_in, a_out) << j
    return code


def _check_fits(image: GrayImage, margin: int) -> None:
    if image.width <= 2 * margin or image.height <= 2 * margin:
        raise ValueError(
            f"image {image.width}x{image.height} is too small for a neighborhood "
            f"of radius {margin} (need both sides > {2 * margin})")


def _shifted(img: np.ndarray, m: int, rows: slice, dc: int, dr: int) -> np.ndarray:
    w = img.shape[1]
    return img[rows.start + dr:rows.stop + dr, m + dc:w - m + dc]


def _sum_offsets(img, m, rows, offsets: Iterable[RingOffset], out: np.ndarray) -> np.ndarray:
    out[...] = 0
    for o in offsets:
        np.add(out, _shifted(img, m, rows, o.dc, o.dr), out=out)
    return out


def _encode_band(img: np.ndarray, geometry: SectorGeometry, rows: slice) -> np.ndarray:
    m = geometry.margin
    shape = (rows.stop - rows.start, img.shape[1] - 2 * m)
    center = _shifted(img, m, rows, 0, 0)
    codes = np.zeros(shape, dtype=np.int64)
    s_in = np.empty(shape, dtype=np.int32)
    s_out = np.empty(shape, dtype=np.int32)
    for j, sector in enumerate(geometry.sectors):
        _sum_offsets(img, m, rows, sector.inner, s_in)
        s_in += center
        _sum_offsets(img, m, rows, sector.outer, s_out)
        s_in //= len(sector.inner) + 1
        s_out //= len(sector.outer)
        codes |= (s_in > s_out).astype(np.int64) << j
    return codes


def feature_image(image: GrayImage, params: RtlnpParams, workers: int = 1) -> FeatureImage:
    """Encode every pixel that has a complete ``r_out`` neighborhood.

    Work per pixel is fixed by ``params``, so the cost is linear in the
    image area.  Rows are encoded in bands; with ``workers > 1`` the bands
    run on a thread pool.  The output does not depend on the worker count.
    """
    geometry = build_geometry(params)
    m = geometry.margin
    _check_fits(image, m)
    if geometry.sector_count > MAX_CODE_BITS:
        raise ValueError(f"{geometry.sector_count} sectors exceed the "
                         f"{MAX_CODE_BITS}-bit code limit")
    img = image.pixels.astype(np.int32)
    h, w = img.shape
    # fixed-size bands keep the working set in cache, so time per pixel
    # stays flat as images grow
    step = max(1, _BAND_PIXELS // (w - 2 * m))
    bands = [slice(a, min(a + step, h - m)) for a in range(m, h - m, step)]
    if workers <= 1 or len(bands) == 1:
        parts = [_encode_band(img, geometry, b) for b in bands]
    else:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            parts = list(pool.map(lambda b: _encode_band(img, geometry, b), bands))
    codes = np.zeros((h, w), dtype=np.int64)
    codes[m:h - m, m:w - m] = np.vstack(parts)
    return FeatureImage(codes, m, geometry.sector_count)


def histogram(feature: FeatureImage, n_bits: Optional[int] = None) -> Histogram:
    """Count interior codes into ``2**n_bits`` bins (default: the feature's bit width)."""
    n_bits = feature.n_bits if n_bits is None else n_bits
    if n_bits > MAX_HISTOGRAM_BITS:
        raise ValueError(f"a {n_bits}-bit histogram is too large")
    n_bins = 1 << n_bits
    codes = feature.interior.ravel()
    if codes.size and (codes.min() < 0 or codes.max() >= n_bins):
        raise ValueError(f"codes out of range for {n_bins} bins; "
                         "feature image and sector count disagree")
    return Histogram(np.bincount(codes, minlength=n_bins).astype(np.int64))


def rtlnp_histogram(image: GrayImage, params: RtlnpParams = RtlnpParams(),
                    workers: int = 1) -> Histogram:
    return histogram(feature_image(image, params, workers=workers))
