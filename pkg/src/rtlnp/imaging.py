"""Grayscale image container, PGM I/O and synthetic test images."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

PathLike = Union[str, os.PathLike]

_PIL_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", ".gif"}


class ImageError(Exception):
    """Base class for image loading failures."""


class ImageNotFoundError(ImageError, FileNotFoundError):
    pass


class ImageFormatError(ImageError, ValueError):
    """Unsupported or corrupt raster data."""


@dataclass(frozen=True, eq=False)
class GrayImage:
    """An 8-bit grayscale image.

    ``pixels`` is a read-only ``(height, width)`` uint8 array, so row-major
    order is the natural memory layout.
    """

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D pixel grid, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            if np.issubdtype(arr.dtype, np.floating) and not np.all(arr == np.floor(arr)):
                raise ValueError("pixel values must be integers")
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.flags.writeable = False
        object.__setattr__(self, "pixels", arr)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def shape(self):
        return self.pixels.shape

    def __getitem__(self, key):
        return self.pixels[key]

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.pixels, other.pixels))

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


def luma_bt601(rgb: np.ndarray) -> np.ndarray:
    """BT.601 luma of an ``(..., 3)`` uint8 array, rounded half-up.

    Integer arithmetic keeps the rounding exact: ``(299 R + 587 G + 114 B
    + 500) // 1000``.
    """
    rgb = np.asarray(rgb, dtype=np.int64)
    y = (299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000
    return np.clip(y, 0, 255).astype(np.uint8)


def _read_pnm_tokens(data: bytes, count: int, pos: int):
    tokens = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos:pos + 1].isspace():
            pos += 1
        if pos < n and data[pos:pos + 1] == b"#":
            while pos < n and data[pos:pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos:pos + 1].isspace() and data[pos:pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise ImageFormatError("truncated PGM header")
        tokens.append(data[start:pos])
    return tokens, pos


def decode_pgm(data: bytes) -> GrayImage:
    """Decode binary (P5) or ASCII (P2) PGM bytes with maxval <= 255."""
    magic = data[:2]
    if magic not in (b"P5", b"P2"):
        raise ImageFormatError(f"not a PGM file (magic {magic!r})")
    try:
        (w, h, maxval), pos = _read_pnm_tokens(data, 3, 2)
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise ImageFormatError(f"malformed PGM header: {exc}") from None
    if width < 1 or height < 1:
        raise ImageFormatError(f"invalid PGM size {width}x{height}")
    if not 1 <= maxval <= 255:
        raise ImageFormatError(f"unsupported PGM maxval {maxval} (need 1..255)")

    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        pos += 1
        raster = np.frombuffer(data, dtype=np.uint8, count=-1, offset=pos)
        if raster.size < width * height:
            raise ImageFormatError(
                f"truncated PGM raster: {raster.size} of {width * height} bytes")
        values = raster[: width * height].astype(np.int64)
    else:
        try:
            values = np.array(data[pos:].split()[: width * height], dtype=np.int64)
        except ValueError:
            raise ImageFormatError("non-numeric PGM sample") from None
        if values.size < width * height:
            raise ImageFormatError("truncated PGM raster")

    if values.max(initial=0) > maxval:
        raise ImageFormatError("PGM sample exceeds maxval")
    if maxval != 255:
        values = (values * 255 * 2 + maxval) // (2 * maxval)
    return GrayImage(values.reshape(height, width))


def encode_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + np.ascontiguousarray(image.pixels).tobytes()


def save_pgm(image: GrayImage, path: PathLike) -> None:
    Path(path).write_bytes(encode_pgm(image))


def _load_with_pillow(path: Path) -> GrayImage:
    try:
        from PIL import Image, UnidentifiedImageError
    except ImportError:
        raise ImageFormatError(
            f"{path}: reading {path.suffix} files requires Pillow") from None
    try:
        with Image.open(path) as im:
            im.load()
            if im.mode == "L":
                return GrayImage(np.asarray(im))
            if im.mode in ("1", "P", "LA", "RGBA", "RGB", "CMYK", "YCbCr"):
                return GrayImage(luma_bt601(np.asarray(im.convert("RGB"))))
            raise ImageFormatError(f"{path}: unsupported image mode {im.mode}")
    except (UnidentifiedImageError, OSError, SyntaxError) as exc:
        raise ImageFormatError(f"{path}: cannot decode image ({exc})") from None


def load_grayscale(path: PathLike) -> GrayImage:
    """Load an image file as 8-bit grayscale.

    PGM is decoded natively; PNG, JPEG and a few other formats go through
    Pillow when it is installed. Color images are reduced with BT.601 luma.

    Raises
    ------
    ImageNotFoundError
        If ``path`` does not exist.
    ImageFormatError
        If the format is unsupported or the data is corrupt.
    """
    path = Path(path)
    if not path.is_file():
        raise ImageNotFoundError(f"{path}: no such image file")
    suffix = path.suffix.lower()
    if suffix in (".pgm", ".pnm"):
        try:
            return decode_pgm(path.read_bytes())
        except ImageFormatError as exc:
            raise ImageFormatError(f"{path}: {exc}") from None
    if suffix in _PIL_SUFFIXES:
        return _load_with_pillow(path)
    raise ImageFormatError(f"{path}: unsupported image format {suffix or '(none)'}")


def synth_image(kind: str, width: int, height: int, *, value: int = 0,
                period: int = 1) -> GrayImage:
    """Deterministic synthetic image.

    Parameters
    ----------
    kind : {'constant', 'ramp_x', 'ramp_y', 'checker'}
        ``constant`` fills with ``value``; ``ramp_x`` sets pixel ``(c, r)`` to
        ``c mod 256`` (``ramp_y`` likewise with ``r``); ``checker`` alternates
        0/255 squares of side ``period``, starting with 0 at the origin.
    """
    if width < 1 or height < 1:
        raise ValueError(f"image size must be positive, got {width}x{height}")
    cols = np.arange(width)[None, :]
    rows = np.arange(height)[:, None]
    if kind == "constant":
        if not 0 <= value <= 255:
            raise ValueError(f"constant value {value} outside [0, 255]")
        px = np.full((height, width), value)
    elif kind == "ramp_x":
        px = np.broadcast_to(cols % 256, (height, width))
    elif kind == "ramp_y":
        px = np.broadcast_to(rows % 256, (height, width))
    elif kind == "checker":
        if period < 1:
            raise ValueError("checker period must be >= 1")
        px = ((cols // period + rows // period) % 2) * 255
    else:
        raise ValueError(f"unknown synthetic image kind {kind!r}")
    return GrayImage(px)
