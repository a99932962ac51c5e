"""8-bit grayscale images and the PGM (P2/P5) file format."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class PGMError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GrayImage:
    pixels: np.ndarray  # (height, width) uint8

    def __post_init__(self):
        px = np.asarray(self.pixels)
        if px.ndim != 2:
            raise ValueError("grayscale image must be 2-D")
        if px.dtype != np.uint8:
            if px.size and (px.min() < 0 or px.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
            px = px.astype(np.uint8)
        px = np.ascontiguousarray(px)
        px.setflags(write=False)
        object.__setattr__(self, "pixels", px)

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    def __eq__(self, other):
        return isinstance(other, GrayImage) and np.array_equal(self.pixels, other.pixels)

    def __hash__(self):
        return hash((self.pixels.shape, self.pixels.tobytes()))


_TOKEN = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)")


def _tokens(data: bytes, count: int, pos: int = 0):
    out = []
    for _ in range(count):
        m = _TOKEN.match(data, pos)
        if not m:
            raise PGMError("truncated PGM header")
        out.append(m.group(1))
        pos = m.end()
    return out, pos


def load_pgm(data: bytes) -> GrayImage:
    """Decode binary (P5) or ASCII (P2) PGM with maxval 255."""
    (magic, w, h, maxval), pos = _tokens(data, 4)
    if magic not in (b"P5", b"P2"):
        raise PGMError(f"not a PGM file (magic {magic!r})")
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError:
        raise PGMError("malformed PGM header") from None
    if width <= 0 or height <= 0:
        raise PGMError("PGM dimensions must be positive")
    if maxval != 255:
        raise PGMError(f"unsupported maxval {maxval} (only 255)")
    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        raster = data[pos + 1 : pos + 1 + count]
        if len(raster) != count:
            raise PGMError(f"truncated raster: expected {count} bytes, got {len(raster)}")
        px = np.frombuffer(raster, dtype=np.uint8)
    else:
        body = re.sub(rb"#[^\n]*", b"", data[pos:]).split()
        if len(body) < count:
            raise PGMError(f"truncated raster: expected {count} samples, got {len(body)}")
        px = np.array([int(t) for t in body[:count]], dtype=np.int64)
        if px.min() < 0 or px.max() > 255:
            raise PGMError("sample outside 0..255")
    return GrayImage(px.reshape(height, width))


def save_pgm(image: GrayImage) -> bytes:
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.pixels.tobytes()


def read_pgm(path) -> GrayImage:
    return load_pgm(Path(path).read_bytes())


def write_pgm(path, image: GrayImage) -> None:
    Path(path).write_bytes(save_pgm(image))
