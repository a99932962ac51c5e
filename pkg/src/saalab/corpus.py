"""Test-image corpora.

Corpus files are inputs, not part of the package.  ``load_corpus`` reads a
directory of PGMs (e.g. the classic barbara/boat/... set); when none is at
hand, ``skimage_corpus`` assembles seven 512x512 8-bit images from the data
bundled with scikit-image (an optional dependency).
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .pgm import GrayImage, read_pgm

EXPECTED_SHAPE = (512, 512)
SKIMAGE_NAMES = ("camera", "moon", "brick", "grass", "gravel", "astronaut", "immunohistochemistry")
CORPUS_ENV = "SAA_CORPUS"


def _to_gray(a: np.ndarray) -> np.ndarray:
    if a.ndim == 2:
        return a.astype(np.uint8)
    from skimage.color import rgb2gray

    return np.rint(rgb2gray(a[..., :3]) * 255).astype(np.uint8)


def skimage_corpus() -> list[tuple[str, GrayImage]]:
    import skimage.data

    out = []
    for name in SKIMAGE_NAMES:
        px = _to_gray(getattr(skimage.data, name)())
        out.append((name, GrayImage(px)))
    return out


def load_corpus(directory, shape=EXPECTED_SHAPE) -> list[tuple[str, GrayImage]]:
    """All ``*.pgm`` files in ``directory``, sorted by name, checked against ``shape``."""
    out = []
    for path in sorted(Path(directory).glob("*.pgm")):
        img = read_pgm(path)
        if shape is not None and (img.height, img.width) != tuple(shape):
            raise ValueError(f"{path.name}: expected {shape[1]}x{shape[0]}, got {img.width}x{img.height}")
        out.append((path.stem, img))
    if not out:
        raise FileNotFoundError(f"no .pgm files in {directory}")
    return out


def default_corpus() -> list[tuple[str, GrayImage]]:
    """``$SAA_CORPUS`` if set, otherwise the scikit-image set."""
    directory = os.environ.get(CORPUS_ENV)
    if directory:
        return load_corpus(directory)
    return skimage_corpus()
