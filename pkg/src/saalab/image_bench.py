"""FFT/IFFT image reconstruction through approximate adders, scored by PSNR/SSIM."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .adders import AdderConfig
from .fixed_fft import FixedFormat, FixedPointFFT, round_shift
from .pgm import GrayImage
from .quality import psnr, ssim

# The accurate round trip is pixel-exact at this format on 512x512 inputs.
DEFAULT_FORMAT = FixedFormat()


@dataclass(frozen=True, eq=False)
class SpectrumMatrix:
    real: np.ndarray
    imag: np.ndarray
    fmt: FixedFormat

    @property
    def height(self) -> int:
        return self.real.shape[0]

    @property
    def width(self) -> int:
        return self.real.shape[1]


def _check_dims(h: int, w: int) -> None:
    for d in (h, w):
        if d < 1 or d & (d - 1):
            raise ValueError(f"image dimensions must be powers of two, got {w}x{h}")


def fft2d(image: GrayImage, adder: AdderConfig, fmt: FixedFormat = DEFAULT_FORMAT) -> SpectrumMatrix:
    """Rows then columns, every addition routed through ``adder``."""
    _check_dims(image.height, image.width)
    engine = FixedPointFFT(adder, fmt)
    re = image.pixels.astype(np.int64) << fmt.frac_bits
    re, im = engine.forward2d(re, np.zeros_like(re))
    return SpectrumMatrix(re, im, fmt)


def ifft2d(spectrum: SpectrumMatrix, adder: AdderConfig, fmt: FixedFormat | None = None) -> GrayImage:
    fmt = fmt or spectrum.fmt
    _check_dims(spectrum.height, spectrum.width)
    engine = FixedPointFFT(adder, fmt)
    re, _ = engine.inverse2d(spectrum.real, spectrum.imag)
    px = round_shift(re, fmt.frac_bits)
    return GrayImage(np.clip(px, 0, 255).astype(np.uint8))


def reconstruct(image: GrayImage, adder: AdderConfig, fmt: FixedFormat = DEFAULT_FORMAT) -> GrayImage:
    return ifft2d(fft2d(image, adder, fmt), adder, fmt)


@dataclass(frozen=True)
class QualityReport:
    psnr_db: float
    ssim: float


def score(reference: GrayImage, target: GrayImage) -> QualityReport:
    return QualityReport(psnr(reference, target), ssim(reference, target))


@dataclass(frozen=True)
class BenchRow:
    image: str
    adder: AdderConfig
    psnr_db: float
    ssim: float


@dataclass
class BenchReport:
    images: list
    adders: list
    rows: list

    def cell(self, image: str, adder: AdderConfig) -> BenchRow:
        for r in self.rows:
            if r.image == image and r.adder == adder:
                return r
        raise KeyError((image, adder))

    def average_psnr(self, adder: AdderConfig) -> float:
        vals = [r.psnr_db for r in self.rows if r.adder == adder]
        return float(np.mean(vals))

    def average_ssim(self, adder: AdderConfig) -> float:
        return float(np.mean([r.ssim for r in self.rows if r.adder == adder]))


def benchmark(
    corpus: Sequence[tuple[str, GrayImage]],
    adders: Sequence[AdderConfig],
    fmt: FixedFormat = DEFAULT_FORMAT,
    keep=None,
) -> BenchReport:
    """Reconstruct every image with every adder and score against the original.

    ``keep(name, adder, image)`` is called with each reconstruction, e.g. to
    write it to disk.
    """
    if not corpus:
        raise ValueError("empty image corpus")
    rows = []
    for name, img in corpus:
        for adder in adders:
            out = reconstruct(img, adder, fmt)
            if keep is not None:
                keep(name, adder, out)
            q = score(img, out)
            rows.append(BenchRow(name, adder, q.psnr_db, q.ssim))
    return BenchReport([n for n, _ in corpus], list(adders), rows)


def fmt_real(v: float) -> str:
    """10 significant digits; infinity spelled ``inf``."""
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.10g}"


def report_csv(report: BenchReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["image", "adder", "psnr_db", "ssim"])
    for r in report.rows:
        w.writerow([r.image, r.adder.kind.value, fmt_real(r.psnr_db), fmt_real(r.ssim)])
    return buf.getvalue()


def _json_real(v: float):
    return "inf" if math.isinf(v) else float(fmt_real(v))


def report_json(report: BenchReport) -> dict:
    """Tables 1-2 layout: one row per adder, one column per image, plus averages."""
    psnr_tab, ssim_tab = {}, {}
    for a in report.adders:
        key = a.kind.value
        psnr_tab[key] = {img: _json_real(report.cell(img, a).psnr_db) for img in report.images}
        ssim_tab[key] = {img: _json_real(report.cell(img, a).ssim) for img in report.images}
    return {
        "images": list(report.images),
        "adders": [a.as_dict() for a in report.adders],
        "psnr": psnr_tab,
        "ssim": ssim_tab,
        "average_psnr": {a.kind.value: _json_real(report.average_psnr(a)) for a in report.adders},
        "average_ssim": {a.kind.value: _json_real(report.average_ssim(a)) for a in report.adders},
    }


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
