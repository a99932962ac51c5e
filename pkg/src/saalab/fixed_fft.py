"""Integer radix-2 FFT whose additions run through a configurable adder.

Samples are 32-bit two's-complement fixed-point numbers with ``frac_bits``
fractional bits.  Every butterfly addition/subtraction and the two
combination adds of each complex multiply go through the selected adder as
raw 32-bit patterns.  Multiplies and rescaling shifts are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .adders import AdderConfig, AdderKind, approx_sum_raw

WORD = 32
_MASK = (1 << WORD) - 1
_LIMIT = 1 << (WORD - 1)


class OverflowGuardError(ArithmeticError):
    """An intermediate sample left the signed 32-bit range."""


@dataclass(frozen=True)
class FixedFormat:
    """``frac_bits`` for samples, ``twiddle_bits`` for twiddle factors.

    The default is the largest sample fraction that keeps the unscaled
    512x512 forward transform of 8-bit pixels inside 32 bits
    (255 * 2^18 * 2^4 < 2^31).
    """

    frac_bits: int = 4
    twiddle_bits: int = 14
    word: int = WORD

    def __post_init__(self):
        if self.frac_bits < 0 or self.twiddle_bits < 1:
            raise ValueError("need frac_bits >= 0 and twiddle_bits >= 1")
        if self.word != WORD:
            raise ValueError("only 32-bit samples are supported")


def round_shift(v: np.ndarray, k: int) -> np.ndarray:
    """Arithmetic right shift by ``k`` with round-half-to-even."""
    if k == 0:
        return v
    q = v >> k
    r = v & ((1 << k) - 1)
    half = 1 << (k - 1)
    up = (r > half) | ((r == half) & ((q & 1) == 1))
    return q + up


def _check(v: np.ndarray, stage: str) -> None:
    if v.size and int(np.abs(v).max()) >= _LIMIT:
        raise OverflowGuardError(f"{stage}: |v| = {int(np.abs(v).max())} >= 2^31")


class RoutedArithmetic:
    """Add/subtract on signed int64 arrays through a 32-bit adder model."""

    def __init__(self, adder: AdderConfig):
        if adder.n != WORD:
            raise ValueError(f"image pipeline needs a {WORD}-bit adder, got n={adder.n}")
        self.adder = adder
        self.exact = adder.kind is AdderKind.ACCURATE or adder.p == 0

    def add(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        wide = a + b
        if wide.size and int(np.abs(wide).max()) >= _LIMIT:
            raise OverflowGuardError(f"sum magnitude {int(np.abs(wide).max())} >= 2^31")
        if self.exact:
            s = wide & _MASK
        else:
            ua = (a & _MASK).astype(np.uint64)
            ub = (b & _MASK).astype(np.uint64)
            s = (approx_sum_raw(self.adder, ua, ub) & np.uint64(_MASK)).astype(np.int64)
        # carry-out is dropped: wrap to signed 32-bit
        return s - ((s & _LIMIT) << 1)

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add(a, -b)


def exact_products(vr, vi, wr, wi, shift: int):
    """The four rescaled partial products of ``(vr + i vi) * (wr + i wi)``."""
    return (
        round_shift(vr * wr, shift),
        round_shift(vi * wi, shift),
        round_shift(vr * wi, shift),
        round_shift(vi * wr, shift),
    )


def _twiddles(m: int, bits: int, inverse: bool):
    j = np.arange(m // 2)
    ang = 2.0 * np.pi * j / m
    wr = np.rint(np.cos(ang) * (1 << bits)).astype(np.int64)
    wi = np.rint(np.sin(ang) * (1 << bits)).astype(np.int64)
    return wr, (wi if inverse else -wi)


def _bitrev(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    out = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        out |= ((idx >> b) & 1) << (bits - 1 - b)
    return out


class FixedPointFFT:
    """Radix-2 decimation-in-time transform along the last axis.

    The forward transform is unscaled; the inverse halves every butterfly
    output (total scale 1/N), so ``inverse(forward(x)) ~= x``.
    """

    def __init__(self, adder: AdderConfig, fmt: FixedFormat = FixedFormat()):
        self.arith = RoutedArithmetic(adder)
        self.fmt = fmt
        self.products = exact_products

    def cmul(self, vr, vi, wr, wi):
        rr, ii, ri, ir = self.products(vr, vi, wr, wi, self.fmt.twiddle_bits)
        return self.arith.sub(rr, ii), self.arith.add(ri, ir)

    def transform(self, re: np.ndarray, im: np.ndarray, inverse: bool = False, label: str = ""):
        n = re.shape[-1]
        if n & (n - 1) or n == 0:
            raise ValueError(f"transform length {n} is not a power of two")
        perm = _bitrev(n)
        re = re[..., perm]
        im = im[..., perm]
        lead = re.shape[:-1]
        add, sub = self.arith.add, self.arith.sub
        m, stage = 2, 1
        while m <= n:
            half = m // 2
            wr, wi = _twiddles(m, self.fmt.twiddle_bits, inverse)
            re = re.reshape(*lead, n // m, 2, half)
            im = im.reshape(*lead, n // m, 2, half)
            ur, ui = re[..., 0, :], im[..., 0, :]
            name = f"{label}stage {stage}"
            try:
                tr, ti = self.cmul(re[..., 1, :], im[..., 1, :], wr, wi)
                top_r, top_i = add(ur, tr), add(ui, ti)
                bot_r, bot_i = sub(ur, tr), sub(ui, ti)
            except OverflowGuardError as exc:
                raise OverflowGuardError(f"{name}: {exc}") from None
            if inverse:
                top_r, top_i = round_shift(top_r, 1), round_shift(top_i, 1)
                bot_r, bot_i = round_shift(bot_r, 1), round_shift(bot_i, 1)
            re = np.stack([top_r, bot_r], axis=-2).reshape(*lead, n)
            im = np.stack([top_i, bot_i], axis=-2).reshape(*lead, n)
            _check(re, name)
            _check(im, name)
            m *= 2
            stage += 1
        return re, im

    def forward2d(self, re, im):
        re, im = self.transform(re, im, label="forward rows ")
        re, im = self.transform(re.T, im.T, label="forward columns ")
        return re.T.copy(), im.T.copy()

    def inverse2d(self, re, im):
        # undo the forward passes in reverse order: columns, then rows
        re, im = self.transform(re.T, im.T, inverse=True, label="inverse columns ")
        re, im = self.transform(re.T, im.T, inverse=True, label="inverse rows ")
        return re, im
