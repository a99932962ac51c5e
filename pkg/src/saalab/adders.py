"""Bit-exact behavioral models of the accurate adder and 13 static approximate adders.

Every adder splits its ``n``-bit operands into an imprecise low part of ``p``
bits and an exact high part of ``n - p`` bits.  The imprecise logic produces
the ``p`` low sum bits and (for most kinds) a single carry into the exact
part.  Sums are ``n + 1`` bits wide; bit ``n`` is the exact part's carry-out.

All kernels below are written with plain bitwise operators so that they work
unchanged on Python ints and on ``numpy.uint64`` arrays.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

MAX_WIDTH = 62


class AdderKind(enum.Enum):
    ACCURATE = "accurate"
    LOA = "loa"
    LOAWA = "loawa"
    APPROX5 = "approx5"
    HEAA = "heaa"
    M_HEAA = "m_heaa"
    OLOCA = "oloca"
    HOERAA = "hoeraa"
    SETA = "seta"
    LZTA = "lzta"
    LDCA = "ldca"
    HOANED = "hoaned"
    HERLOA = "herloa"
    M_HERLOA = "m_herloa"

    @classmethod
    def parse(cls, name: str) -> "AdderKind":
        """Accept ``m-herloa``, ``M_HERLOA``, ``m_herloa`` and friends."""
        key = name.strip().lower().replace("-", "_")
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"unknown adder kind {name!r}")

    @property
    def label(self) -> str:
        return self.name.replace("_", "-")


# Canonical order: accurate first, then the approximate adders.
ALL_KINDS = tuple(AdderKind)
APPROXIMATE_KINDS = ALL_KINDS[1:]

# Kinds whose imprecise part drives no carry into the exact part.
NO_CARRY_KINDS = frozenset({AdderKind.LOAWA, AdderKind.SETA})

# Kinds whose imprecise logic treats X and Y differently.
ASYMMETRIC_KINDS = frozenset({AdderKind.APPROX5, AdderKind.LDCA})

_MIN_P = {
    AdderKind.OLOCA: 2,
    AdderKind.M_HEAA: 2,
    AdderKind.HOERAA: 2,
    AdderKind.HOANED: 2,
    AdderKind.SETA: 2,
    AdderKind.HERLOA: 2,
    AdderKind.M_HERLOA: 4,
}


def min_imprecise_width(kind: AdderKind) -> int:
    """Smallest nonzero ``p`` the kind's imprecise logic can be built with."""
    return _MIN_P.get(kind, 1)


class ConfigError(ValueError):
    """Raised for adder configurations that violate structural constraints."""


@dataclass(frozen=True)
class AdderConfig:
    kind: AdderKind
    n: int
    p: int
    l: int = 0
    k: int = 0

    @property
    def name(self) -> str:
        """Module-style identifier, e.g. ``m_herloa_n32_p10_k6``."""
        s = f"{self.kind.value}_n{self.n}_p{self.p}"
        if self.kind is AdderKind.LDCA:
            s += f"_l{self.l}"
        elif self.kind is AdderKind.M_HERLOA:
            s += f"_k{self.k}"
        return s

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "n": self.n, "p": self.p, "l": self.l, "k": self.k}


def validate_config(
    kind: AdderKind | str,
    n: int,
    p: int,
    l: Optional[int] = None,
    k: Optional[int] = None,
) -> AdderConfig:
    """Check widths against the kind's structure and fill variant defaults.

    LDCA defaults to two equal halves (``l = p // 2``); M-HERLOA defaults to
    ``k = p - 4`` constant-one bits, the largest legal value.
    """
    if isinstance(kind, str):
        kind = AdderKind.parse(kind)
    if not 1 <= n <= MAX_WIDTH:
        raise ConfigError(f"n={n} outside 1..{MAX_WIDTH}")
    if p < 0 or p >= n:
        raise ConfigError(f"p={p} must satisfy 0 <= p < n={n}")
    if p != 0 and p < min_imprecise_width(kind):
        raise ConfigError(
            f"{kind.label} needs p >= {min_imprecise_width(kind)} (or p = 0), got p={p}"
        )

    if kind is AdderKind.LDCA:
        if l is None:
            l = p // 2
        if not 0 <= l <= p:
            raise ConfigError(f"LDCA requires 0 <= l <= p, got l={l}, p={p}")
    elif l not in (None, 0):
        raise ConfigError(f"l is only meaningful for LDCA, got l={l} for {kind.label}")

    if kind is AdderKind.M_HERLOA:
        kmax = max(p - 4, 0)
        if k is None:
            k = kmax
        if not 0 <= k <= kmax:
            raise ConfigError(f"M-HERLOA requires 0 <= k <= p-4, got k={k}, p={p}")
    elif k not in (None, 0):
        raise ConfigError(f"k is only meaningful for M-HERLOA, got k={k} for {kind.label}")

    return AdderConfig(kind, n, p, l or 0, k or 0)


@dataclass(frozen=True)
class Word:
    """An unsigned bit-vector with an explicit width."""

    value: int
    width: int

    def __post_init__(self):
        if self.width < 0 or not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} does not fit in {self.width} bits")

    def __int__(self):
        return self.value

    def bit(self, i: int) -> int:
        return (self.value >> i) & 1


@dataclass(frozen=True)
class ImpreciseResult:
    low_sum: Word
    carry_in: int


def _check_operand(v, width: int):
    v = int(v)
    if not 0 <= v < (1 << width):
        raise ValueError(f"operand {v} does not fit in {width} bits")
    return v


def _low_kernel(cfg: AdderConfig, x, y):
    """Return ``(low_sum, carry)`` for low operands ``x, y`` (already < 2**p).

    Works elementwise on ints or unsigned integer arrays.
    """
    kind, p = cfg.kind, cfg.p
    if p == 0:
        return x & 0, x & 0
    mask = (1 << p) - 1

    if kind is AdderKind.ACCURATE:
        s = x + y
        return s & mask, s >> p

    xt = (x >> (p - 1)) & 1
    yt = (y >> (p - 1)) & 1
    ors = x | y

    if kind is AdderKind.LOA:
        return ors, xt & yt
    if kind is AdderKind.LOAWA:
        return ors, x & 0
    if kind is AdderKind.APPROX5:
        return y, xt
    if kind is AdderKind.LZTA:
        return x & 0, xt | yt
    if kind is AdderKind.LDCA:
        ones = (1 << cfg.l) - 1
        return (y & (mask ^ ones)) | ones, xt

    c = xt & yt
    if kind is AdderKind.HEAA:
        top = (xt | yt) & (c ^ 1)
        return (ors & (mask >> 1)) | (top << (p - 1)), c

    # Everything left reads bit p-2 as well.
    xs = (x >> (p - 2)) & 1
    ys = (y >> (p - 2)) & 1
    a = xs & ys
    below = (1 << (p - 2)) - 1
    second = (ors >> (p - 2)) & 1

    if kind is AdderKind.M_HEAA:
        top = (xt | yt) & (c ^ 1)
        return below | (second << (p - 2)) | (top << (p - 1)), c
    if kind is AdderKind.OLOCA:
        return below | (ors & (3 << (p - 2))), c
    if kind is AdderKind.HOERAA:
        top = (c & a) | ((c ^ 1) & (xt | yt))
        return below | (second << (p - 2)) | (top << (p - 1)), c
    if kind is AdderKind.HOANED:
        top = (c & a) | ((c ^ 1) & (xt | yt | a))
        return below | (second << (p - 2)) | (top << (p - 1)), c
    if kind is AdderKind.SETA:
        return (ors & mask) | (a * below), x & 0

    # HERLOA family
    xo = xt ^ yt
    top = xo | a
    sec = (((xo ^ 1) & a) ^ 1) & second
    t = xo & a
    rest = (ors | (t * below)) & below
    if kind is AdderKind.M_HERLOA:
        rest = rest | ((1 << cfg.k) - 1)
    return rest | (sec << (p - 2)) | (top << (p - 1)), c


def imprecise_eval(cfg: AdderConfig, xlow, ylow) -> ImpreciseResult:
    """Evaluate the imprecise part on ``p``-bit operands."""
    xlow = _check_operand(xlow, cfg.p)
    ylow = _check_operand(ylow, cfg.p)
    s, c = _low_kernel(cfg, xlow, ylow)
    return ImpreciseResult(Word(int(s), cfg.p), int(c))


def accurate_sum(cfg: AdderConfig, x, y) -> Word:
    x = _check_operand(x, cfg.n)
    y = _check_operand(y, cfg.n)
    return Word(x + y, cfg.n + 1)


def approx_sum(cfg: AdderConfig, x, y) -> Word:
    x = _check_operand(x, cfg.n)
    y = _check_operand(y, cfg.n)
    return Word(int(approx_sum_raw(cfg, x, y)), cfg.n + 1)


def signed_error(cfg: AdderConfig, x, y) -> int:
    """``approx_sum - accurate_sum`` for one operand pair."""
    return approx_sum(cfg, x, y).value - accurate_sum(cfg, x, y).value


def approx_sum_raw(cfg: AdderConfig, x, y):
    """Unchecked approximate sum; ``x`` and ``y`` may be uint64 arrays."""
    p = cfg.p
    mask = (1 << p) - 1
    s, c = _low_kernel(cfg, x & mask, y & mask)
    return (((x >> p) + (y >> p) + c) << p) | s


def low_error_raw(cfg: AdderConfig, xlow, ylow):
    """Signed error from the low operand bits alone (error locality).

    Inputs must be signed-integer arrays or ints below ``2**p``.
    """
    s, c = _low_kernel(cfg, xlow, ylow)
    return s + (c << cfg.p) - (xlow + ylow)
