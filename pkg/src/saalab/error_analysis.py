"""Signed-error distributions, MAE and RMSE of configured adders.

Error is always ``approximate - accurate``.  Because the exact high part
absorbs the imprecise carry without further error, the error of a pair only
depends on its low ``p`` bits; enumerating the ``2**(2p)`` low pairs gives the
exact distribution under uniform inputs.  The full-width enumeration and the
seeded Monte-Carlo path exist as independent cross-checks.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .adders import AdderConfig, approx_sum_raw, low_error_raw
from .rng import RngSpec, uniform_pairs

MAX_LOW_BITS = 16
MAX_FULL_BITS = 12
CHUNK = 1 << 20


class BoundExceededError(ValueError):
    """Requested enumeration is larger than the supported loop bound."""


@dataclass(frozen=True)
class ErrorStats:
    """Exact integer histogram of signed errors plus derived summaries."""

    histogram: dict = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    @property
    def abs_sum(self) -> int:
        return sum(abs(e) * c for e, c in self.histogram.items())

    @property
    def sq_sum(self) -> int:
        return sum(e * e * c for e, c in self.histogram.items())

    @property
    def signed_sum(self) -> int:
        return sum(e * c for e, c in self.histogram.items())

    @property
    def mae(self) -> float:
        return self.abs_sum / self.total

    @property
    def rmse(self) -> float:
        return math.sqrt(self.sq_sum / self.total)

    @property
    def mean_signed(self) -> float:
        return self.signed_sum / self.total

    @property
    def max_abs(self) -> int:
        return max(abs(e) for e in self.histogram)

    @property
    def error_rate(self) -> float:
        return (self.total - self.histogram.get(0, 0)) / self.total

    def merge(self, other: "ErrorStats") -> "ErrorStats":
        h = dict(self.histogram)
        for e, c in other.histogram.items():
            h[e] = h.get(e, 0) + c
        return ErrorStats(h)

    def scaled_down(self, factor: int) -> "ErrorStats":
        """Divide every count by ``factor`` (which must divide them all)."""
        if any(c % factor for c in self.histogram.values()):
            raise ValueError(f"counts are not all divisible by {factor}")
        return ErrorStats({e: c // factor for e, c in self.histogram.items()})

    def summary(self) -> dict:
        return {
            "total": self.total,
            "mae": self.mae,
            "rmse": self.rmse,
            "mean_signed": self.mean_signed,
            "max_abs": self.max_abs,
            "error_rate": self.error_rate,
        }


def stats_from_errors(errors: np.ndarray) -> ErrorStats:
    values, counts = np.unique(np.asarray(errors, dtype=np.int64), return_counts=True)
    return ErrorStats({int(v): int(c) for v, c in zip(values, counts)})


def merge_all(parts: Iterable[ErrorStats]) -> ErrorStats:
    return reduce(ErrorStats.merge, parts, ErrorStats())


def worker_count(workers: int | None = None) -> int:
    """Explicit ``workers``, else ``SAA_THREADS``, else the CPU count."""
    if workers is None:
        try:
            workers = int(os.environ.get("SAA_THREADS", "0"))
        except ValueError:
            workers = 0
    if workers <= 0:
        workers = os.cpu_count() or 1
    return workers


def _run_chunks(fn, chunks: Sequence, workers: int | None) -> ErrorStats:
    w = min(worker_count(workers), max(len(chunks), 1))
    if w == 1:
        return merge_all(fn(c) for c in chunks)
    with ThreadPoolExecutor(max_workers=w) as pool:
        return merge_all(pool.map(fn, chunks))


def _ranges(total: int, step: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def exhaustive_low_stats(cfg: AdderConfig, workers: int | None = None) -> ErrorStats:
    """Exact distribution over all ``2**(2p)`` low-bit operand pairs."""
    p = cfg.p
    if p > MAX_LOW_BITS:
        raise BoundExceededError(f"p={p} exceeds exhaustive-low bound {MAX_LOW_BITS}")
    side = 1 << p
    ys = np.arange(side, dtype=np.int64)
    rows = max(CHUNK // side, 1)

    def chunk(r):
        xs = np.arange(r[0], r[1], dtype=np.int64)[:, None]
        return stats_from_errors(low_error_raw(cfg, xs, ys[None, :]))

    return _run_chunks(chunk, _ranges(side, rows), workers)


def exhaustive_full_stats(cfg: AdderConfig, workers: int | None = None) -> ErrorStats:
    """Brute force over all ``2**(2n)`` full-width pairs via ``approx_sum``."""
    n = cfg.n
    if n > MAX_FULL_BITS:
        raise BoundExceededError(f"n={n} exceeds exhaustive-full bound {MAX_FULL_BITS}")
    side = 1 << n
    ys = np.arange(side, dtype=np.uint64)
    rows = max(CHUNK // side, 1)

    def chunk(r):
        xs = np.arange(r[0], r[1], dtype=np.uint64)[:, None]
        approx = approx_sum_raw(cfg, xs, ys[None, :]).astype(np.int64)
        return stats_from_errors(approx - (xs + ys[None, :]).astype(np.int64))

    return _run_chunks(chunk, _ranges(side, rows), workers)


def monte_carlo_stats(
    cfg: AdderConfig, samples: int, rng: RngSpec = RngSpec(), workers: int | None = None
) -> ErrorStats:
    """Seeded uniform sampling of full-width pairs.

    Partition ``j`` covers stream pairs ``[j*CHUNK, (j+1)*CHUNK)``, so the
    result does not depend on the worker count.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")

    def chunk(r):
        x, y = uniform_pairs(rng, cfg.n, r[0], r[1] - r[0])
        approx = approx_sum_raw(cfg, x, y)
        exact = x + y
        # both fit in 63 bits for n <= 62
        return stats_from_errors(approx.astype(np.int64) - exact.astype(np.int64))

    return _run_chunks(chunk, _ranges(samples, CHUNK), workers)


def histogram_percentages(stats: ErrorStats) -> list[tuple[int, float]]:
    total = stats.total
    if total == 0:
        raise ValueError("empty error statistics")
    return [(e, 100.0 * stats.histogram[e] / total) for e in sorted(stats.histogram)]


MODES = ("exhaustive-low", "exhaustive-full", "monte-carlo")


def compute_stats(
    cfg: AdderConfig,
    mode: str = "exhaustive-low",
    samples: int = 1_000_000,
    rng: RngSpec = RngSpec(),
    workers: int | None = None,
) -> ErrorStats:
    if mode == "exhaustive-low":
        return exhaustive_low_stats(cfg, workers)
    if mode == "exhaustive-full":
        return exhaustive_full_stats(cfg, workers)
    if mode == "monte-carlo":
        return monte_carlo_stats(cfg, samples, rng, workers)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class StatsRow:
    config: AdderConfig
    stats: ErrorStats

    @property
    def kind(self):
        return self.config.kind


def compare_table(
    configs: Sequence[AdderConfig],
    mode: str = "exhaustive-low",
    samples: int = 1_000_000,
    rng: RngSpec = RngSpec(),
    workers: int | None = None,
) -> list[StatsRow]:
    """One row per config, in input order."""
    if not configs:
        raise ValueError("no adder configurations given")
    widths = {(c.n, c.p) for c in configs}
    if len({n for n, _ in widths}) != 1:
        raise ValueError(f"configs disagree on adder width: {sorted(widths)}")
    return [StatsRow(c, compute_stats(c, mode, samples, rng, workers)) for c in configs]
