"""Behavioral vs. structural equivalence checking."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..adders import AdderConfig, approx_sum_raw
from ..rng import RngSpec, uniform_pairs
from .build import build_adder_netlist
from .core import Netlist, evaluate

MAX_EXHAUSTIVE_BITS = 12
_BATCH = 1 << 18


@dataclass(frozen=True)
class EquivalenceReport:
    config: AdderConfig
    mode: str
    pairs_checked: int
    mismatches: int
    first_mismatch: Optional[tuple] = None  # (x, y, behavioral, netlist)

    @property
    def passed(self) -> bool:
        return self.mismatches == 0


def _compare(cfg: AdderConfig, nl: Netlist, x: np.ndarray, y: np.ndarray):
    want = approx_sum_raw(cfg, x, y)
    got = evaluate(nl, x, y)
    bad = np.nonzero(want != got)[0]
    if bad.size == 0:
        return 0, None
    # lexicographically smallest (x, y) among the mismatches
    i = bad[np.lexsort((y[bad], x[bad]))[0]]
    return int(bad.size), (int(x[i]), int(y[i]), int(want[i]), int(got[i]))


def _fold(best, cand):
    if cand is None:
        return best
    if best is None or cand[:2] < best[:2]:
        return cand
    return best


def check_equivalence(
    cfg: AdderConfig,
    mode: str = "exhaustive",
    samples: int = 1_000_000,
    rng: RngSpec = RngSpec(),
    netlist: Netlist | None = None,
) -> EquivalenceReport:
    """Compare the netlist (built from ``cfg`` unless given) with ``approx_sum``.

    ``exhaustive`` covers all ``2**(2n)`` pairs; ``sampled`` covers the four
    corner pairs plus ``samples`` seeded uniform pairs.
    """
    nl = netlist if netlist is not None else build_adder_netlist(cfg)
    n = cfg.n
    top = (1 << n) - 1
    mismatches = 0
    first = None
    checked = 0

    if mode == "exhaustive":
        if n > MAX_EXHAUSTIVE_BITS:
            raise ValueError(f"exhaustive equivalence needs n <= {MAX_EXHAUSTIVE_BITS}, got {n}")
        total = 1 << (2 * n)
        for lo in range(0, total, _BATCH):
            idx = np.arange(lo, min(lo + _BATCH, total), dtype=np.uint64)
            x, y = idx >> np.uint64(n), idx & np.uint64(top)
            bad, fm = _compare(cfg, nl, x, y)
            mismatches += bad
            first = _fold(first, fm)
            checked += idx.size
    elif mode == "sampled":
        corners = np.array([[0, 0], [top, top], [0, top], [top, 0]], dtype=np.uint64)
        bad, fm = _compare(cfg, nl, corners[:, 0], corners[:, 1])
        mismatches, first, checked = bad, fm, 4
        for lo in range(0, samples, _BATCH):
            x, y = uniform_pairs(rng, n, lo, min(_BATCH, samples - lo))
            bad, fm = _compare(cfg, nl, x, y)
            mismatches += bad
            first = _fold(first, fm)
            checked += x.size
    else:
        raise ValueError(f"unknown equivalence mode {mode!r}")
    return EquivalenceReport(cfg, mode, checked, mismatches, first)
