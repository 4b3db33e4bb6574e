"""Brute-force enumeration of optimal energies for small lengths.

Deliberately independent of the branch-and-bound machinery: every sequence
(or every skew-symmetric expansion) is evaluated by the naive per-lag
product sums, vectorized over enumeration chunks.  Negating a whole
sequence preserves energy and skew-symmetry, so the first element is fixed
to +1 and counts are doubled.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .sequences import Sequence

GENERAL_LIMIT = 28
SKEW_LIMIT = 45
_CHUNK = 1 << 20


class OracleResult(NamedTuple):
    energy: int
    sequence: Sequence
    count: int  # number of optimal sequences in the full class


def _chunk_energies(spins: np.ndarray) -> np.ndarray:
    n = spins.shape[1]
    total = np.zeros(spins.shape[0], dtype=np.int64)
    for k in range(1, n):
        c = (spins[:, : n - k] * spins[:, k:]).sum(axis=1, dtype=np.int64)
        total += c * c
    return total


def _free_bits(lo: int, hi: int, width: int) -> np.ndarray:
    """Rows of ±1 for enumeration indices lo..hi-1 over `width` free bits."""
    idx = np.arange(lo, hi, dtype=np.uint64)
    if width == 0:
        return np.ones((hi - lo, 0), dtype=np.int8)
    shifts = np.arange(width, dtype=np.uint64)
    bits = (idx[:, None] >> shifts[None, :]) & 1
    return (1 - 2 * bits).astype(np.int8)


def enumerate_optimal(n: int, mode: str = "general") -> OracleResult:
    """Exact minimum energy by exhaustive evaluation.

    Refuses lengths beyond the enumeration budget (2^n sequences in
    general mode, 2^((n+1)/2) skew expansions) instead of running
    unbounded.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "general":
        if n > GENERAL_LIMIT:
            raise ValueError(f"general oracle is limited to n <= {GENERAL_LIMIT}")
        free = n - 1
    elif mode == "skew":
        if n % 2 == 0:
            raise ValueError("skew mode requires odd n")
        if n > SKEW_LIMIT:
            raise ValueError(f"skew oracle is limited to n <= {SKEW_LIMIT}")
        free = (n + 1) // 2 - 1
    else:
        raise ValueError(f"unknown mode {mode!r}")

    best_energy = None
    best_row = None
    count = 0
    total = 1 << free
    for lo in range(0, total, _CHUNK):
        hi = min(lo + _CHUNK, total)
        tail = _free_bits(lo, hi, free)
        lead = np.ones((hi - lo, 1), dtype=np.int8)
        half = np.hstack([lead, tail])
        if mode == "skew":
            m = half.shape[1]
            spins = np.empty((hi - lo, n), dtype=np.int8)
            spins[:, :m] = half
            c = m - 1
            for i in range(1, m):
                sign = 1 if i % 2 == 0 else -1
                spins[:, c + i] = sign * half[:, c - i]
        else:
            spins = half
        energies = _chunk_energies(spins)
        lo_val = int(energies.min())
        if best_energy is None or lo_val < best_energy:
            best_energy = lo_val
            best_row = spins[int(np.argmin(energies))].copy()
            count = 0
        if lo_val <= best_energy:
            count += int((energies == best_energy).sum())
    assert best_energy is not None and best_row is not None
    # The s[0] = -1 half mirrors this one exactly.
    return OracleResult(best_energy, tuple(int(v) for v in best_row), 2 * count)
