"""Binary ±1 sequences: autocorrelations, energy, merit factor, run-length
codec, the 8-element symmetry group, and skew-symmetric expansion.

A sequence is represented as a tuple of ints, each +1 or -1.  Partial
assignments elsewhere in the package use 0 for "unassigned"; everything in
this module operates on fully assigned sequences unless noted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence as SequenceLike

Spin = int  # +1 or -1
Sequence = tuple[int, ...]

_RUN_ALPHABET = "123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ"
_MAX_RUN = len(_RUN_ALPHABET)  # runs of length 1..35 are representable


class RunLengthError(ValueError):
    """Malformed run-length text or a run too long to encode."""


def as_sequence(values: Iterable[int]) -> Sequence:
    """Validate and freeze an iterable of ±1 values."""
    seq = tuple(int(v) for v in values)
    if not seq:
        raise ValueError("sequence must have length >= 1")
    for v in seq:
        if v != 1 and v != -1:
            raise ValueError(f"sequence elements must be +1 or -1, got {v}")
    return seq


def correlations(seq: SequenceLike[int]) -> tuple[int, ...]:
    """Aperiodic off-peak autocorrelations for lags 1 .. N-1.

    Entry k-1 holds sum(s[i] * s[i+k] for i), so a length-1 sequence
    yields an empty tuple.
    """
    n = len(seq)
    out = []
    for k in range(1, n):
        c = 0
        for i in range(n - k):
            c += seq[i] * seq[i + k]
        out.append(c)
    return tuple(out)


def energy(seq: SequenceLike[int]) -> int:
    """Sum of squared off-peak autocorrelations (the minimization target)."""
    return sum(c * c for c in correlations(seq))


def merit_factor(seq: SequenceLike[int]) -> float:
    """N^2 / (2 E).  Raises ValueError for zero-energy sequences."""
    e = energy(seq)
    if e == 0:
        raise ValueError("merit factor is undefined for zero-energy sequences")
    n = len(seq)
    return n * n / (2.0 * e)


# ---------------------------------------------------------------------------
# 8-element symmetry group
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryElement:
    """One of the 8 energy-preserving sequence transformations.

    Applied in the fixed order: reverse, negate odd positions (1-based
    positions 1, 3, 5, ... of the post-reversal sequence), negate all.
    """

    reverse: bool = False
    negate_odd: bool = False
    negate_all: bool = False

    @property
    def is_identity(self) -> bool:
        return not (self.reverse or self.negate_odd or self.negate_all)

    def output_sign(self, i: int) -> int:
        """Sign multiplier applied at output position i (0-based)."""
        s = -1 if self.negate_all else 1
        if self.negate_odd and i % 2 == 0:  # 0-based even = 1-based odd
            s = -s
        return s

    def source_index(self, i: int, n: int) -> int:
        """Input position feeding output position i (0-based)."""
        return n - 1 - i if self.reverse else i


SYMMETRY_GROUP: tuple[SymmetryElement, ...] = tuple(
    SymmetryElement(reverse=r, negate_odd=o, negate_all=a)
    for r in (False, True)
    for o in (False, True)
    for a in (False, True)
)


def apply_symmetry(seq: SequenceLike[int], elem: SymmetryElement) -> Sequence:
    """Apply a symmetry element; energy is preserved."""
    n = len(seq)
    return tuple(
        elem.output_sign(i) * seq[elem.source_index(i, n)] for i in range(n)
    )


# ---------------------------------------------------------------------------
# Run-length codec
# ---------------------------------------------------------------------------

def decode_rle(text: str, leading: Spin = 1) -> Sequence:
    """Expand run-length text into a ±1 sequence.

    Each character gives the length of the next constant run: digits 1-9,
    then A=10, B=11, ... Z=35.  Runs alternate sign starting from
    ``leading``.
    """
    if leading != 1 and leading != -1:
        raise ValueError("leading spin must be +1 or -1")
    if not text:
        raise RunLengthError("empty run-length text")
    out: list[int] = []
    sign = leading
    for ch in text:
        run = _RUN_ALPHABET.find(ch) + 1
        if run == 0:
            raise RunLengthError(f"invalid run-length character {ch!r}")
        out.extend([sign] * run)
        sign = -sign
    return tuple(out)


def encode_rle(seq: SequenceLike[int]) -> str:
    """Run-length text for a sequence, normalized to a +1 leading sign.

    Inverse of decode_rle up to the (irrelevant) leading sign:
    decode_rle(encode_rle(s), s[0]) == s.
    """
    as_sequence(seq)
    chars = []
    run = 1
    for prev, cur in zip(seq, seq[1:]):
        if cur == prev:
            run += 1
        else:
            chars.append(_run_char(run))
            run = 1
    chars.append(_run_char(run))
    return "".join(chars)


def _run_char(run: int) -> str:
    if run > _MAX_RUN:
        raise RunLengthError(
            f"run of length {run} exceeds the encodable maximum {_MAX_RUN}"
        )
    return _RUN_ALPHABET[run - 1]


# ---------------------------------------------------------------------------
# Skew-symmetry
# ---------------------------------------------------------------------------

def expand_skew(free: SequenceLike[int]) -> Sequence:
    """Expand the free half s[0..m-1] to the full odd-length sequence.

    With center c = m-1 (0-based), positions past the center are forced:
    s[c+i] = (-1)^i * s[c-i].  The result has length 2m-1.
    """
    free = as_sequence(free)
    m = len(free)
    c = m - 1
    out = list(free) + [0] * (m - 1)
    for i in range(1, m):
        out[c + i] = free[c - i] if i % 2 == 0 else -free[c - i]
    return tuple(out)


def is_skew(seq: SequenceLike[int]) -> bool:
    """True iff the sequence is odd-length and skew-symmetric."""
    n = len(seq)
    if n % 2 == 0:
        return False
    c = (n - 1) // 2
    for i in range(1, c + 1):
        expected = seq[c - i] if i % 2 == 0 else -seq[c - i]
        if seq[c + i] != expected:
            return False
    return True
